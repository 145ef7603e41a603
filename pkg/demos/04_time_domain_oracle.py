"""Cross-checking the closed-form spectra against a time-domain solver.

The frequency-domain transmission formula can be validated without
trusting any of its algebra: drive the coupled equations of motion with
a short probe pulse, integrate them numerically, Fourier-transform the
transmitted field, and divide by the input spectrum.  The demo runs that
oracle for the unpumped and pumped systems, reports the worst relative
mismatch, and plots the two routes on top of each other.

Run:  python3 demos/04_time_domain_oracle.py  (about 5 s)
"""

from dataclasses import replace
from pathlib import Path

import numpy as np

from polarisim import (Pulse, SpectralGrid, paper_defaults, simulate,
                       transfer_from_trajectory, transmission_transfer,
                       write_trajectory_csv)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

OUTDIR = Path(__file__).parent / "output"
OUTDIR.mkdir(exist_ok=True)


def main():
    p = paper_defaults()
    probe = Pulse(center=p.omega_0, sigma_t=0.02, t0=0.2)
    grid = SpectralGrid(1930.0, 2040.0, 0.2)
    w = grid.frequencies()

    results = {}
    for label, q in (("unpumped", replace(p, f_pu=0.0)), ("pumped", p)):
        traj = simulate(q, probe)
        t_hat = transfer_from_trajectory(traj, grid)
        t_closed = transmission_transfer(q, w)
        num = np.abs(t_hat.values) ** 2
        ref = np.abs(t_closed) ** 2
        rel = np.max(np.abs(num - ref)) / np.max(ref)
        results[label] = (num, ref)
        print("%-9s max relative transmission error: %.2e" % (label, rel))
        if label == "pumped":
            write_trajectory_csv(traj, OUTDIR / "trajectory_pumped.csv")
            print("transient fields written to",
                  OUTDIR / "trajectory_pumped.csv")

    if plt is not None:
        fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
        for ax, label in zip(axes, ("unpumped", "pumped")):
            num, ref = results[label]
            ax.plot(w, ref, label="closed form")
            ax.plot(w, num, ".", ms=2.5, label="time domain")
            ax.set_title(label)
            ax.set_xlabel("frequency (cm$^{-1}$)")
        axes[0].set_ylabel("transmission")
        axes[0].legend()
        fig.tight_layout()
        fig.savefig(OUTDIR / "oracle_overlay.png", dpi=150)
        print("wrote", OUTDIR / "oracle_overlay.png")


if __name__ == "__main__":
    main()
