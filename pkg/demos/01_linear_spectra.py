"""Linear response of a vibrational polariton cavity.

A single cavity mode tuned to a molecular vibration hybridizes into two
polariton branches.  This demo computes the steady-state transmission,
reflection, and absorption of the unpumped system, locates the two
polariton peaks, and checks that the three channels account for all of
the incident power.

Run:  python3 demos/01_linear_spectra.py
Artifacts land in demos/output/.
"""

from dataclasses import replace
from pathlib import Path

import numpy as np

from polarisim import (SpectralGrid, absorption_spectrum, find_peaks,
                       paper_defaults, rabi_splitting, reflection_spectrum,
                       transmission_spectrum, write_spectrum_csv)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # plots are a bonus; CSVs are the record
    plt = None

OUTDIR = Path(__file__).parent / "output"
OUTDIR.mkdir(exist_ok=True)


def main():
    p = replace(paper_defaults(), f_pu=0.0)
    grid = SpectralGrid(1930.0, 2040.0, 0.05)
    w = grid.frequencies()

    t = transmission_spectrum(p, grid)
    r = reflection_spectrum(p, grid)
    a = absorption_spectrum(p, grid)

    for name, s in (("transmission", t), ("reflection", r),
                    ("absorption", a)):
        write_spectrum_csv(s, OUTDIR / ("linear_%s.csv" % name))

    peaks = find_peaks(t)
    print("polariton transmission peaks:")
    for pk in peaks.peaks:
        print("  %9.3f cm^-1   height %.3f" % (pk.frequency, pk.height))
    gap = peaks.peaks[-1].frequency - peaks.peaks[0].frequency
    print("peak separation: %.3f cm^-1" % gap)
    print("ideal vacuum splitting (no loss, no detuning): %.1f cm^-1"
          % rabi_splitting(replace(p, kappa=0.0, gamma_m=0.0, delta=0.0,
                                   g3_ratio=0.0)))
    budget = np.max(np.abs(t.values + r.values + a.values - 1.0))
    print("worst |T + R + A - 1| on the grid: %.2e" % budget)

    if plt is not None:
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot(w, t.values, label="transmission")
        ax.plot(w, r.values, label="reflection")
        ax.plot(w, a.values, label="absorption")
        for pk in peaks.peaks:
            ax.axvline(pk.frequency, color="gray", lw=0.5, ls=":")
        ax.set_xlabel("frequency (cm$^{-1}$)")
        ax.set_ylabel("fraction of incident power")
        ax.set_title("Linear polariton response")
        ax.legend()
        fig.tight_layout()
        fig.savefig(OUTDIR / "linear_spectra.png", dpi=150)
        print("wrote", OUTDIR / "linear_spectra.png")


if __name__ == "__main__":
    main()
