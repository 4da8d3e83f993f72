"""Extrema of the Hansch-Couillaud dispersion signal by a fine grid scan."""
import math

import numpy as np


def eps(d, r):
    return r * np.sin(d) / ((1 - r) ** 2 + 4 * r * np.sin(d / 2) ** 2)


def values(n=4_000_001):
    v = {}
    for r in (0.9, 0.98, 0.995):
        tag = str(r).replace(".", "p")
        # the extremum sits well inside (0, 0.5) rad for these r
        d = np.linspace(1e-9, 0.5, n)
        e = eps(d, r)
        i = int(np.argmax(e))
        # parabolic refinement through three grid points
        y0, y1, y2 = e[i - 1], e[i], e[i + 1]
        h = d[1] - d[0]
        v[f"hc_peak_{tag}"] = d[i] + 0.5 * h * (y0 - y2) / (y0 - 2 * y1 + y2)
        v[f"hc_peakval_{tag}"] = y1
    return v


if __name__ == "__main__":
    for k_, x in values().items():
        print(f"{k_} = {x:.15g}")
