"""Bow-tie eigenmode with plain numpy ray matrices (reduced coordinates)."""
import math

import numpy as np

from dispersion_oracle import BBO_O, bbo

LAM = 626.342e-9


def free(d):
    return np.array([[1.0, d], [0.0, 1.0]])


def lens(f):
    return np.array([[1.0, 0.0], [-1.0 / f, 1.0]])


def half_trip(d_mc, l_long, alpha_deg, plane, length=0.010, r=0.050):
    n = bbo(BBO_O, 626.342)
    half_alpha = math.radians(alpha_deg) / 2
    if plane == "t":
        f, crys = (r / 2) * math.cos(half_alpha), (length / 2) / n**3
    else:
        f, crys = (r / 2) / math.cos(half_alpha), (length / 2) / n
    # crystal center -> long-path midpoint, rightmost factor first
    return free(l_long / 2) @ lens(f) @ free(d_mc) @ free(crys), n


def eigen_q(m):
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    # C q^2 + (D - A) q - B = 0, Im q > 0
    roots = np.roots([c, d - a, -b])
    return [q for q in roots if q.imag > 0][0]


def mode(d_mc, l_long, alpha_deg):
    out = {}
    for plane in ("t", "s"):
        h, n = half_trip(d_mc, l_long, alpha_deg, plane)
        # symmetric layout: full trip = reversed half then half
        rev = np.array([[h[1, 1], h[0, 1]], [h[1, 0], h[0, 0]]])
        full = rev @ h
        q = eigen_q(full)
        w = math.sqrt(LAM * q.imag / math.pi)  # reduced q at crystal center is a waist
        out[f"w_{plane}"] = n * w if plane == "t" else w
        a, b, c, d = h.ravel()
        q2 = (a * q + b) / (c * q + d)
        out[f"w2_{plane}"] = math.sqrt(-LAM / (math.pi * (1 / q2).imag))
        out[f"m_{plane}"] = abs(np.trace(full)) / 2
    return out


def values():
    v = {}
    for tag, args in (("A", (0.0242, 0.5276, 30.0)), ("B", (0.0242, 0.290, 28.6))):
        for k, x in mode(*args).items():
            v[f"cav{tag}_{k}"] = x
    return v


if __name__ == "__main__":
    for k_, x in values().items():
        print(f"{k_} = {x:.15g}")
