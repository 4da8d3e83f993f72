"""Power coupling between Gaussian fields by direct 1-D field integrals on a grid."""
import math

import numpy as np

LAM = 626.342e-9


def field(x, q):
    # reduced q, vacuum wavelength
    k = 2 * math.pi / LAM
    return np.exp(-1j * k * x * x / (2 * q))


def overlap_1d(q1, q2, n=400001):
    w = max(math.sqrt(LAM / (math.pi * -(1 / q).imag)) for q in (q1, q2))
    x = np.linspace(-8 * w, 8 * w, n)
    e1, e2 = field(x, q1), field(x, q2)
    num = abs(np.trapezoid(e1 * np.conj(e2), x)) ** 2
    return num / (np.trapezoid(abs(e1) ** 2, x) * np.trapezoid(abs(e2) ** 2, x))


PAIRS = {
    "ov_a": (complex(0.0, 0.05), complex(0.0, 0.08)),
    "ov_b": (complex(0.02, 0.05), complex(-0.01, 0.03)),
    "ov_c": (complex(0.3, 0.12), complex(0.25, 0.10)),
    "ov_d": (complex(-0.1, 0.002), complex(-0.1, 0.004)),
}


def values():
    return {k: overlap_1d(*p) for k, p in PAIRS.items()}


if __name__ == "__main__":
    for k_, x in values().items():
        print(f"{k_} = {x:.15g}")
