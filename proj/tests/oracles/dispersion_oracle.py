"""Refractive indices straight from the published Sellmeier forms."""
import math

# Eimerl 1987, lambda in um
BBO_O = (2.7405, 0.0184, 0.0179, 0.0155)
BBO_E = (2.3730, 0.0128, 0.0156, 0.0044)
# Jundt 1997, congruent LiNbO3 extraordinary
A = (5.35583, 0.100473, 0.20692, 100.0, 11.34927, 1.5334e-2)
B = (4.629e-7, 3.862e-8, -0.89e-8, 2.657e-5)


def bbo(coef, lam_nm):
    l2 = (lam_nm / 1000.0) ** 2
    a, b, c, d = coef
    return math.sqrt(a + b / (l2 - c) - d * l2)


def ln_e(lam_nm, t_c):
    l2 = (lam_nm / 1000.0) ** 2
    f = (t_c - 24.5) * (t_c + 570.82)
    n2 = (A[0] + B[0] * f + (A[1] + B[1] * f) / (l2 - (A[2] + B[2] * f) ** 2)
          + (A[3] + B[3] * f) / (l2 - A[4] ** 2) - A[5] * l2)
    return math.sqrt(n2)


def sfg_nm(l1, l2):
    return 1.0 / (1.0 / l1 + 1.0 / l2)


def values():
    v = {}
    for lam in (313.171, 626.342, 700.0, 1064.0):
        tag = str(lam).replace(".", "p")
        v[f"bbo_no_{tag}"] = bbo(BBO_O, lam)
        v[f"bbo_ne_{tag}"] = bbo(BBO_E, lam)
    l3 = sfg_nm(1051.140, 1549.850)
    for t in (20.0, 196.5):
        tt = str(t).replace(".", "p")
        v[f"ln_ne_1051_{tt}"] = ln_e(1051.140, t)
        v[f"ln_ne_1550_{tt}"] = ln_e(1549.850, t)
        v[f"ln_ne_626_{tt}"] = ln_e(l3, t)
    # bulk mismatch k3 - k1 - k2 at 196.5 C, rad/m
    k = lambda lam, t: 2 * math.pi * ln_e(lam, t) / (lam * 1e-9)
    v["ln_bulk_dk_196p5"] = k(l3, 196.5) - k(1051.140, 196.5) - k(1549.850, 196.5)
    return v


if __name__ == "__main__":
    for k_, x in values().items():
        print(f"{k_} = {x:.15g}")
