"""Phase matching by dense grid scans, no root finder."""
import math

import numpy as np

from dispersion_oracle import BBO_E, BBO_O, bbo, ln_e, sfg_nm


def theta_pm(fund_nm, n=2_000_001):
    no1 = bbo(BBO_O, fund_nm)
    no2 = bbo(BBO_O, fund_nm / 2)
    ne2 = bbo(BBO_E, fund_nm / 2)
    th = np.linspace(0.0, math.pi / 2, n)
    n_th = 1.0 / np.sqrt(np.cos(th) ** 2 / no2**2 + np.sin(th) ** 2 / ne2**2)
    g = n_th - no1
    i = np.nonzero(np.sign(g[:-1]) != np.sign(g[1:]))[0][0]
    # linear interpolation inside one grid cell
    return th[i] - g[i] * (th[i + 1] - th[i]) / (g[i + 1] - g[i])


def walkoff(theta, sh_nm):
    no = bbo(BBO_O, sh_nm)
    ne = bbo(BBO_E, sh_nm)
    n = 1.0 / math.sqrt(math.cos(theta) ** 2 / no**2 + math.sin(theta) ** 2 / ne**2)
    return math.atan(0.5 * n * n * abs(1 / ne**2 - 1 / no**2) * math.sin(2 * theta))


def qpm_dk(t, period_um):
    l1, l2 = 1051.140, 1549.850
    l3 = sfg_nm(l1, l2)
    k = lambda lam: 2 * math.pi * ln_e(lam, t) / (lam * 1e-9)
    return k(l3) - k(l1) - k(l2) - 2 * math.pi / (period_um * 1e-6)


def qpm_root(period_um, step=1e-3):
    ts = np.arange(20.0, 250.0 + step, step)
    g = np.array([qpm_dk(t, period_um) for t in ts])
    i = np.nonzero(np.sign(g[:-1]) != np.sign(g[1:]))[0][0]
    return ts[i] - g[i] * (ts[i + 1] - ts[i]) / (g[i + 1] - g[i])


def qpm_fwhm(period_um, length_m, t0, step=1e-4):
    ts = np.arange(t0 - 3.0, t0 + 3.0, step)
    e = np.array([np.sinc(qpm_dk(t, period_um) * length_m / 2 / math.pi) ** 2 for t in ts])
    above = ts[e >= 0.5]
    return above[-1] - above[0] + step


def values():
    v = {}
    th = theta_pm(626.342)
    v["theta_pm_626"] = th
    v["theta_pm_700"] = theta_pm(700.0)
    rho = walkoff(th, 313.171)
    v["rho_626"] = rho
    k1 = 2 * math.pi * bbo(BBO_O, 626.342) / 626.342e-9
    v["B_626_10mm"] = 0.5 * rho * math.sqrt(k1 * 0.010)
    v["rho_45deg"] = walkoff(math.radians(45), 313.171)
    v["rho_10deg"] = walkoff(math.radians(10), 313.171)
    t1 = qpm_root(10.90)
    v["qpm_t_10p90"] = t1
    v["qpm_t_10p95"] = qpm_root(10.95)
    v["qpm_fwhm_10p90_40mm"] = qpm_fwhm(10.90, 0.040, t1)
    return v


if __name__ == "__main__":
    for k_, x in values().items():
        print(f"{k_} = {x:.15g}")
