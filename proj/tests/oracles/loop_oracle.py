"""Discrete PI lock loop: gains from the crossover rule, then |1/(1+L)| two ways.

Plant: delta = d - G y, y[n] = u[n-1], eps ~ K delta, u = kp e + ki sum(e).
"""
import cmath
import math

import numpy as np

T1, LP = 0.016, 0.009556
FSR, PZT = 850e6, 1e7
FS, FC = 1e6, 50e3

r = math.sqrt((1 - T1) * (1 - LP))
K = (1 + r) / (1 - r)
G = 2 * math.pi * PZT / FSR


def loop(kp, ki, f):
    z = cmath.exp(2j * math.pi * f / FS)
    return K * G * (kp + ki * z / (z - 1)) / z


def gains():
    wc = 2 * math.pi * FC
    kp1, ki1 = 1 / (3 * wc), 1 / FS
    g = abs(loop(kp1, ki1, FC))
    return kp1 / g, ki1 / g


def simulate(kp, ki, f, amp=1.0, n=200000):
    # linear difference equations, one-sample actuator delay
    t = np.arange(n) / FS
    d = amp * np.sin(2 * math.pi * f * t)
    delta = np.zeros(n)
    u_prev, acc = 0.0, 0.0
    for i in range(n):
        delta[i] = d[i] - G * u_prev
        e = K * delta[i]
        acc += e
        u_prev = kp * e + ki * acc
    half = n // 2
    ph = 2 * math.pi * f * t[half:]
    c = np.sum(delta[half:] * np.cos(ph))
    s = np.sum(delta[half:] * np.sin(ph))
    return 2 * math.hypot(c, s) / (n - half) / amp


def values():
    kp, ki = gains()
    v = {"loop_kp": kp, "loop_ki": ki}
    for f in (1e3, 5e3, 10e3, 25e3):
        tag = f"{int(f / 1e3)}k"
        v[f"loop_S_{tag}"] = abs(1 / (1 + loop(kp, ki, f)))
    v["loop_S_5k_sim"] = simulate(kp, ki, 5e3)
    return v


if __name__ == "__main__":
    for k_, x in values().items():
        print(f"{k_} = {x:.15g}")
