"""Independent high-resolution spectral arc length oracle.

Evaluates the discrete-time Fourier transform of a sampled speed profile
exactly at arbitrary frequencies (no FFT grid), differentiates it
analytically, and integrates the arc length with adaptive quadrature.
Run once; the printed values are frozen into the C++ tests.
"""
import numpy as np
from scipy.integrate import quad

FS = 90.0
OMEGA_C = 40.0


def min_jerk_speed(duration=1.0, fs=FS):
    t = np.arange(0, int(round(duration * fs)) + 1) / fs
    tau = t / duration
    return 30 * tau**2 - 60 * tau**3 + 30 * tau**4


def sal_oracle(v, fs=FS, omega_c=OMEGA_C):
    n = np.arange(len(v))
    ts = 1.0 / fs
    v0 = abs(v.sum())

    def dvhat(w):
        e = np.exp(-1j * w * n * ts)
        x = np.sum(v * e)
        dx = np.sum(-1j * n * ts * v * e)
        return (np.real(np.conj(x) * dx) / abs(x)) / v0

    val, err = quad(lambda w: np.sqrt((1 / omega_c) ** 2 + dvhat(w) ** 2),
                    0, omega_c, limit=500, epsabs=1e-12, epsrel=1e-12)
    return -val, err


if __name__ == "__main__":
    v = min_jerk_speed()
    s, e = sal_oracle(v)
    print(f"min_jerk_1s_90hz {s:.12f} (quad err {e:.1e})")
    t = np.arange(len(v)) / FS
    rip = v + 0.2 * v.max() * np.sin(2 * np.pi * 10 * t)
    s2, e2 = sal_oracle(rip)
    print(f"min_jerk_rippled {s2:.12f} (quad err {e2:.1e})")
