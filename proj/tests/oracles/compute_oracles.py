"""Independent reference values for the C++ unit tests.

Evaluated with scipy (its bundled CODATA release, which may differ from the
library's CODATA 2018 values at the 1e-9 level) and direct quadrature; the
numbers printed here are frozen into the test sources. Re-run after any
change to the catalog host indices.
"""
import numpy as np
from scipy import constants as k, special, optimize

HBAR, E, ME, C, EPS0 = k.hbar, k.e, k.m_e, k.c, k.epsilon_0

CATALOG = {
    # id: (lambda_nm, f, T1_us, T2_us, n)
    "Pr3+:Y2SiO5 3H4-1D2": (605.977, 3e-7, 164, 152, 1.80),
    "Pr3+:YAG 3H4-1D2": (609.587, 1.5e-6, 230, 20, 1.83),
    "Nd3+:YVO4 4I9/2-4F3/2": (879.705, 8e-6, 100, 27, 2.00),
    "Er3+:Y2SiO5 4I15/2-4I13/2": (1536.14, 2e-7, 11400, 4080, 1.80),
    "Er3+:LiNbO3 4I15/2-4I13/2": (1531.52, 8e-7, 2000, 80, 2.20),
    "Tm3+:LiNbO3 3H6-3H4": (794.264, 5.044e-6, 170, 32, 2.21),
    "Tm3+:YAG 3H6-3H4": (793.156, 6.3e-8, 800, 130, 1.82),
    "Eu3+:Y2SiO5 7F0-5D0": (579.879, 1.3e-8, 1900, 2600, 1.80),
}


def chi(n):
    return ((n * n + 2) / 3) ** 2


def mu(lam, f, n):
    w = 2 * np.pi * C / lam
    return np.sqrt(3 * HBAR * E**2 * n * f / (2 * ME * w * chi(n)))


def tspon(lam, f, n):
    return 3 * EPS0 * HBAR * lam**3 / (8 * np.pi**2 * n * chi(n) * mu(lam, f, n) ** 2)


def wgm_model(R, n, lam):
    ell = round(2 * np.pi * R * n / lam)
    return 3.4 * np.pi**1.5 * (lam / (2 * np.pi * n)) ** 3 * ell ** (11 / 6), ell


def wgm_quadrature(R, n, lam):
    """Closed-sphere fundamental mode: j_l(k r) Y_ll, j_l zero at the rim."""
    ell = round(2 * np.pi * R * n / lam)
    nu = ell + 0.5
    x0 = nu + 1.8557571 * nu ** (1 / 3)
    z = optimize.brentq(lambda x: special.jv(nu, x), x0 - 0.2 * nu ** (1 / 3), x0 + 0.5 * nu ** (1 / 3))
    kk = z / R
    xs = np.linspace(nu - 30 * nu ** (1 / 3), z, 400001)
    jl2 = special.jv(nu, xs) ** 2 * np.pi / (2 * xs)
    radial = np.trapezoid(jl2 * (xs / kk) ** 2, xs / kk)
    lg = np.log(2) + 2 * ell * np.log(2) + 2 * special.gammaln(ell + 1) - special.gammaln(2 * ell + 2)
    angular = 2 * np.pi * np.exp(lg)
    return radial * angular / jl2.max()


if __name__ == "__main__":
    print("kappa(1536.14nm,1e8) =", np.pi * C / (1536.14e-9 * 1e8))
    print("kappa(605.977nm,1e10) =", np.pi * C / (605.977e-9 * 1e10))
    print("beta(V=100um3,n=1.8,1um) =", 8 * np.pi**2 * 1.8**3 * 100e-18 / (3 * 1e-18))
    lam, f, *_ = CATALOG["Pr3+:Y2SiO5 3H4-1D2"]
    lam *= 1e-9
    w = 2 * np.pi * C / lam
    m = mu(lam, f, 1.8)
    print("g(Pr:YSO, V=1000um3) =", m / 1.8 * np.sqrt(w / (2 * HBAR * EPS0 * 1000e-18)))
    for R in (1e-3, 50e-6):
        print("WGM R=%g model=%r quadrature=%r" % (R, wgm_model(R, 1.8, 606e-9), wgm_quadrature(R, 1.8, 606e-9)))
    print("Q_required(N0pop=1) at R=1mm:")
    for cid, (lnm, f, t1, t2, n) in CATALOG.items():
        lam = lnm * 1e-9
        V, ell = wgm_model(1e-3, n, lam)
        beta = 8 * np.pi**2 * n**3 * V / (3 * lam**3)
        ts = tspon(lam, f, n)
        print("  %-28s mu=%.4e tspon=%.4e Q_pop=%.6e Q_ph=%.6e" % (
            cid, mu(lam, f, n), ts, beta * ts / (t1 * 1e-6) * chi(n), beta * 2 * ts / (t2 * 1e-6) * chi(n)))
