#!/usr/bin/env python3
"""Regenerates the frozen reference values used by the unit tests.

Everything here is evaluated with mpmath at 40 significant digits, directly
from the closed-form channel expressions, so it shares no code path with the
C++ library. Run from the repository root:

    python3 tests/oracles/gen_golden.py
"""
import mpmath as mp

mp.mp.dps = 40

LAMBDA = mp.mpf("530e-9")
EXTINCTION = mp.mpf("0.151")
THETA = mp.mpf(6) * mp.pi / 180
ALPHA = mp.mpf("2.56e-4")
NU = mp.mpf("1.0576e-6")
OMEGA = mp.mpf("-2.2")
CHI = mp.mpf("1e-5")
EPS = mp.mpf("1e-5")


def path_loss(l, d, T):
    return mp.exp(-EXTINCTION * l * (d / (THETA * l)) ** T)


def microscale(nu, eps):
    return (nu**3 / eps) ** mp.mpf("0.25")


def wave_structure(rho, l, d_r, chi=CHI):
    k = 2 * mp.pi / LAMBDA
    eta_k = microscale(NU, EPS)
    return (mp.mpf("1.44") * mp.pi * k**2 * l * (ALPHA**2 * chi / OMEGA**2)
            * EPS ** (-mp.mpf(1) / 3)
            * (mp.mpf("1.175") * eta_k ** (mp.mpf(2) / 3) * rho
               + mp.mpf("0.419") * rho ** (mp.mpf(5) / 3))
            * (OMEGA**2 + d_r - OMEGA * (d_r + 1)))


def fresnel(d, l):
    return (mp.pi * d**2 / (4 * LAMBDA * l)) ** 2


def power_transfer_from_F(F, w=lambda x: 0):
    s = mp.sqrt(F)
    f = lambda x: mp.exp(-w(x) / 2) * (mp.acos(x) - x * mp.sqrt(1 - x * x)) * mp.besselj(1, 4 * x * s)
    # split at J1 zeros spacing to keep mpmath's quadrature on smooth pieces
    n = max(8, int(4 * s / mp.pi) * 2)
    pts = [mp.mpf(i) / n for i in range(n + 1)]
    return 8 * s / mp.pi * mp.quad(f, pts)


def power_transfer(l, d, d_r):
    return power_transfer_from_F(fresnel(d, l), lambda x: wave_structure(d * x, l, d_r))


def main():
    print("path_loss(100, 0.05, T=0.13) =", mp.nstr(path_loss(100, mp.mpf("0.05"), mp.mpf("0.13")), 17))
    print("microscale =", mp.nstr(microscale(NU, EPS), 17))
    print("wave_structure(0.05, 50, d_r=1) =", mp.nstr(wave_structure(mp.mpf("0.05"), 50, 1), 17))
    print("fresnel(0.05, 50) =", mp.nstr(fresnel(mp.mpf("0.05"), 50), 17))
    print("j1 first zero =", mp.nstr(mp.besseljzero(1, 1), 20))
    print("exp(-8) =", mp.nstr(mp.exp(-8), 17))
    print("mu0(F=5e3) =", mp.nstr(power_transfer_from_F(mp.mpf(5000)), 17))
    print("mu0(F=1e-6) =", mp.nstr(power_transfer_from_F(mp.mpf("1e-6")), 17))
    print("mu0(F=1) =", mp.nstr(power_transfer_from_F(mp.mpf(1)), 17))
    for d_r in (0, 1):
        print(f"mu(l=50, d=0.05, d_r={d_r}) =", mp.nstr(power_transfer(50, mp.mpf("0.05"), d_r), 17))

    with open("tests/data/mu_vs_distance_golden.csv", "w") as out:
        out.write("l_m,mu_dr0,mu_dr1\n")
        for l in range(10, 101, 10):
            m0 = power_transfer(l, mp.mpf("0.05"), 0)
            m1 = power_transfer(l, mp.mpf("0.05"), 1)
            out.write(f"{l},{mp.nstr(m0, 15)},{mp.nstr(m1, 15)}\n")


if __name__ == "__main__":
    main()
