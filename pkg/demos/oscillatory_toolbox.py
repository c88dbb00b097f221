"""Tour of the oscillatory-sum toolbox.

Four small experiments:

  1. a cubic exponential sum against its Dirichlet/major-arc bound,
  2. best rational approximations from the continued-fraction routine,
  3. the stationary-phase integral that controls a single kernel fiber,
     with its 2^((1-beta)k/2) / sqrt(|m t|) envelope, and
  4. a van der Corput second-derivative test on a quadratic phase.
"""
import math

import numpy as np

from dgzk.estimates import (
    WeylInstance,
    dirichlet_approx,
    oscillatory_integral,
    vandercorput_check,
    weyl_bound,
    weyl_sum,
)


def weyl_demo():
    print("\n1. cubic exponential sum  S = sum_m e^{2 pi i (a3 m^3 + a1 m)}")
    rng = np.random.default_rng(5)
    n = 512
    print(f"   {'a3':>10s} {'q':>6s} {'|S|':>9s} {'bound':>9s} {'ratio':>7s}")
    for _ in range(6):
        a3 = float(rng.uniform(0, 1))
        inst = WeylInstance(n_terms=n, coeffs=(0.0, float(rng.uniform(0, 1)), 0.0, a3))
        s = abs(weyl_sum(inst))
        approx = dirichlet_approx(a3, lam=n)
        b = weyl_bound(n, approx.q, degree=3, delta=0.01)
        print(f"   {a3:10.6f} {approx.q:6d} {s:9.2f} {b:9.2f} {s / b:7.3f}")
    print("   the bound responds to the arithmetic of a3: small q (near a")
    print("   simple rational) weakens it, generic q strengthens it.")


def dirichlet_demo():
    print("\n2. best rational approximations with denominator <= lam")
    for r, lam in ((math.pi, 100), (math.sqrt(2), 50), (0.5, 10), (0.3333, 200)):
        a = dirichlet_approx(r, lam)
        print(f"   {r:10.6f} ~ {a.a}/{a.q}   error {abs(r - a.a / a.q):.2e}"
              f"   guarantee 1/(lam q) = {1.0 / (lam * a.q):.2e}")


def oscillatory_demo():
    print("\n3. kernel-fiber integral across shells, beta = 1/2")
    m, t, yp = 40, 2.0 ** -9, 1.3
    print(f"   m = {m}, t = 2^-9, y' = {yp}")
    print(f"   {'k':>3s} {'|I|':>10s} {'envelope':>10s} {'ratio':>7s}")
    for k in range(4, 9):
        res = oscillatory_integral(yp, t, m, beta=0.5, k=k, sign=1)
        print(f"   {k:3d} {abs(res.value):10.4f} {res.bound:10.4f}"
              f" {abs(res.value) / res.bound:7.4f}")
    print("   the envelope is 2^((1-beta)k/2)/sqrt(|m t|); once stationary points")
    print("   of the phase enter the shell (k >= 6 here) the integral saturates a")
    print("   uniform multiple of it, and the certified constant is 10.")


def vdc_demo():
    print("\n4. van der Corput: |int e^{i lam x^2 / 2} dx| <= C lam^(-1/2)")
    print(f"   {'lam':>7s} {'lhs':>10s} {'lhs * sqrt(lam)':>16s}")
    for lam in (16.0, 64.0, 256.0, 1024.0):
        rep = vandercorput_check(
            lambda x, l=lam: 0.5 * l * x ** 2,
            lambda x, l=lam: np.full_like(np.asarray(x, float), l),
            (-1.0, 1.0), lam, 2)
        print(f"   {lam:7.0f} {rep.lhs:10.6f} {rep.lhs * math.sqrt(lam):16.4f}")
    print("   the scaled column is flat: the integral really decays at the")
    print("   -1/2 power predicted by the second-derivative test.")


def main():
    print(__doc__)
    weyl_demo()
    dirichlet_demo()
    oscillatory_demo()
    vdc_demo()


if __name__ == "__main__":
    main()
