"""Oscillatory integrals against the shell cutoff, and the stationary-phase
style derivative test.

oscillatory_integral computes

    I = integral of psi1(eta/2^k)^2 * exp(i*(y' eta + sigma t m |eta|^{1+beta}))

over the cutoff support |eta| in [2^{k-2}, 2^{k+2}], by adaptive composite
Gauss-Legendre quadrature, and pairs it with the reference decay value
2^{(1-beta)k/2} / sqrt(|m t|).

vandercorput_check compares |integral of amplitude * e^{i phase}| against
lambda^{-1/p} * (sup|amplitude| + L1 norm of amplitude').  Two sign
conventions for the lambda exponent circulate in statements of this lemma;
the decaying one (-1/p) is the classical bound and is what the check uses,
but the growing candidate (+1/p) is reported alongside for comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ..errors import CertificateViolationError
from .bump import psi1

__all__ = [
    "OscillatoryIntegralResult",
    "VanDerCorputReport",
    "complex_oscillatory_quad",
    "oscillatory_integral",
    "vandercorput_check",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)

MAX_QUADRATURE_NODES = 2 ** 21


def complex_oscillatory_quad(f: Callable[[np.ndarray], np.ndarray],
                             a: float, b: float, n_nodes: int) -> complex:
    """Composite 32-point Gauss-Legendre quadrature of a complex integrand.

    n_nodes is the total node budget; it is rounded down to a whole number
    of panels (at least one).
    """
    if b <= a:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    panels = max(1, int(n_nodes) // 32)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=complex).reshape(pts.shape)
    return complex(np.sum(half[:, None] * (_GL_WEIGHTS[None, :] * vals)))


@dataclass(frozen=True)
class OscillatoryIntegralResult:
    value: complex
    bound: Optional[float]   # None when m*t == 0 (no decay scale to compare)
    converged: bool
    nodes_used: int


def oscillatory_integral(y_prime: float, t: float, m: int, beta: float, k: int,
                         sign: int = 1, quadrature_n: int = 2048,
                         tol: float = 1e-8) -> OscillatoryIntegralResult:
    """Shell-localized oscillatory integral with its reference decay value.

    Node counts double until two successive evaluations agree to tol
    (relative, floored at 1), or the budget MAX_QUADRATURE_NODES is hit.
    """
    if k < 1:
        raise ValueError(f"shell index k must be >= 1, got {k}")
    if quadrature_n < 1024:
        raise ValueError(f"quadrature_n must be >= 1024, got {quadrature_n}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")

    scale = 2.0 ** k
    coef = sign * t * m

    def integrand(eta):
        w = psi1(eta / scale)
        return w * w * np.exp(1j * (y_prime * eta + coef * np.abs(eta) ** (1.0 + beta)))

    lo, hi = scale / 4.0, scale * 4.0
    n = int(quadrature_n)
    prev = None
    value = 0.0 + 0.0j
    converged = False
    while n <= MAX_QUADRATURE_NODES:
        value = (complex_oscillatory_quad(integrand, -hi, -lo, n // 2)
                 + complex_oscillatory_quad(integrand, lo, hi, n // 2))
        if prev is not None and abs(value - prev) <= tol * max(1.0, abs(value)):
            converged = True
            break
        prev = value
        n *= 2
    nodes_used = min(n, MAX_QUADRATURE_NODES)

    product = float(m) * float(t)
    if product == 0.0:
        bound = None
    else:
        bound = 2.0 ** (0.5 * (1.0 - beta) * k) / math.sqrt(abs(product))
    return OscillatoryIntegralResult(value=value, bound=bound,
                                     converged=converged, nodes_used=nodes_used)


@dataclass(frozen=True)
class VanDerCorputReport:
    lhs: float
    rhs: float             # lambda^{-1/p} * (sup|amp| + L1(amp'))
    rhs_alternate: float   # same with exponent +1/p, reported for comparison
    lam: float
    p: int

    @property
    def ratio(self) -> float:
        if self.lhs == 0.0:
            return 0.0
        return self.lhs / self.rhs


def vandercorput_check(phase: Callable, phase_deriv_p: Callable,
                       interval: Tuple[float, float], lam: float, p: int,
                       amplitude: Callable = None, amplitude_deriv: Callable = None,
                       n_check: int = 256, quadrature_n: int = 4096,
                       tol: float = 1e-9) -> VanDerCorputReport:
    """Compare |integral of amplitude*e^{i phase}| with the derivative bound.

    The caller certifies |phase_deriv_p| >= lam on the interval; the claim is
    spot-checked on n_check equispaced nodes and a violation is an error, not
    a silent degradation.  amplitude defaults to 1 (then amplitude_deriv
    defaults to 0).
    """
    if p < 2:
        raise ValueError(f"derivative order p must be >= 2, got {p}")
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError(f"empty interval [{a}, {b}]")
    if amplitude is None:
        amplitude = lambda x: np.ones_like(np.asarray(x, dtype=float))
        if amplitude_deriv is None:
            amplitude_deriv = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    if amplitude_deriv is None:
        raise ValueError("amplitude_deriv is required when amplitude is given")

    nodes = np.linspace(a, b, int(n_check))
    certificate = np.abs(np.asarray(phase_deriv_p(nodes), dtype=float))
    bad = np.nonzero(certificate < lam)[0]
    if bad.size:
        i = int(bad[0])
        raise CertificateViolationError(
            f"|phase derivative of order {p}| = {certificate[i]:.6g} < lam = {lam:.6g} "
            f"at x = {nodes[i]:.6g}")

    def integrand(x):
        return np.asarray(amplitude(x), dtype=complex) * np.exp(1j * np.asarray(phase(x), dtype=float))

    n = int(quadrature_n)
    prev = None
    value = 0.0 + 0.0j
    while n <= MAX_QUADRATURE_NODES:
        value = complex_oscillatory_quad(integrand, a, b, n)
        if prev is not None and abs(value - prev) <= tol * max(1.0, abs(value)):
            break
        prev = value
        n *= 2
    lhs = abs(value)

    dense = np.linspace(a, b, 4097)
    sup_amp = float(np.max(np.abs(np.asarray(amplitude(dense), dtype=float))))
    l1_deriv = float(abs(complex_oscillatory_quad(
        lambda x: np.abs(np.asarray(amplitude_deriv(x), dtype=float)) + 0.0j,
        a, b, max(n, 4096))))
    variation = sup_amp + l1_deriv
    return VanDerCorputReport(lhs=lhs,
                              rhs=lam ** (-1.0 / p) * variation,
                              rhs_alternate=lam ** (1.0 / p) * variation,
                              lam=float(lam), p=int(p))
