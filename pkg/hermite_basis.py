#!/usr/bin/env python3
"""
Generalized Hermite Basis
=========================

Orthonormal polynomials p_k = p_{s,sigma,k} of the weight |x|^{2 sigma} e^{-s x^2}
on the real line, the functions phi_k = p_k e^{-s x^2 / 2}, the half-line
eigenfunctions chi_k = sqrt(2) rho^a phi_k, and the weighted Gram matrices
used by the Galerkin forms.

The weight exponent is 2*sigma: chi_k is orthonormal in L^2(rho^{2 c} d rho)
with sigma = a + c only for that exponent. Some printed sources carry
|x|^{sigma/2} instead; that reading does not make chi_k orthonormal and is
not used here.

Odd functions come from the identity p_{tau,2m+1}(x) = x p_{tau+1,2m}(x), so
every Gram problem reduces to even polynomials and a Laguerre rule in t = x^2.

Usage: imported by model_operators and elliptic_complexes.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

import mpmath
import numpy as np

from numerics import (MAX_BASIS, DomainError, PrecisionError, SymMatrix,
                      gauss_laguerre, half_line_moment)

logger = logging.getLogger(__name__)

EXTRA_NODES = 10
PARITIES = ('even', 'odd')


@dataclass(frozen=True)
class GenHermiteParams:
    """Scale, weight exponent and parity of a generalized Hermite family"""
    s: float
    sigma: float
    parity: str = 'even'

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}, got {self.parity!r}")
        if not self.s > 0:
            raise DomainError(f"scale s must be positive, got {self.s}")
        bound = -0.5 if self.parity == 'even' else -1.5
        if not float(self.sigma) > bound:
            raise DomainError(f"{self.parity} family needs sigma > {bound}, got {self.sigma}")

    @property
    def even_sigma(self) -> float:
        """Exponent of the even family that carries this family's functions"""
        return float(self.sigma) + (1.0 if self.parity == 'odd' else 0.0)


@dataclass(frozen=True)
class ChiBasis:
    """First K functions chi_k = sqrt(2) rho^a phi_k of one parity"""
    params: GenHermiteParams
    a_or_b: float
    c1_or_d1: float
    K: int

    def __post_init__(self):
        if self.K < 1:
            raise DomainError(f"basis size must be positive, got {self.K}")
        if self.K > MAX_BASIS:
            raise PrecisionError(f"basis size {self.K} exceeds the precision budget {MAX_BASIS}")
        if abs(float(self.a_or_b) + float(self.c1_or_d1) - float(self.params.sigma)) > 1e-12:
            raise DomainError(
                f"power {self.a_or_b} plus weight exponent {self.c1_or_d1} must equal sigma={self.params.sigma}")

    @property
    def indices(self) -> np.ndarray:
        start = 0 if self.params.parity == 'even' else 1
        return np.arange(start, start + 2 * self.K, 2)


def normalization_mass(sigma: float, s: float) -> float:
    """Total mass of |x|^{2 sigma} e^{-s x^2} on the line"""
    return 2.0 * half_line_moment(2.0 * float(sigma), s)


def recurrence_coefficients(params: GenHermiteParams, K: int) -> np.ndarray:
    """beta_1..beta_K of x p_{k-1} = sqrt(beta_k) p_k + sqrt(beta_{k-1}) p_{k-2}"""
    if K > 2 * MAX_BASIS:
        raise PrecisionError(f"{K} recurrence coefficients exceed the precision budget ({2 * MAX_BASIS})")
    sigma = float(params.sigma)
    if not sigma > -0.5:
        raise DomainError(f"weight |x|^{2 * sigma:g} is not integrable; use the even family of sigma+1")
    k = np.arange(1, K + 1)
    j = k // 2
    betas = np.where(k % 2 == 0, j, j + sigma + 0.5).astype(np.float64)
    return betas / params.s


def hermite_moments(sigma, s) -> Callable[[int], mpmath.mpf]:
    """Moment oracle of |x|^{2 sigma} e^{-s x^2} for the Stieltjes procedure"""
    sig = mpmath.mpf(sigma.numerator) / sigma.denominator if isinstance(sigma, Fraction) else mpmath.mpf(sigma)
    scale = mpmath.mpf(s.numerator) / s.denominator if isinstance(s, Fraction) else mpmath.mpf(s)

    def moment(j: int) -> mpmath.mpf:
        if j % 2:
            return mpmath.mpf(0)
        exponent = j // 2 + sig + mpmath.mpf(1) / 2
        return mpmath.gamma(exponent) / scale ** exponent

    return moment


def phi_table(sigma: float, s: float, count: int, x) -> np.ndarray:
    """Rows phi_0..phi_{count-1} of the weight |x|^{2 sigma} e^{-s x^2}, in longdouble"""
    x = np.atleast_1d(np.asarray(x, dtype=np.longdouble))
    table = np.zeros((count, x.size), dtype=np.longdouble)
    if count == 0:
        return table
    params = GenHermiteParams(s, sigma)
    roots = np.sqrt(recurrence_coefficients(params, count)).astype(np.longdouble)
    mass = np.longdouble(normalization_mass(sigma, s))
    phi0 = np.exp(-np.longdouble(s) * x * x / 2) / np.sqrt(mass)
    underflow = (phi0 == 0) & np.isfinite(x)
    if np.any(underflow):
        logger.warning(f"⚠️ Gaussian factor underflows at {int(underflow.sum())} points; values saturate to 0")
    table[0] = phi0
    if count > 1:
        table[1] = x * table[0] / roots[0]
    for k in range(2, count):
        table[k] = (x * table[k - 1] - roots[k - 2] * table[k - 2]) / roots[k - 1]
    return table


def phi_slopes(sigma: float, s: float, count: int, x) -> Tuple[np.ndarray, np.ndarray]:
    """Rows phi_k and their derivatives phi_k' at points x, in longdouble"""
    x = np.atleast_1d(np.asarray(x, dtype=np.longdouble))
    table = phi_table(sigma, s, count, x)
    slopes = np.zeros_like(table)
    if count > 1:
        roots = np.sqrt(recurrence_coefficients(GenHermiteParams(s, sigma), count)).astype(np.longdouble)
        # rows of p_k' e^{-s x^2/2}, from the derivative of the three-term recurrence
        slopes[1] = table[0] / roots[0]
        for k in range(2, count):
            slopes[k] = (table[k - 1] + x * slopes[k - 1] - roots[k - 2] * slopes[k - 2]) / roots[k - 1]
    return table, slopes - np.longdouble(s) * x * table


def even_rows(sigma: float, s: float, K: int, x) -> np.ndarray:
    """phi_{sigma,0}, phi_{sigma,2}, ..., phi_{sigma,2K-2} at points x"""
    return phi_table(sigma, s, 2 * K - 1, x)[0::2]


def eval_phi(params: GenHermiteParams, k: int, x) -> np.ndarray:
    """phi_k(x) = p_k(x) e^{-s x^2/2} for the family of params"""
    if k < 0:
        raise DomainError(f"index must be non-negative, got {k}")
    x_arr = np.asarray(x, dtype=np.longdouble)
    if params.parity == 'odd':
        if k % 2 == 0:
            raise DomainError(f"odd family has no even index {k}")
        row = phi_table(params.even_sigma, params.s, k, x_arr)[k - 1]
        values = x_arr * row.reshape(x_arr.shape)
    else:
        values = phi_table(float(params.sigma), params.s, k + 1, x_arr)[k].reshape(x_arr.shape)
    return np.asarray(values, dtype=np.float64)


def chi_values(basis: ChiBasis, k: int, rho) -> np.ndarray:
    """chi_k(rho) = sqrt(2) rho^a phi_k(rho) on the half line"""
    rho = np.asarray(rho, dtype=np.float64)
    if np.any(rho <= 0):
        raise DomainError("chi is evaluated on the open half line rho > 0")
    return np.sqrt(2.0) * rho ** float(basis.a_or_b) * eval_phi(basis.params, k, rho)


def _rows_at_nodes(basis: ChiBasis, nodes: np.ndarray) -> np.ndarray:
    return even_rows(basis.params.even_sigma, basis.params.s, basis.K, np.sqrt(nodes))


def gram_negative_power(basis: ChiBasis, w: float, nodes: Optional[int] = None) -> SymMatrix:
    """M_jk = <rho^{-w} chi_j, rho^{-w} chi_k> in the weight of the basis"""
    sigma = basis.params.even_sigma
    if not 2.0 * (sigma - w) > -1.0:
        raise DomainError(
            f"rho^{{-2w}} with w={w} is not integrable against rho^{2 * sigma:g} (needs 2(sigma-w) > -1)")
    rule = gauss_laguerre(sigma - w - 0.5, nodes or basis.K + EXTRA_NODES, basis.params.s)
    rows = _rows_at_nodes(basis, rule.nodes)
    weighted = rows * rule.scaled_weights.astype(np.longdouble)
    return SymMatrix.symmetrized(np.asarray(weighted @ rows.T, dtype=np.float64))


def cross_gram(basis_even: ChiBasis, basis_odd: ChiBasis, exponent: float,
               nodes: Optional[int] = None) -> np.ndarray:
    """X_jm = integral of rho^exponent chi_j^even chi_m^odd d rho (plain measure)"""
    if basis_even.params.parity != 'even' or basis_odd.params.parity != 'odd':
        raise DomainError("cross_gram pairs an even basis with an odd basis")
    if basis_even.params.s != basis_odd.params.s:
        raise DomainError("cross_gram needs both bases at the same scale s")
    power = float(exponent) + float(basis_even.a_or_b) + float(basis_odd.a_or_b) + 1.0
    alpha = (power - 1.0) / 2.0
    if not alpha > -1.0:
        raise DomainError(f"coupling integrand rho^{power:g} diverges at 0 (needs total power > -1)")
    size = nodes or max(basis_even.K, basis_odd.K) + EXTRA_NODES
    rule = gauss_laguerre(alpha, size, basis_even.params.s)
    even = _rows_at_nodes(basis_even, rule.nodes)
    odd = _rows_at_nodes(basis_odd, rule.nodes)
    weighted = even * rule.scaled_weights.astype(np.longdouble)
    return np.asarray(weighted @ odd.T, dtype=np.float64)


@dataclass(frozen=True)
class PowerFamily:
    """Functions sqrt(2) rho^power phi_{sigma,2m}(rho) for m < K

    Every chi basis is such a family: the even one with power a, the odd one
    with power b + 1 on the family of tau + 1. Other powers give the
    companion families used to enrich coupled Galerkin spaces.
    """
    sigma: float
    power: float
    s: float
    K: int


def power_family(basis: ChiBasis, shift: float = 0.0) -> PowerFamily:
    """The functions of basis multiplied by rho^shift"""
    lift = 1.0 if basis.params.parity == 'odd' else 0.0
    return PowerFamily(basis.params.even_sigma, float(basis.a_or_b) + lift + float(shift),
                       basis.params.s, basis.K)


def _family_rows(family: PowerFamily, rho: np.ndarray, derivative: bool) -> np.ndarray:
    table, slopes = phi_slopes(family.sigma, family.s, 2 * family.K - 1, rho)
    if not derivative:
        return table[0::2]
    # rho^{1 - power} d/drho (rho^power phi)
    return family.power * table[0::2] + rho * slopes[0::2]


def family_inner(first: PowerFamily, second: PowerFamily, power: float = 0.0, derivative: bool = False,
                 nodes: Optional[int] = None) -> np.ndarray:
    """M_jm = integral of rho^power f_j g_m d rho, or of rho^power f_j' g_m' with derivative"""
    if first.s != second.s:
        raise DomainError("family products need both families at the same scale s")
    total = first.power + second.power + float(power) - (2.0 if derivative else 0.0)
    alpha = (total - 1.0) / 2.0
    if not alpha > -1.0:
        raise DomainError(f"integrand rho^{total:g} diverges at 0 (needs total power > -1)")
    rule = gauss_laguerre(alpha, nodes or max(first.K, second.K) + EXTRA_NODES, first.s)
    rho = np.sqrt(rule.nodes.astype(np.longdouble))
    weighted = _family_rows(first, rho, derivative) * rule.scaled_weights.astype(np.longdouble)
    return np.asarray(weighted @ _family_rows(second, rho, derivative).T, dtype=np.float64)


def family_form(first: PowerFamily, second: PowerFamily, c2: float, xi: float, u: float) -> np.ndarray:
    """Quadratic form of -d^2/drho^2 + s^2 rho^2 + c2 rho^-2 + xi rho^-2u between two families"""
    form = family_inner(first, second, derivative=True) + first.s ** 2 * family_inner(first, second, 2.0)
    if c2:
        form = form + c2 * family_inner(first, second, -2.0)
    if xi:
        form = form + xi * family_inner(first, second, -2.0 * u)
    return form
