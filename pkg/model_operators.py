#!/usr/bin/env python3
"""
Half-Line Model Operators
=========================

The unperturbed operators P0 = H - 2 c1 rho^{-1} d/drho + c2 rho^{-2} (even part)
and Q0 (odd part) with exact spectra lambda_k = (2k + 1 + 2 varsigma_k) s, and
their perturbations:

    P = P0 + xi rho^{-2u}        Q = Q0 + xi rho^{-2u}
    W = [[P, eta rho^{2 theta - a - b - 1}], [eta rho^{...}, Q]]

represented by their quadratic forms on the first K functions chi_k.
Rayleigh-Ritz eigenvalues of these matrices are upper bounds of the true
eigenvalues and decrease with K.

A W spec may carry companion families: the chi functions of one component
multiplied by rho^shift. They span the rho^{-u} images that the coupled
eigenvectors carry near rho = 0 and that no polynomial in the chi basis
reaches. Companions are orthogonalized against the chi functions and
appended after both blocks.

Index convention: k is the index of chi_k. Even k lives in the P block at
position k // 2, odd k in the Q block at position (k - 1) // 2.

Usage: imported by elliptic_complexes and the acceptance suite.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from hermite_basis import (ChiBasis, GenHermiteParams, PowerFamily, cross_gram, family_form, family_inner,
                           gram_negative_power, power_family)
from numerics import DomainError, PrecisionError, SymMatrix, sym_eigen

logger = logging.getLogger(__name__)

DEFAULT_BASIS = 40
STUDY_BASIS = 60
MULTIPLICITY_THRESHOLD = 1e-8
COMPANION_CUTOFF = 1e-8
QUADRATIC_TOLERANCE = 1e-9
KINDS = ('P', 'Q', 'W')


@dataclass(frozen=True)
class HalfLineOperatorSpec:
    """Full parameter record of one model operator"""
    kind: str
    s: float
    u: float
    xi: float
    eta: float
    c1: float
    c2: float
    d1: float
    d2: float
    a: float
    b: float
    sigma: float
    tau: float
    theta: float
    companions: Tuple[Optional[float], Optional[float]] = (None, None)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.s > 0:
            raise DomainError(f"scale s must be positive, got {self.s}")
        if not 0 < self.u < 1:
            raise DomainError(f"exponent u must lie in (0, 1), got {self.u}")
        if self.xi < 0:
            raise DomainError(f"xi must be non-negative, got {self.xi}")
        if abs(self.a + self.c1 - self.sigma) > QUADRATIC_TOLERANCE:
            raise DomainError(f"sigma={self.sigma} differs from a + c1 = {self.a + self.c1}")
        if abs(self.b + self.d1 - self.tau) > QUADRATIC_TOLERANCE:
            raise DomainError(f"tau={self.tau} differs from b + d1 = {self.b + self.d1}")
        if self.kind in ('P', 'W'):
            residual = self.a ** 2 + (2 * self.c1 - 1) * self.a - self.c2
            if abs(residual) > QUADRATIC_TOLERANCE * (1 + abs(self.c2)):
                raise DomainError(f"a={self.a} does not solve a^2 + (2c1-1)a - c2 = 0 (residual {residual:.3g})")
            floor = self.u - 0.5 if self.xi > 0 else -0.5
            if not self.sigma > floor:
                raise DomainError(f"sigma={self.sigma} must exceed {floor}")
        if self.kind in ('Q', 'W'):
            residual = self.b ** 2 + (2 * self.d1 + 1) * self.b - self.d2
            if abs(residual) > QUADRATIC_TOLERANCE * (1 + abs(self.d2)):
                raise DomainError(f"b={self.b} does not solve b^2 + (2d1+1)b - d2 = 0 (residual {residual:.3g})")
            floor = self.u - 1.5 if self.xi > 0 else -1.5
            if not self.tau > floor:
                raise DomainError(f"tau={self.tau} must exceed {floor}")
        if self.kind == 'W' and self.eta != 0 and not self.theta > -0.5:
            raise DomainError(f"theta={self.theta} must exceed -1/2")
        if any(shift is not None for shift in self.companions):
            if self.kind != 'W':
                raise DomainError("companion families enrich W specs only")
            if self.c1 != 0 or self.d1 != 0:
                raise DomainError("companion families need the plain measure (c1 = d1 = 0)")

    @property
    def v(self) -> float:
        return self.sigma + self.tau - 2 * self.theta


@dataclass
class RitzResult:
    """Rayleigh-Ritz eigenvalues and coordinates in the chi basis"""
    eigenvalues: np.ndarray
    vectors: np.ndarray
    K: int
    kind: str


def solve_a(c1: float, c2: float) -> Tuple[float, float]:
    """Roots of a^2 + (2c1 - 1) a - c2 = 0, ascending"""
    p = 2 * c1 - 1
    disc = p * p + 4 * c2
    if disc < 0:
        raise DomainError(f"a^2 + ({p:g})a - {c2:g} = 0 has no real root")
    root = math.sqrt(disc)
    return ((-p - root) / 2, (-p + root) / 2)


def solve_b(d1: float, d2: float) -> Tuple[float, float]:
    """Roots of b^2 + (2d1 + 1) b - d2 = 0, ascending"""
    p = 2 * d1 + 1
    disc = p * p + 4 * d2
    if disc < 0:
        raise DomainError(f"b^2 + ({p:g})b - {d2:g} = 0 has no real root")
    root = math.sqrt(disc)
    return ((-p - root) / 2, (-p + root) / 2)


def make_spec(kind: str, s: float, u: float, sigma: float, tau: Optional[float] = None,
              theta: Optional[float] = None, xi: float = 0.0, eta: float = 0.0,
              c1: float = 0.0, d1: float = 0.0, v: Optional[float] = None,
              companions: Tuple[Optional[float], Optional[float]] = (None, None)) -> HalfLineOperatorSpec:
    """Build a spec from sigma/tau (and theta or v), deriving a, b, c2, d2"""
    if tau is None:
        if kind != 'P':
            raise DomainError(f"kind {kind} needs tau")
        tau = sigma
    a = sigma - c1
    b = tau - d1
    c2 = a * a + (2 * c1 - 1) * a
    d2 = b * b + (2 * d1 + 1) * b
    if theta is None:
        theta = (sigma + tau - (u if v is None else v)) / 2
    return HalfLineOperatorSpec(kind=kind, s=float(s), u=float(u), xi=float(xi), eta=float(eta),
                                c1=float(c1), c2=float(c2), d1=float(d1), d2=float(d2),
                                a=float(a), b=float(b), sigma=float(sigma), tau=float(tau),
                                theta=float(theta), companions=tuple(companions))


def exact_base_spectrum(sigma: float, tau: float, s: float, K: int) -> np.ndarray:
    """lambda_k = (2k + 1 + 2 varsigma_k) s for k = 0..K-1"""
    k = np.arange(K)
    varsigma = np.where(k % 2 == 0, sigma, tau)
    return (2 * k + 1 + 2 * varsigma) * s


def first_term(spec: HalfLineOperatorSpec, k: int) -> float:
    """Unperturbed value (2k + 1 + 2 varsigma_k) s of chi_k"""
    varsigma = spec.sigma if k % 2 == 0 else spec.tau
    return (2 * k + 1 + 2 * varsigma) * spec.s


def _even_basis(spec: HalfLineOperatorSpec, K: int) -> ChiBasis:
    return ChiBasis(GenHermiteParams(spec.s, spec.sigma, 'even'), spec.a, spec.c1, K)


def _odd_basis(spec: HalfLineOperatorSpec, K: int) -> ChiBasis:
    return ChiBasis(GenHermiteParams(spec.s, spec.tau, 'odd'), spec.b, spec.d1, K)


def _block(spec: HalfLineOperatorSpec, basis: ChiBasis) -> np.ndarray:
    diag = np.diag([first_term(spec, int(k)) for k in basis.indices])
    if spec.xi == 0:
        return diag
    return diag + spec.xi * gram_negative_power(basis, spec.u).entries


@dataclass
class _Component:
    """One component of a W spec: its chi basis and the optional companion family

    ``lift`` maps reduced companion coordinates to raw coordinates
    [originals, companions]. Reduced companions are orthonormal and
    orthogonal to the originals.
    """
    basis: ChiBasis
    potential: float
    companion: Optional[PowerFamily] = None
    lift: Optional[np.ndarray] = None

    @property
    def extra(self) -> int:
        return 0 if self.lift is None else self.lift.shape[1]

    def transform(self) -> np.ndarray:
        K = self.basis.K
        if self.lift is None:
            return np.eye(K)
        return np.vstack([np.hstack([np.eye(K), self.lift[:K]]),
                          np.hstack([np.zeros((K, K)), self.lift[K:]])])


def _component(basis: ChiBasis, potential: float, shift: Optional[float]) -> _Component:
    part = _Component(basis, potential)
    if shift is None:
        return part
    original, companion = power_family(basis), power_family(basis, shift)
    own = family_inner(companion, companion)
    norms = 1.0 / np.sqrt(np.diag(own))
    overlap = family_inner(original, companion) * norms
    residual = own * np.outer(norms, norms) - overlap.T @ overlap
    values, vectors = sym_eigen(SymMatrix.symmetrized(residual))
    keep = values > COMPANION_CUTOFF
    if not np.any(keep):
        logger.warning(f"⚠️ companion family rho^{shift:g} lies in the span of the basis; not used")
        return part
    reduce = vectors[:, keep] / np.sqrt(values[keep])
    part.companion = companion
    part.lift = np.vstack([-overlap @ reduce, norms[:, None] * reduce])
    logger.debug(f"companion rho^{shift:g}: kept {int(keep.sum())} of {basis.K} directions")
    return part


def _raw_form(spec: HalfLineOperatorSpec, part: _Component) -> np.ndarray:
    block = _block(spec, part.basis)
    if part.companion is None:
        return block
    original = power_family(part.basis)
    mixed = family_form(original, part.companion, part.potential, spec.xi, spec.u)
    own = family_form(part.companion, part.companion, part.potential, spec.xi, spec.u)
    return np.block([[block, mixed], [mixed.T, own]])


def _raw_coupling(spec: HalfLineOperatorSpec, even: _Component, odd: _Component) -> np.ndarray:
    rows, cols = even.transform().shape[0], odd.transform().shape[0]
    if spec.eta == 0:
        return np.zeros((rows, cols))
    exponent = 2 * spec.theta - spec.a - spec.b - 1
    core = cross_gram(even.basis, odd.basis, exponent)
    if even.companion is None and odd.companion is None:
        return spec.eta * core
    evens = [power_family(even.basis)] + ([even.companion] if even.companion else [])
    odds = [power_family(odd.basis)] + ([odd.companion] if odd.companion else [])
    blocks = [[family_inner(f, g, exponent) for g in odds] for f in evens]
    blocks[0][0] = core
    return spec.eta * np.block(blocks)


def _assemble(spec: HalfLineOperatorSpec, K: int) -> Tuple[np.ndarray, np.ndarray]:
    """Form matrix and the component (0 even, 1 odd) of each of its rows"""
    if K < 1:
        raise DomainError(f"basis size must be positive, got {K}")
    if spec.kind == 'P':
        return _block(spec, _even_basis(spec, K)), np.zeros(K, dtype=int)
    if spec.kind == 'Q':
        return _block(spec, _odd_basis(spec, K)), np.ones(K, dtype=int)

    even = _component(_even_basis(spec, K), spec.c2, spec.companions[0])
    odd = _component(_odd_basis(spec, K), spec.d2, spec.companions[1])
    t_even, t_odd = even.transform(), odd.transform()
    upper = t_even.T @ _raw_form(spec, even) @ t_even
    lower = t_odd.T @ _raw_form(spec, odd) @ t_odd
    coupling = t_even.T @ _raw_coupling(spec, even, odd) @ t_odd
    matrix = np.block([[upper, coupling], [coupling.T, lower]])
    # originals first, so chi_k keeps the row given by coordinate_of
    n_even = K + even.extra
    order = [*range(K), *range(n_even, n_even + K), *range(K, n_even), *range(n_even + K, matrix.shape[0])]
    components = np.array([0] * K + [1] * K + [0] * even.extra + [1] * odd.extra)
    return matrix[np.ix_(order, order)], components


def form_matrix(spec: HalfLineOperatorSpec, K: int) -> SymMatrix:
    """Galerkin matrix of the quadratic form on the first K chi functions (2K for W, plus companions)"""
    return SymMatrix.symmetrized(_assemble(spec, K)[0])


def ritz_spectrum(spec: HalfLineOperatorSpec, K: int = DEFAULT_BASIS,
                  shift: Optional[Sequence[float]] = None) -> RitzResult:
    """Ritz eigenvalues of the form matrix, optionally plus a diagonal shift

    For W a pair (even, odd) shifts each component by its own constant.
    """
    matrix, components = _assemble(spec, K)
    if shift is not None:
        shift = np.asarray(shift, dtype=np.float64)
        if spec.kind == 'W' and shift.size == 2:
            shift = shift[components]
        matrix = matrix + np.diag(np.broadcast_to(shift, (matrix.shape[0],)))
    values, vectors = sym_eigen(SymMatrix.symmetrized(matrix))
    return RitzResult(eigenvalues=values, vectors=vectors, K=K, kind=spec.kind)


def coordinate_of(spec: HalfLineOperatorSpec, k: int, K: int) -> int:
    """Row of chi_k in the form matrix"""
    if spec.kind == 'P':
        if k % 2:
            raise DomainError(f"P acts on even chi_k; index {k} is odd")
        position = k // 2
    elif spec.kind == 'Q':
        if k % 2 == 0:
            raise DomainError(f"Q acts on odd chi_k; index {k} is even")
        position = (k - 1) // 2
    else:
        position = k // 2 if k % 2 == 0 else K + (k - 1) // 2
    if position >= (2 * K if spec.kind == 'W' else K):
        raise DomainError(f"index {k} lies outside a basis of size {K}")
    return position


def growth_exponent(spec: HalfLineOperatorSpec, k: int, s_list: Sequence[float],
                    K: int = STUDY_BASIS) -> float:
    """Least-squares slope of log(ritz_k - base_k) against log s"""
    if spec.kind == 'W':
        raise DomainError("growth exponent is defined for P and Q only")
    if spec.xi <= 0:
        raise DomainError("growth exponent needs xi > 0 (the gap vanishes otherwise)")
    s_values = [float(s) for s in s_list]
    if len(s_values) < 4:
        raise DomainError(f"growth exponent needs at least 4 scales, got {len(s_values)}")
    gaps = []
    for s in s_values:
        scaled = replace(spec, s=s)
        position = coordinate_of(scaled, k, K)
        ritz = ritz_spectrum(scaled, K).eigenvalues[position]
        gap = ritz - first_term(scaled, k)
        if not gap > 0:
            raise PrecisionError(f"non-positive gap {gap:.3g} at s={s}, k={k}")
        gaps.append(gap)
    slope, _ = np.polyfit(np.log(s_values), np.log(gaps), 1)
    logger.debug(f"growth exponent k={k}: slope {slope:.4f} over {len(s_values)} scales")
    return float(slope)


def overlap_norm(spec: HalfLineOperatorSpec, k: int, K: int = STUDY_BASIS) -> float:
    """Norm of the projection of chi_k onto the Ritz eigenspace it belongs to

    For P and Q the eigenspace is the one of the k-th Ritz value; for W it is
    the Ritz vector with the largest chi_k coordinate. Eigenvalues closer than
    1e-8 s are treated as one invariant subspace.
    """
    result = ritz_spectrum(spec, K)
    row = coordinate_of(spec, k, K)
    if spec.kind == 'W':
        target = int(np.argmax(np.abs(result.vectors[row])))
    else:
        target = row
    values = result.eigenvalues
    cluster = np.flatnonzero(np.abs(values - values[target]) <= MULTIPLICITY_THRESHOLD * spec.s)
    if cluster.size > 1:
        logger.warning(f"⚠️ eigenvalue {values[target]:.6g} has multiplicity {cluster.size}; "
                       f"overlap taken on the invariant subspace")
    return float(min(1.0, np.sqrt(np.sum(result.vectors[row, cluster] ** 2))))


def ritz_monotonicity(spec: HalfLineOperatorSpec, K: int, step: int = 4) -> bool:
    """True when enlarging the basis never raises a Ritz value beyond 1e-10"""
    coarse = ritz_spectrum(spec, K).eigenvalues
    fine = ritz_spectrum(spec, K + step).eigenvalues[:coarse.size]
    return bool(np.all(fine <= coarse + 1e-10 * (1 + np.abs(coarse))))


def block_spectra(spec: HalfLineOperatorSpec, K: int) -> List[np.ndarray]:
    """Ritz spectra of the P and Q blocks of a W spec taken separately"""
    if spec.kind != 'W':
        raise DomainError("block spectra are defined for W specs")
    plain = replace(spec, companions=(None, None))
    return [ritz_spectrum(replace(plain, kind='P'), K).eigenvalues,
            ritz_spectrum(replace(plain, kind='Q'), K).eigenvalues]
