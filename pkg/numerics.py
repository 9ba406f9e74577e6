#!/usr/bin/env python3
"""
Numerical Kernels
=================

Deterministic building blocks shared by every other module of the lab:

1. Dense symmetric eigensolver (cyclic Jacobi rotations, numba-compiled)
2. Generalized Gauss-Laguerre quadrature (Golub-Welsch + Newton polish)
3. Closed-form half-line Gaussian moments
4. Stieltjes procedure on extended-precision moments (mpmath)
5. Exact rational helpers (Fraction is the big-rational type of the lab)

Extended precision: the Laguerre recurrences and Christoffel sums run in
numpy.longdouble (80-bit on x86), the Stieltjes oracle in mpmath at
STIELTJES_DPS digits.

Usage: imported by the other modules; not a script.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Sequence, Tuple, Union

import mpmath
import numpy as np
from numba import njit
from scipy.special import gammaln

logger = logging.getLogger(__name__)

# Defaults
JACOBI_TOLERANCE = 1e-14
JACOBI_MAX_SWEEPS = 100
MAX_BASIS = 200
NEWTON_STEPS = 6
STIELTJES_DPS = 50

Rational = Union[int, Fraction]


class LabError(Exception):
    """Root of all lab errors"""


class DomainError(LabError, ValueError):
    """Input outside the domain where an operation is defined"""


class PrecisionError(LabError, ArithmeticError):
    """Numerical breakdown or precision budget exceeded"""


@dataclass(frozen=True)
class SymMatrix:
    """Dense real symmetric matrix, exactly symmetric as stored"""
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DomainError(f"SymMatrix needs a non-empty square array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("SymMatrix entries must be finite")
        if not np.array_equal(a, a.T):
            raise DomainError("SymMatrix entries are not exactly symmetric")
        object.__setattr__(self, 'entries', a)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def symmetrized(cls, a) -> 'SymMatrix':
        """Build from a numerically symmetric array by averaging with its transpose"""
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"expected a square array, got shape {a.shape}")
        return cls((a + a.T) / 2.0)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for the weight t^alpha e^{-s t} on (0, inf)

    ``scaled_weights`` are the weights multiplied by e^{s t_i}; they integrate
    functions that already carry their own e^{-s t} factor without overflow.
    """
    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    log_weights: np.ndarray
    alpha: float
    scale: float

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Approximate the integral of f(t) t^alpha e^{-st} dt"""
        return float(np.dot(self.weights, f(self.nodes)))

    def integrate_damped(self, g: Callable[[np.ndarray], np.ndarray]) -> float:
        """Approximate the integral of g(t) t^alpha dt where g already decays like e^{-st}"""
        return float(np.dot(self.scaled_weights, g(self.nodes)))


# ---------------------------------------------------------------------------
# Eigensolver
# ---------------------------------------------------------------------------

@njit(cache=True)
def _jacobi_sweeps(a, tolerance, max_sweeps):
    """Cyclic row-wise Jacobi on a copy; returns (diag, V, sweeps) or sweeps=-1"""
    n = a.shape[0]
    v = np.eye(n)
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += a[i, j] * a[i, j]
    frob = np.sqrt(frob)
    if frob == 0.0:
        return np.zeros(n), v, 0
    negligible = 1e-17 * frob

    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        off = np.sqrt(off)
        if off <= tolerance * frob:
            return np.diag(a).copy(), v, sweep

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                g = 100.0 * abs(apq)
                if abs(apq) <= negligible or (abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq)):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v, -1


def sym_eigen(m: Union[SymMatrix, np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a symmetric matrix"""
    if not isinstance(m, SymMatrix):
        m = SymMatrix(m)
    work = np.array(m.entries, dtype=np.float64, copy=True)
    values, vectors, sweeps = _jacobi_sweeps(work, JACOBI_TOLERANCE, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise PrecisionError(
            f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps (order {m.order})")
    order = np.argsort(values, kind='stable')
    return values[order], vectors[:, order]


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def _laguerre_values(alpha: float, n: int, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal Laguerre functions q_k(t) e^{-t/2} for k < n, plus q_n and q_n' scaled alike"""
    t = np.asarray(t, dtype=np.longdouble)
    a = np.longdouble(alpha)
    r_prev = np.zeros_like(t)
    r = np.exp(-t / 2 - np.longdouble(gammaln(alpha + 1.0)) / 2)
    d_prev = np.zeros_like(t)
    d = np.zeros_like(t)
    sum_sq = np.zeros_like(t)
    for k in range(n):
        sum_sq += r * r
        lead = np.sqrt(np.longdouble((k + 1) * (k + 1 + alpha)))
        back = np.sqrt(np.longdouble(k * (k + alpha))) if k > 0 else np.longdouble(0)
        diag = 2 * k + a + 1
        r_next = ((t - diag) * r - back * r_prev) / lead
        d_next = ((t - diag) * d + r - back * d_prev) / lead
        r_prev, r = r, r_next
        d_prev, d = d, d_next
    return sum_sq, r, d


@lru_cache(maxsize=256)
def _unit_laguerre(alpha: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and scaled weights of the n-point rule for t^alpha e^{-t}"""
    k = np.arange(n, dtype=np.float64)
    jacobi = np.diag(2.0 * k + alpha + 1.0)
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    jacobi += np.diag(off, 1) + np.diag(off, -1)
    nodes, _ = sym_eigen(SymMatrix(jacobi))

    polished = nodes.astype(np.longdouble)
    for _ in range(NEWTON_STEPS):
        _, value, slope = _laguerre_values(alpha, n, polished)
        step = value / slope
        polished = polished - step
        if np.all(np.abs(step) <= 1e-18 * np.abs(polished)):
            break
    sum_sq, _, _ = _laguerre_values(alpha, n, polished)
    nodes = polished.astype(np.float64)
    scaled = (1 / sum_sq).astype(np.float64)

    if np.any(nodes <= 0) or np.any(np.diff(nodes) <= 0):
        raise PrecisionError(f"Gauss-Laguerre nodes lost ordering (alpha={alpha}, n={n})")
    return nodes, scaled


def gauss_laguerre(alpha: float, n: int, s: float = 1.0) -> QuadratureRule:
    """n-point Gauss rule for t^alpha e^{-s t} on (0, inf), exact to degree 2n-1"""
    alpha = float(alpha)
    if not alpha > -1.0:
        raise DomainError(f"Gauss-Laguerre needs alpha > -1, got {alpha}")
    if n < 1:
        raise DomainError(f"Gauss-Laguerre needs at least one node, got {n}")
    if not s > 0:
        raise DomainError(f"scale s must be positive, got {s}")
    if n > MAX_BASIS + 20:
        raise PrecisionError(f"{n} quadrature nodes exceed the precision budget ({MAX_BASIS + 20})")

    unit_nodes, unit_scaled = _unit_laguerre(alpha, n)
    factor = s ** (alpha + 1.0)
    nodes = unit_nodes / s
    scaled_weights = unit_scaled / factor
    log_weights = np.log(unit_scaled) - unit_nodes - (alpha + 1.0) * math.log(s)
    weights = np.exp(log_weights)
    return QuadratureRule(nodes=nodes, weights=weights, scaled_weights=scaled_weights,
                          log_weights=log_weights, alpha=alpha, scale=float(s))


def half_line_moment(beta: float, s: float) -> float:
    """Integral of rho^beta e^{-s rho^2} over (0, inf)"""
    if not beta > -1:
        raise DomainError(f"half-line moment diverges for beta={beta} (needs beta > -1)")
    if not s > 0:
        raise DomainError(f"scale s must be positive, got {s}")
    half = (beta + 1.0) / 2.0
    return math.exp(gammaln(half) - half * math.log(s)) / 2.0


# ---------------------------------------------------------------------------
# Stieltjes procedure
# ---------------------------------------------------------------------------

def _to_mpf(value) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def stieltjes_recurrence(moment_oracle: Callable[[int], object], K: int,
                         dps: int = STIELTJES_DPS) -> List[float]:
    """Recurrence coefficients beta_1..beta_K of the orthonormal polynomials of a measure

    ``moment_oracle(j)`` returns the j-th moment (mpf, Fraction, int or float).
    """
    if K < 1:
        raise DomainError(f"K must be at least 1, got {K}")
    with mpmath.workdps(dps):
        moments = [_to_mpf(moment_oracle(j)) for j in range(2 * K + 1)]

        def inner(p: List, q: List) -> mpmath.mpf:
            total = mpmath.mpf(0)
            for i, pi in enumerate(p):
                if pi == 0:
                    continue
                for j, qj in enumerate(q):
                    total += pi * qj * moments[i + j]
            return total

        previous: List = []
        current: List = [mpmath.mpf(1)]
        norm_prev = None
        norm = inner(current, current)
        if norm <= 0:
            raise PrecisionError("Stieltjes breakdown at index 0: non-positive total mass")
        betas: List[float] = []
        beta = mpmath.mpf(0)
        for k in range(K):
            shifted = [mpmath.mpf(0)] + current
            alpha = inner(shifted, current) / norm
            nxt = [mpmath.mpf(0)] * (len(current) + 1)
            for i, c in enumerate(shifted):
                nxt[i] += c
            for i, c in enumerate(current):
                nxt[i] -= alpha * c
            for i, c in enumerate(previous):
                nxt[i] -= beta * c
            previous, current = current, nxt
            norm_prev, norm = norm, inner(current, current)
            beta = norm / norm_prev
            if beta <= 0:
                logger.warning(f"⚠️ Stieltjes breakdown: beta_{k + 1} = {mpmath.nstr(beta, 8)}")
                raise PrecisionError(f"Stieltjes breakdown: non-positive beta at index {k + 1}")
            betas.append(float(beta))
    return betas


# ---------------------------------------------------------------------------
# Exact rationals
# ---------------------------------------------------------------------------

def require_rational(value, name: str = "value") -> Fraction:
    """Coerce int/Fraction/"num/den" to Fraction; floats are refused"""
    if isinstance(value, bool):
        raise TypeError(f"{name}: booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"{name}: exact rational required, got {type(value).__name__} {value!r}")


def parse_rational(text) -> Fraction:
    """Parse "num/den" or an integer string; decimal and exponent notation are refused"""
    if isinstance(text, float):
        raise TypeError(f"float {text!r} refused: write it as \"num/den\"")
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {type(text).__name__}")
    cleaned = text.strip().replace('−', '-')
    if not cleaned or any(ch in cleaned for ch in '.eE'):
        raise DomainError(f"not an exact rational: {text!r} (use \"num/den\")")
    try:
        value = Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"not an exact rational: {text!r} ({e})") from e
    return value


def format_rational(q: Rational) -> str:
    return str(Fraction(q))


def rational_range(start: Rational, end: Rational, step: Rational) -> List[Fraction]:
    """Inclusive exact grid start, start+step, ..., <= end"""
    start, end, step = (require_rational(x, n) for x, n in ((start, 'start'), (end, 'end'), (step, 'step')))
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    if end < start:
        raise DomainError(f"grid end {end} lies below start {start}")
    count = int((end - start) / step)
    return [start + i * step for i in range(count + 1)]


def as_float_list(values: Sequence) -> List[float]:
    return [float(v) for v in values]
