#!/usr/bin/env python3
"""
Morse Numbers of Rel-Critical Points
====================================

Local Morse numbers nu of rel-critical points with the local model
f = f(x) + (rho_+^2 - rho_-^2)/2, in the max/min form (threshold constraints
on the degrees of the link Betti numbers) and in the perversity form, the
Witten harmonic dimensions of the local models, and the Morse inequalities
with the Euler equality.

Threshold constraints per cone factor i with T_i = (k_i - 1)/2 +- 1/(2 u_i):

    max   plus side  r_i <  (k_i - 1)/2 + 1/(2 u_i)
          minus side r_i >= (k_i - 1)/2 + 1/(2 u_i)
    min   plus side  r_i <= (k_i - 1)/2 - 1/(2 u_i)
          minus side r_i >  (k_i - 1)/2 - 1/(2 u_i)

and nu^r sums prod beta^{r_i} over tuples with r = m_- + sum r_i + |I_-|.
All arithmetic is exact.

Critical-point documents:

    [{"m_plus": 0, "m_minus": 0,
      "factors": [{"link": "S2", "u": "1", "side": "+"}]}]

Usage: imported by the acceptance suite and the CLI.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from elliptic_complexes import cone_harmonic_dims
from numerics import DomainError, require_rational
from stratified_spaces import (Cone, DocumentError, Euclidean, Manifold, Perversity, Product,
                               SpaceNode, Suspension, load_space)

logger = logging.getLogger(__name__)

SIDES = ('+', '-')
CONVENTIONS = ('pbar_max', 'qbar_min')


@dataclass(frozen=True)
class ConeFactor:
    """Cone factor c(link) of a local model, on the plus or minus side"""
    link: SpaceNode
    u: Fraction
    side: str
    betti: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.side not in SIDES:
            raise DomainError(f"side must be '+' or '-', got {self.side!r}")
        if not self.link.compact:
            raise DomainError("cone factor links must be compact")
        u = require_rational(self.u, 'u')
        if not 0 < u <= 1:
            raise DomainError(f"exponent u must lie in (0, 1], got {u}")
        if self.betti is not None and len(self.betti) != self.link.dim + 1:
            raise DomainError(f"betti override needs {self.link.dim + 1} entries, got {len(self.betti)}")

    @property
    def k(self) -> int:
        return self.link.dim + 1

    def link_betti(self) -> Tuple[int, ...]:
        return self.betti if self.betti is not None else link_betti(self.link)


@dataclass(frozen=True)
class RelCriticalPoint:
    m_plus: int
    m_minus: int
    factors: Tuple[ConeFactor, ...] = ()

    def __post_init__(self):
        if self.m_plus < 0 or self.m_minus < 0:
            raise DomainError("m_plus and m_minus must be non-negative")

    @property
    def dim(self) -> int:
        return self.m_plus + self.m_minus + sum(f.k for f in self.factors)

    def side(self, side: str) -> List[ConeFactor]:
        return [f for f in self.factors if f.side == side]


@dataclass(frozen=True)
class BettiVector:
    values: Tuple[int, ...]
    flavor: str

    @property
    def dim(self) -> int:
        return len(self.values) - 1

    @property
    def euler(self) -> int:
        return sum((-1) ** r * b for r, b in enumerate(self.values))


@dataclass
class MorseReport:
    partial: List[Tuple[int, int, int]]
    euler_betti: int
    euler_nu: int
    points: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def inequalities_hold(self) -> bool:
        return all(lhs <= rhs for _, lhs, rhs in self.partial)

    @property
    def euler_holds(self) -> bool:
        return self.euler_betti == self.euler_nu

    @property
    def passed(self) -> bool:
        return self.inequalities_hold and self.euler_holds


def kunneth(vectors: Iterable[Sequence[int]]) -> Tuple[int, ...]:
    """Betti numbers of a product"""
    result = np.array([1], dtype=np.int64)
    for vector in vectors:
        result = np.convolve(result, np.asarray(vector, dtype=np.int64))
    return tuple(int(x) for x in result)


def link_betti(space: SpaceNode) -> Tuple[int, ...]:
    """Betti numbers of a smooth compact link"""
    if isinstance(space, Manifold):
        return space.betti
    if isinstance(space, Product) and all(isinstance(f, (Manifold, Product)) for f in space.factors):
        return kunneth(link_betti(f) for f in space.factors)
    raise DomainError(f"link of kind {type(space).__name__.lower()} needs an explicit betti override")


def _padded(values: Sequence[int], length: int) -> Tuple[int, ...]:
    values = list(values)
    if len(values) > length:
        if any(values[length:]):
            raise DomainError(f"degree vector {values} does not fit in length {length}")
        values = values[:length]
    return tuple(int(v) for v in values) + (0,) * (length - len(values))


def _delta(position: int) -> List[int]:
    return [0] * position + [1]


def _admissible(r: int, factor: ConeFactor, choice: str) -> bool:
    u = require_rational(factor.u, 'u')
    if choice == 'max':
        threshold = Fraction(factor.k - 1, 2) + 1 / (2 * u)
        return r < threshold if factor.side == '+' else r >= threshold
    threshold = Fraction(factor.k - 1, 2) - 1 / (2 * u)
    return r <= threshold if factor.side == '+' else r > threshold


def _side_vector(factor: ConeFactor, keep) -> List[int]:
    betti = factor.link_betti()
    filtered = [b if keep(r) else 0 for r, b in enumerate(betti)]
    return filtered if factor.side == '+' else [0] + filtered


def nu_local(point: RelCriticalPoint, choice: str) -> Tuple[int, ...]:
    """nu^r_{max/min} of a rel-critical point"""
    if choice not in ('max', 'min'):
        raise DomainError(f"choice must be 'max' or 'min', got {choice!r}")
    vectors = [_delta(point.m_minus)]
    for factor in point.factors:
        vectors.append(_side_vector(factor, lambda r, f=factor: _admissible(r, f, choice)))
    return _padded(kunneth(vectors), point.dim + 1)


def model_harmonic_dims(point: RelCriticalPoint, choice: str) -> Tuple[int, ...]:
    """Witten harmonic dimensions of the local model, factor by factor"""
    vectors = [[1] + [0] * point.m_plus, _delta(point.m_minus)]
    for factor in point.factors:
        dims = cone_harmonic_dims(factor.link_betti(), factor.k, factor.u, factor.side, choice)
        vectors.append(dims.dims)
    return _padded(kunneth(vectors), point.dim + 1)


def nu_perversity(point: RelCriticalPoint, p: Perversity, convention: str = 'pbar_max') -> Tuple[int, ...]:
    """nu^p of a rel-critical point in the pseudomanifold reduction

    With convention 'qbar_min' the perversity passed is q; the constraints
    are the same expressions in q_k.
    """
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    plus, minus = point.side('+'), point.side('-')
    if len(plus) > 1 or len(minus) > 1:
        raise DomainError("the perversity form takes at most one cone factor per side")
    vectors = [_delta(point.m_minus)]
    if plus and minus:
        k = plus[0].k + minus[0].k
        if 2 * p.at(k) != k - 2:
            raise DomainError(f"links on both sides need 2 p_{k} = {k - 2} (only if 2p_k = k - 2), "
                              f"got p_{k} = {p.at(k)}")
        if convention == 'pbar_max':
            keep_plus = lambda r: 2 * r < plus[0].k
            keep_minus = lambda r: 2 * r >= minus[0].k
        else:
            keep_plus = lambda r: 2 * r <= plus[0].k - 2
            keep_minus = lambda r: 2 * r > minus[0].k - 2
        vectors += [_side_vector(plus[0], keep_plus), _side_vector(minus[0], keep_minus)]
    elif plus:
        k = plus[0].k
        vectors.append(_side_vector(plus[0], lambda r: r <= k - 2 - p.at(k)))
    elif minus:
        k = minus[0].k
        vectors.append(_side_vector(minus[0], lambda r: r >= k - 1 - p.at(k)))
    return _padded(kunneth(vectors), point.dim + 1)


def betti_witten(space: SpaceNode, sign: str, choice: str) -> BettiVector:
    """Witten harmonic dimensions of a local model space"""
    if isinstance(space, Manifold):
        return BettiVector(space.betti, choice)
    if isinstance(space, Euclidean):
        values = _delta(0 if sign == '+' else space.dim)
        return BettiVector(_padded(values, space.dim + 1), choice)
    if isinstance(space, Cone):
        dims = cone_harmonic_dims(link_betti(space.link), space.dim, space.u, sign, choice)
        return BettiVector(dims.dims, choice)
    if isinstance(space, Product):
        return BettiVector(kunneth(betti_witten(f, sign, choice).values for f in space.factors), choice)
    raise DomainError("a suspension is not a local model; use the intersection-homology oracle")


def total_nu(points: Sequence[RelCriticalPoint], dim: int, choice: str = 'max',
             perversity: Optional[Perversity] = None, convention: str = 'pbar_max') -> Tuple[int, ...]:
    """Sum of nu over the critical points of one function"""
    total = [0] * (dim + 1)
    for point in points:
        if point.dim != dim:
            raise DomainError(f"critical point of dimension {point.dim} on a space of dimension {dim}")
        nu = nu_local(point, choice) if perversity is None else nu_perversity(point, perversity, convention)
        total = [a + b for a, b in zip(total, nu)]
    return tuple(total)


def morse_inequalities(betti: BettiVector, nu: Sequence[int],
                       points: Optional[List[Tuple[int, ...]]] = None) -> MorseReport:
    """Alternating partial sums of beta against nu for k < n, and the Euler equality"""
    if len(betti.values) != len(nu):
        raise DomainError(f"betti has {len(betti.values)} degrees, nu has {len(nu)}")
    n = betti.dim
    partial = []
    for k in range(n):
        lhs = sum((-1) ** (k - r) * betti.values[r] for r in range(k + 1))
        rhs = sum((-1) ** (k - r) * nu[r] for r in range(k + 1))
        partial.append((k, lhs, rhs))
    euler_nu = sum((-1) ** r * v for r, v in enumerate(nu))
    report = MorseReport(partial, betti.euler, euler_nu, points or [])
    if not report.passed:
        logger.warning(f"⚠️ Morse check failed for {betti.flavor}: beta={betti.values}, nu={tuple(nu)}")
    return report


def euler_invariance(space: SpaceNode, f1_points: Sequence[RelCriticalPoint],
                     f2_points: Sequence[RelCriticalPoint], choice: str = 'max') -> bool:
    """Both functions give the same alternating sum of nu"""
    dim = space.dim
    sums = []
    for points in (f1_points, f2_points):
        nu = total_nu(points, dim, choice)
        sums.append(sum((-1) ** r * v for r, v in enumerate(nu)))
    return sums[0] == sums[1]


def suspension_points(space: Suspension, swap: bool = False) -> List[RelCriticalPoint]:
    """Bottom vertex on the plus side, top vertex on the minus side"""
    if not isinstance(space, Suspension):
        raise DomainError(f"expected a suspension, got {type(space).__name__.lower()}")
    sides = ('-', '+') if swap else ('+', '-')
    return [RelCriticalPoint(0, 0, (ConeFactor(space.link, space.u, side),)) for side in sides]


def _read_count(doc: dict, key: str, location: str) -> int:
    value = doc.get(key, 0)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DocumentError(f"{location}.{key}: expected a non-negative integer, got {value!r}")
    return value


def _load_factor(doc, location: str, named: Optional[Dict[str, SpaceNode]]) -> ConeFactor:
    if not isinstance(doc, dict):
        raise DocumentError(f"{location}: expected an object")
    for key in ('link', 'u', 'side'):
        if key not in doc:
            raise DocumentError(f"{location}: missing key {key!r}")
    link = load_space(doc['link'], f"{location}.link", named)
    side = str(doc['side']).replace('−', '-')
    betti = doc.get('betti')
    if betti is not None and not (isinstance(betti, list) and all(isinstance(b, int) for b in betti)):
        raise DocumentError(f"{location}.betti: expected a list of integers")
    try:
        return ConeFactor(link, require_rational(doc['u'], 'u'), side,
                          tuple(betti) if betti is not None else None)
    except (DomainError, TypeError) as e:
        raise DocumentError(f"{location}: {e}") from e


def load_points(doc, location: str = '$.points',
                named: Optional[Dict[str, SpaceNode]] = None) -> List[RelCriticalPoint]:
    """Critical-point document to RelCriticalPoints"""
    if not isinstance(doc, list):
        raise DocumentError(f"{location}: expected a list of critical points")
    points = []
    for i, entry in enumerate(doc):
        where = f"{location}[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        factors = entry.get('factors', [])
        if not isinstance(factors, list):
            raise DocumentError(f"{where}.factors: expected a list")
        points.append(RelCriticalPoint(
            _read_count(entry, 'm_plus', where),
            _read_count(entry, 'm_minus', where),
            tuple(_load_factor(f, f"{where}.factors[{j}]", named) for j, f in enumerate(factors))))
    return points
