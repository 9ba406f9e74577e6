#!/usr/bin/env python3
"""
Stratified Space Descriptions
=============================

Inductive descriptions of the spaces the lab works with (closed manifolds,
cones over compact links, finite products, Euclidean factors of local models
and two-vertex suspensions), their general type (one exponent u per cone
node), the goodness condition on those exponents, perversities, and the
association between perversities and exponent ranges.

Space documents are JSON-shaped trees:

    {"kind": "manifold", "dim": 2, "betti": [1, 2, 1]}
    {"kind": "cone", "link": {...}, "u": "1/2"}
    {"kind": "product", "factors": [{...}, {...}]}
    {"kind": "euclidean", "dim": 3}
    {"kind": "suspension", "link": {...}, "u": "1"}

or one of the built-in names "point", "S<n>", "T<n>".

Usage: imported by morse_homology, ih_oracle and the CLI.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple, Union

from numerics import DomainError, format_rational, parse_rational, require_rational

logger = logging.getLogger(__name__)

KINDS = ('manifold', 'cone', 'product', 'euclidean', 'suspension')
BUILTIN_PATTERN = re.compile(r'^(point|[ST](\d+))$')


class DocumentError(DomainError):
    """Malformed space or critical-point document; the message names the location"""


class PerversityError(DomainError):
    """Sequence violating p_2 = 0 and p_k <= p_{k+1} <= p_k + 1"""


# ---------------------------------------------------------------------------
# Space nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Manifold:
    """Closed manifold with its Betti numbers"""
    dim: int
    betti: Tuple[int, ...]

    def __post_init__(self):
        if self.dim < 0:
            raise DomainError(f"manifold dimension must be non-negative, got {self.dim}")
        if len(self.betti) != self.dim + 1:
            raise DomainError(f"manifold of dimension {self.dim} needs {self.dim + 1} Betti numbers, "
                              f"got {len(self.betti)}")
        if any(b < 0 for b in self.betti):
            raise DomainError(f"Betti numbers must be non-negative: {self.betti}")

    @property
    def compact(self) -> bool:
        return True


@dataclass(frozen=True)
class Cone:
    """Open cone c(L) with metric exponent u on the link"""
    link: 'SpaceNode'
    u: Fraction

    def __post_init__(self):
        _check_link(self.link, 'cone')
        _check_exponent(self.u)

    @property
    def dim(self) -> int:
        return self.link.dim + 1

    @property
    def compact(self) -> bool:
        return False


@dataclass(frozen=True)
class Product:
    factors: Tuple['SpaceNode', ...]

    def __post_init__(self):
        if not self.factors:
            raise DomainError("a product needs at least one factor")

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def compact(self) -> bool:
        return all(f.compact for f in self.factors)


@dataclass(frozen=True)
class Euclidean:
    """The R^m factor of a local model"""
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise DomainError(f"Euclidean dimension must be non-negative, got {self.dim}")

    @property
    def compact(self) -> bool:
        return self.dim == 0


@dataclass(frozen=True)
class Suspension:
    """Two cone points over one link, sharing the exponent u"""
    link: 'SpaceNode'
    u: Fraction

    def __post_init__(self):
        _check_link(self.link, 'suspension')
        _check_exponent(self.u)

    @property
    def dim(self) -> int:
        return self.link.dim + 1

    @property
    def compact(self) -> bool:
        return True


SpaceNode = Union[Manifold, Cone, Product, Euclidean, Suspension]


def _check_link(link, owner: str):
    if not link.compact:
        raise DomainError(f"{owner} link must describe a compact space")


def _check_exponent(u):
    if not isinstance(u, Fraction):
        raise TypeError(f"exponent u must be an exact rational, got {type(u).__name__}")
    if not 0 < u <= 1:
        raise DomainError(f"exponent u must lie in (0, 1], got {u}")


def point() -> Manifold:
    return Manifold(0, (1,))


def sphere(n: int) -> Manifold:
    if n == 0:
        return Manifold(0, (2,))
    return Manifold(n, tuple(1 if r in (0, n) else 0 for r in range(n + 1)))


def torus(n: int) -> Manifold:
    return Manifold(n, tuple(comb(n, r) for r in range(n + 1)))


def builtin(name: str) -> Manifold:
    """point, S<n> or T<n>"""
    match = BUILTIN_PATTERN.match(name.strip())
    if not match:
        raise DomainError(f"unknown built-in space {name!r} (use point, S<n> or T<n>)")
    if match.group(1) == 'point':
        return point()
    n = int(match.group(2))
    return sphere(n) if name.strip()[0] == 'S' else torus(n)


def cone_nodes(node: SpaceNode, path: str = '$') -> Iterator[Tuple[str, Union[Cone, Suspension]]]:
    """Every cone or suspension node with its document path"""
    if isinstance(node, (Cone, Suspension)):
        yield path, node
        yield from cone_nodes(node.link, f"{path}.link")
    elif isinstance(node, Product):
        for i, factor in enumerate(node.factors):
            yield from cone_nodes(factor, f"{path}.factors[{i}]")


def general_type(node: SpaceNode) -> Dict[str, Fraction]:
    """Map from cone-node paths to their exponents"""
    return {path: cone.u for path, cone in cone_nodes(node)}


# ---------------------------------------------------------------------------
# Goodness
# ---------------------------------------------------------------------------

def goodness_condition(k: int, u) -> bool:
    """u <= 1, and 1/u in 2Z + k + (0, 1] whenever 1/k <= u < 1"""
    u = require_rational(u, 'u')
    if not 0 < u <= 1:
        return False
    if Fraction(1, k) <= u < 1:
        residue = (1 / u - k) % 2
        return 0 < residue <= 1
    return True


@dataclass
class GoodnessReport:
    good: bool
    diagnostics: List[str] = field(default_factory=list)


def is_good(node: SpaceNode) -> GoodnessReport:
    """Check the goodness condition at every cone node (k = dim(link) + 1)"""
    diagnostics = []
    good = True
    for path, cone in cone_nodes(node):
        k = cone.link.dim + 1
        ok = goodness_condition(k, cone.u)
        diagnostics.append(f"{path}: k={k}, u={format_rational(cone.u)} {'good' if ok else 'not good'}")
        good = good and ok
    return GoodnessReport(good, diagnostics)


# ---------------------------------------------------------------------------
# Perversities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Perversity:
    """Values (p_2, ..., p_n)"""
    values: Tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise PerversityError("a perversity needs at least p_2")
        if self.values[0] != 0:
            raise PerversityError(f"p_2 must be 0, got {self.values[0]}")
        for k, (a, b) in enumerate(zip(self.values, self.values[1:]), start=2):
            if not a <= b <= a + 1:
                raise PerversityError(f"growth violated between p_{k}={a} and p_{k + 1}={b}")

    @property
    def n(self) -> int:
        return len(self.values) + 1

    def at(self, k: int) -> int:
        if not 2 <= k <= self.n:
            raise DomainError(f"perversity of length n={self.n} has no value at k={k}")
        return self.values[k - 2]

    def __le__(self, other: 'Perversity') -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __str__(self) -> str:
        return '(' + ', '.join(str(v) for v in self.values) + ')'


def standard_perversities(n: int) -> Dict[str, Perversity]:
    """zero, top, lower_middle and upper_middle perversities of length n"""
    if n < 2:
        raise DomainError(f"perversities need n >= 2, got {n}")
    ks = range(2, n + 1)
    return {
        'zero': Perversity(tuple(0 for _ in ks)),
        'top': Perversity(tuple(k - 2 for k in ks)),
        'lower_middle': Perversity(tuple(k // 2 - 1 for k in ks)),
        'upper_middle': Perversity(tuple((k + 1) // 2 - 1 for k in ks)),
    }


def complement(p: Perversity) -> Perversity:
    """q = t - p"""
    return Perversity(tuple(k - 2 - v for k, v in enumerate(p.values, start=2)))


def admissible_perversities(n: int, upper: Optional[Perversity] = None) -> List[Perversity]:
    """All perversities of length n, optionally bounded above"""
    sequences = [(0,)]
    for _ in range(3, n + 1):
        sequences = [seq + (seq[-1] + step,) for seq in sequences for step in (0, 1)]
    result = [Perversity(seq) for seq in sequences]
    if upper is not None:
        result = [p for p in result if p <= upper]
    return result


def perversity_from_document(values, location: str = '$.perversity') -> Perversity:
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise DocumentError(f"{location}: perversity must be a list of integers")
    try:
        return Perversity(tuple(values))
    except PerversityError as e:
        raise DocumentError(f"{location}: {e}") from e


# ---------------------------------------------------------------------------
# Association between perversities and exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    """Interval with exact endpoints; upper=None means +infinity"""
    lower: Fraction
    upper: Optional[Fraction]
    lower_closed: bool = True
    upper_closed: bool = False

    def __contains__(self, value) -> bool:
        x = require_rational(value, 'u')
        above = x >= self.lower if self.lower_closed else x > self.lower
        if self.upper is None:
            return above
        below = x <= self.upper if self.upper_closed else x < self.upper
        return above and below

    def sample(self, count: int) -> List[Fraction]:
        """Up to count evenly spaced rationals inside, keeping both ends when they belong"""
        top = self.upper if self.upper is not None else self.lower + 1
        if top == self.lower:
            return [self.lower] if self.lower_closed and self.upper_closed else []
        candidates = [self.lower + (top - self.lower) * Fraction(i, count) for i in range(count + 1)]
        points = [c for c in candidates if c in self]
        if len(points) > count:
            points = points[:count - 1] + points[-1:]
        return points

    def __str__(self) -> str:
        left = '[' if self.lower_closed else '('
        upper = 'inf' if self.upper is None else format_rational(self.upper)
        right = ']' if self.upper_closed and self.upper is not None else ')'
        return f"{left}{format_rational(self.lower)}, {upper}{right}"


def _twice_value(p: Perversity, k: int) -> int:
    twice = 2 * p.at(k)
    if twice > k - 2:
        raise PerversityError(f"2 p_{k} = {twice} exceeds k - 2 = {k - 2}; no exponent is associated")
    return twice


def associated_range(p: Perversity, k: int) -> RationalInterval:
    """Exponents u_k associated to p at codimension k"""
    twice = _twice_value(p, k)
    if twice == k - 2:
        return RationalInterval(Fraction(1), None)
    upper = None if twice == k - 3 else Fraction(1, k - 3 - twice)
    return RationalInterval(Fraction(1, k - 1 - twice), upper)


def good_associated_range(p: Perversity, k: int) -> RationalInterval:
    """Associated exponents that also satisfy the goodness condition

    When 2 p_k = k - 3 the range is [1/2, 1]: u = 1 is both associated and
    good, so the right end is closed.
    """
    twice = _twice_value(p, k)
    if twice == k - 2:
        return RationalInterval(Fraction(1), Fraction(1), True, True)
    if twice == k - 3:
        return RationalInterval(Fraction(1, 2), Fraction(1), True, True)
    return RationalInterval(Fraction(1, k - 1 - twice), Fraction(1, k - 2 - twice))


# ---------------------------------------------------------------------------
# Document codec
# ---------------------------------------------------------------------------

def _require(doc: dict, key: str, location: str):
    if key not in doc:
        raise DocumentError(f"{location}: missing key {key!r}")
    return doc[key]


def _read_int(value, location: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"{location}: expected an integer, got {value!r}")
    return value


def _read_exponent(value, location: str) -> Fraction:
    try:
        return parse_rational(value)
    except (TypeError, DomainError) as e:
        raise DocumentError(f"{location}: {e}") from e


def load_space(doc, location: str = '$', named: Optional[Dict[str, SpaceNode]] = None) -> SpaceNode:
    """Build a space node from a document, naming the location of any error"""
    named = named or {}
    if isinstance(doc, str):
        if doc in named:
            return named[doc]
        try:
            return builtin(doc)
        except DomainError as e:
            raise DocumentError(f"{location}: {e}") from e
    if not isinstance(doc, dict):
        raise DocumentError(f"{location}: expected an object or a built-in name, got {type(doc).__name__}")
    kind = _require(doc, 'kind', location)
    try:
        if kind == 'manifold':
            dim = _read_int(_require(doc, 'dim', location), f"{location}.dim")
            betti = _require(doc, 'betti', location)
            if not isinstance(betti, list):
                raise DocumentError(f"{location}.betti: expected a list")
            return Manifold(dim, tuple(_read_int(b, f"{location}.betti[{i}]") for i, b in enumerate(betti)))
        if kind in ('cone', 'suspension'):
            link = load_space(_require(doc, 'link', location), f"{location}.link", named)
            u = _read_exponent(_require(doc, 'u', location), f"{location}.u")
            return Cone(link, u) if kind == 'cone' else Suspension(link, u)
        if kind == 'product':
            factors = _require(doc, 'factors', location)
            if not isinstance(factors, list):
                raise DocumentError(f"{location}.factors: expected a list")
            return Product(tuple(load_space(f, f"{location}.factors[{i}]", named)
                                 for i, f in enumerate(factors)))
        if kind == 'euclidean':
            return Euclidean(_read_int(_require(doc, 'dim', location), f"{location}.dim"))
    except DocumentError:
        raise
    except (DomainError, TypeError) as e:
        raise DocumentError(f"{location}: {e}") from e
    raise DocumentError(f"{location}.kind: unknown kind {kind!r} (expected one of {KINDS})")


def dump_space(node: SpaceNode) -> dict:
    if isinstance(node, Manifold):
        return {'kind': 'manifold', 'dim': node.dim, 'betti': list(node.betti)}
    if isinstance(node, Cone):
        return {'kind': 'cone', 'link': dump_space(node.link), 'u': format_rational(node.u)}
    if isinstance(node, Suspension):
        return {'kind': 'suspension', 'link': dump_space(node.link), 'u': format_rational(node.u)}
    if isinstance(node, Product):
        return {'kind': 'product', 'factors': [dump_space(f) for f in node.factors]}
    return {'kind': 'euclidean', 'dim': node.dim}
