#!/usr/bin/env python3
"""
Intersection Homology Oracle
============================

Intersection-homology Betti numbers of compact pseudomanifolds built from
closed manifolds by suspensions, cones and products, from the cone formula:
for an n-dimensional cone over L the groups of L survive below the cut
c = n - 1 - p_n and vanish from c on. A suspension glues two such cones
along L x R, giving

    IH_i(Sigma L) = IH_i(L)      i < c
                  = 0            i = c
                  = IH_{i-1}(L)  i > c

This module is kept independent of the spectral and Morse code; it only
reads space descriptions.

Usage: used by the acceptance suite and the CLI morse command.
"""

import logging
from typing import Sequence, Tuple

from numerics import DomainError
from stratified_spaces import Cone, Euclidean, Manifold, Perversity, Product, SpaceNode, Suspension

logger = logging.getLogger(__name__)


class OracleRefusal(DomainError):
    """Input outside the spaces the oracle can handle"""


def _convolve(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _singular(node: SpaceNode) -> bool:
    if isinstance(node, (Cone, Suspension)):
        return True
    if isinstance(node, Product):
        return any(_singular(f) for f in node.factors)
    return False


def _cut(node, p: Perversity) -> int:
    if node.link.dim == 0:
        raise OracleRefusal("links of dimension 0 give codimension-one strata; not a pseudomanifold")
    n = node.dim
    return n - 1 - p.at(n)


def ih_betti(space: SpaceNode, p: Perversity) -> Tuple[int, ...]:
    """Betti numbers I^pH_i, i = 0..dim"""
    if isinstance(space, Manifold):
        return space.betti
    if isinstance(space, Euclidean):
        return (1,) + (0,) * space.dim
    if isinstance(space, Suspension):
        c = _cut(space, p)
        link = ih_betti(space.link, p)
        return tuple(link[i] if i < c else (0 if i == c else link[i - 1]) for i in range(space.dim + 1))
    if isinstance(space, Cone):
        c = _cut(space, p)
        link = ih_betti(space.link, p)
        return tuple(link[i] if i < c else 0 for i in range(space.dim + 1))
    if isinstance(space, Product):
        if sum(_singular(f) for f in space.factors) > 1:
            raise OracleRefusal("products with more than one singular factor are not handled")
        result: Tuple[int, ...] = (1,)
        for factor in space.factors:
            result = _convolve(result, ih_betti(factor, p))
        return result
    raise OracleRefusal(f"unsupported space node {type(space).__name__}")
