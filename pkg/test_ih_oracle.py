#!/usr/bin/env python3
"""
Tests for the intersection-homology oracle on suspensions, cones and products.
"""

import sys
from fractions import Fraction as F

import pytest

from ih_oracle import OracleRefusal, ih_betti
from stratified_spaces import (Cone, Euclidean, Perversity, Product, Suspension, complement, point, sphere,
                               standard_perversities, torus)


def test_smooth_pieces():
    assert ih_betti(torus(2), Perversity((0,))) == (1, 2, 1)
    assert ih_betti(Euclidean(2), Perversity((0,))) == (1, 0, 0)


@pytest.mark.parametrize("space, p, expected", [
    (Suspension(sphere(2), F(1)), Perversity((0, 0)), (1, 0, 0, 1)),
    (Suspension(torus(2), F(1)), Perversity((0, 0)), (1, 2, 0, 1)),
    (Suspension(torus(2), F(1)), Perversity((0, 1)), (1, 0, 2, 1)),
    (Suspension(torus(3), F(1)), Perversity((0, 0, 1)), (1, 3, 0, 3, 1)),
])
def test_suspensions(space, p, expected):
    assert ih_betti(space, p) == expected


@pytest.mark.parametrize("link", [sphere(2), torus(2), torus(3), Product((sphere(1), sphere(2)))])
def test_complementary_perversities_are_dual(link):
    space = Suspension(link, F(1))
    for p in standard_perversities(space.dim).values():
        assert ih_betti(space, complement(p)) == tuple(reversed(ih_betti(space, p)))


def test_cone_truncates_at_cut():
    assert ih_betti(Cone(sphere(2), F(1, 2)), Perversity((0, 0))) == (1, 0, 0, 0)
    assert ih_betti(Cone(torus(2), F(1)), Perversity((0, 1))) == (1, 0, 0, 0)


def test_product_with_one_singular_factor():
    space = Product((sphere(1), Suspension(sphere(2), F(1))))
    assert ih_betti(space, Perversity((0, 0, 0))) == (1, 1, 0, 1, 1)


def test_refusals():
    with pytest.raises(OracleRefusal):
        ih_betti(Product((Cone(sphere(1), F(1)), Cone(sphere(1), F(1)))), Perversity((0, 0, 0)))
    with pytest.raises(OracleRefusal):
        ih_betti(Suspension(point(), F(1)), Perversity((0,)))


def main():
    from conftest import run_summary
    return run_summary("Intersection Homology Oracle Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
