#!/usr/bin/env python3
"""
Tests for space descriptions, goodness, perversities and exponent ranges.
"""

import sys
from fractions import Fraction as F

import pytest

from numerics import DomainError
from stratified_spaces import (Cone, DocumentError, Euclidean, Manifold, Perversity, PerversityError, Product,
                               RationalInterval, Suspension, admissible_perversities, associated_range,
                               builtin, complement, dump_space, general_type, good_associated_range,
                               goodness_condition, is_good, load_space, perversity_from_document, sphere,
                               standard_perversities, torus)


def test_builtins():
    assert builtin('T3').betti == (1, 3, 3, 1)
    assert sphere(0).betti == (2,)
    assert builtin('S2') == Manifold(2, (1, 0, 1))
    assert builtin('point').dim == 0
    with pytest.raises(DomainError):
        builtin('K3')


def test_node_validation():
    with pytest.raises(DomainError):
        Manifold(2, (1, 0))
    with pytest.raises(TypeError):
        Cone(sphere(1), 0.5)
    with pytest.raises(DomainError):
        Cone(Euclidean(2), F(1))
    with pytest.raises(DomainError):
        Suspension(sphere(1), F(3, 2))
    assert Suspension(torus(2), F(1)).compact
    assert not Cone(torus(2), F(1)).compact


@pytest.mark.parametrize("k, u, expected", [
    (3, F(1, 2), True),
    (2, F(1, 2), False),
    (2, F(1), True),
    (4, F(1, 3), True),
    (4, F(1, 2), False),
    (3, F(1, 4), True),
    (3, F(3, 2), False),
])
def test_goodness_condition(k, u, expected):
    assert goodness_condition(k, u) is expected


def test_is_good_names_cone_paths():
    assert is_good(Cone(sphere(2), F(1, 2))).good
    space = Product((Cone(sphere(1), F(1, 2)), Euclidean(1)))
    report = is_good(space)
    assert not report.good
    assert report.diagnostics[0].startswith('$.factors[0]')
    assert general_type(space) == {'$.factors[0]': F(1, 2)}


def test_perversity_validation():
    with pytest.raises(PerversityError):
        Perversity(())
    with pytest.raises(PerversityError):
        Perversity((1,))
    with pytest.raises(PerversityError):
        Perversity((0, 2))
    p = Perversity((0, 1, 1))
    assert p.n == 4 and p.at(3) == 1
    with pytest.raises(DomainError):
        p.at(5)


def test_standard_perversities():
    standard = standard_perversities(5)
    assert standard['zero'].values == (0, 0, 0, 0)
    assert standard['top'].values == (0, 1, 2, 3)
    assert standard['lower_middle'].values == (0, 0, 1, 1)
    assert standard['upper_middle'].values == (0, 1, 1, 2)
    assert complement(standard['lower_middle']) == standard['upper_middle']


def test_admissible_perversities():
    assert len(admissible_perversities(4)) == 4
    bounded = admissible_perversities(4, upper=standard_perversities(4)['lower_middle'])
    assert [p.values for p in bounded] == [(0, 0, 0), (0, 0, 1)]


def test_associated_ranges():
    zero = Perversity((0, 0, 0, 0))
    assert str(associated_range(zero, 5)) == '[1/4, 1/2)'
    assert str(good_associated_range(zero, 5)) == '[1/4, 1/3)'
    assert str(associated_range(zero, 3)) == '[1/2, inf)'
    assert str(good_associated_range(zero, 3)) == '[1/2, 1]'
    assert str(good_associated_range(Perversity((0, 0, 1)), 4)) == '[1, 1]'
    with pytest.raises(PerversityError):
        associated_range(Perversity((0, 1)), 3)


def test_good_range_members_are_good():
    for p in admissible_perversities(6):
        for k in range(3, 7):
            if 2 * p.at(k) > k - 2:
                continue
            for u in good_associated_range(p, k).sample(4):
                assert goodness_condition(k, u)
                assert u in associated_range(p, k)


def test_rational_interval_sample():
    interval = RationalInterval(F(1, 4), F(1, 3))
    points = interval.sample(5)
    assert len(points) == 5
    assert all(x in interval for x in points)
    assert F(1, 3) not in interval
    assert RationalInterval(F(1), F(1), True, True).sample(3) == [F(1)]


def test_space_document_round_trip():
    space = Product((Cone(Product((sphere(1), sphere(1))), F(1, 3)), Euclidean(2)))
    assert load_space(dump_space(space)) == space
    assert load_space('T3') == torus(3)
    assert load_space('L', named={'L': sphere(2)}) == sphere(2)


@pytest.mark.parametrize("doc, location", [
    ({'kind': 'cone', 'link': {'kind': 'manifold', 'dim': 1, 'betti': [1, 'x']}, 'u': '1/2'}, '$.link.betti[1]'),
    ({'kind': 'cone', 'link': 'S2', 'u': 0.5}, '$.u'),
    ({'kind': 'cone', 'link': 'S2', 'u': '0.5'}, '$.u'),
    ({'kind': 'suspension', 'link': 'Q7', 'u': '1'}, '$.link'),
    ({'kind': 'torus'}, '$.kind'),
    ({'kind': 'product', 'factors': ['S1', {'kind': 'euclidean'}]}, '$.factors[1]'),
])
def test_document_errors_name_location(doc, location):
    with pytest.raises(DocumentError, match=location.replace('[', r'\[').replace(']', r'\]').replace('$', r'\$')):
        load_space(doc)


def test_perversity_documents():
    assert perversity_from_document([0, 1]).values == (0, 1)
    with pytest.raises(DocumentError):
        perversity_from_document([0, 2])
    with pytest.raises(DocumentError):
        perversity_from_document('x')


def main():
    from conftest import run_summary
    return run_summary("Stratified Space Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
