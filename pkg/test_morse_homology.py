#!/usr/bin/env python3
"""
Tests for local Morse numbers, Witten harmonic dimensions of local models
and the Morse inequalities.
"""

import sys
from fractions import Fraction as F

import pytest

from morse_homology import (BettiVector, ConeFactor, RelCriticalPoint, betti_witten, euler_invariance, kunneth,
                            link_betti, load_points, model_harmonic_dims, morse_inequalities, nu_local,
                            nu_perversity, suspension_points, total_nu)
from numerics import DomainError
from stratified_spaces import (Cone, DocumentError, Euclidean, Perversity, Product, Suspension, sphere,
                               torus)


def _point(*factors, m_plus=0, m_minus=0):
    return RelCriticalPoint(m_plus, m_minus, tuple(factors))


def test_kunneth_and_link_betti():
    assert kunneth([(1, 1), (1, 1)]) == (1, 2, 1)
    assert link_betti(Product((sphere(1), sphere(1)))) == (1, 2, 1)
    with pytest.raises(DomainError):
        link_betti(Cone(sphere(1), F(1)))


def test_betti_override():
    link = Suspension(sphere(1), F(1))
    assert ConeFactor(link, F(1), '+', betti=(1, 0, 1)).link_betti() == (1, 0, 1)
    with pytest.raises(DomainError):
        ConeFactor(link, F(1), '+').link_betti()
    with pytest.raises(DomainError):
        ConeFactor(Cone(sphere(1), F(1)), F(1), '+')


@pytest.mark.parametrize("side, choice, expected", [
    ('+', 'max', (1, 0, 0)),
    ('-', 'max', (0, 0, 1)),
    ('+', 'min', (1, 0, 0)),
    ('-', 'min', (0, 0, 1)),
])
def test_nu_over_circle(side, choice, expected):
    assert nu_local(_point(ConeFactor(sphere(1), F(1), side)), choice) == expected


@pytest.mark.parametrize("choice", ['max', 'min'])
def test_nu_matches_model_harmonic_dims(choice):
    point = _point(ConeFactor(sphere(2), F(1, 3), '+'), ConeFactor(torus(2), F(1, 2), '-'),
                   m_plus=1, m_minus=1)
    assert nu_local(point, choice) == model_harmonic_dims(point, choice)
    assert len(nu_local(point, choice)) == point.dim + 1


def test_nu_perversity_single_side():
    p = Perversity((0, 0))
    assert nu_perversity(_point(ConeFactor(sphere(2), F(1), '+')), p) == (1, 0, 0, 0)
    assert nu_perversity(_point(ConeFactor(sphere(2), F(1), '-')), p) == (0, 0, 0, 1)


def test_nu_perversity_both_sides():
    point = _point(ConeFactor(sphere(1), F(1), '+'), ConeFactor(sphere(1), F(1), '-'))
    assert nu_perversity(point, Perversity((0, 0, 1))) == nu_local(point, 'max') == (0, 0, 1, 0, 0)
    with pytest.raises(DomainError):
        nu_perversity(point, Perversity((0, 0, 0)))
    with pytest.raises(DomainError):
        nu_perversity(point, Perversity((0, 0, 1)), convention='middle')


def test_betti_witten():
    assert betti_witten(Cone(sphere(1), F(1)), '+', 'max').values == (1, 0, 0)
    assert betti_witten(Euclidean(2), '-', 'max').values == (0, 0, 1)
    assert betti_witten(Product((Cone(sphere(1), F(1)), Euclidean(1))), '+', 'min').values == (1, 0, 0, 0)
    with pytest.raises(DomainError):
        betti_witten(Suspension(sphere(2), F(1)), '+', 'max')


def test_morse_inequalities():
    betti = BettiVector((1, 0, 1), 'max')
    assert morse_inequalities(betti, (1, 0, 1)).passed
    assert morse_inequalities(betti, (1, 1, 2)).passed
    report = morse_inequalities(betti, (1, 0, 0))
    assert report.inequalities_hold and not report.euler_holds
    with pytest.raises(DomainError):
        morse_inequalities(betti, (1, 0))


def test_suspension_of_sphere():
    space = Suspension(sphere(2), F(1))
    points = suspension_points(space)
    assert [p.factors[0].side for p in points] == ['+', '-']
    nu = total_nu(points, 3, perversity=Perversity((0, 0)))
    assert nu == (1, 0, 0, 1)
    assert morse_inequalities(BettiVector((1, 0, 0, 1), 'pbar'), nu).passed
    assert euler_invariance(space, points, suspension_points(space, swap=True))
    with pytest.raises(DomainError):
        total_nu(points, 4)


def test_load_points():
    doc = [{'m_plus': 0, 'm_minus': 0, 'factors': [{'link': 'S2', 'u': '1', 'side': '+'}]}]
    points = load_points(doc)
    assert points[0].dim == 3
    assert points[0].factors[0].link == sphere(2)


@pytest.mark.parametrize("doc, location", [
    ([{'factors': [{'link': 'S2', 'u': '1'}]}], '$.points[0].factors[0]'),
    ([{'factors': [{'link': 'S2', 'u': 1.0, 'side': '+'}]}], '$.points[0].factors[0]'),
    ([{'m_plus': -1}], '$.points[0].m_plus'),
    ({'m_plus': 0}, '$.points'),
])
def test_point_document_errors(doc, location):
    with pytest.raises(DocumentError) as excinfo:
        load_points(doc)
    assert location in str(excinfo.value)


def main():
    from conftest import run_summary
    return run_summary("Morse Homology Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
