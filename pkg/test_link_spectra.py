#!/usr/bin/env python3
"""
Tests for the built-in link spectral data.
"""

import sys

import pytest

from link_spectra import LinkSpectralData, circle_link, link_by_name, point_link, sphere2_link, torus2_link
from numerics import DomainError


def test_point_link():
    link = point_link()
    assert link.harmonic == (1,) and link.pair_count == 0


def test_circle_pairs():
    link = circle_link(cutoff=2)
    assert link.harmonic == (1, 1)
    assert link.pairs == ((1, 1.0, 2), (1, 2.0, 2))
    assert link.pair_count == 4


def test_sphere2_multiplicities():
    link = sphere2_link()
    assert link.harmonic == (1, 0, 1)
    assert link.pair_count == 70
    assert all(mu <= 6.0 for _, mu, _ in link.pairs)


def test_torus2_lattice_norms():
    link = torus2_link(cutoff=1)
    assert link.pairs == ((1, 1.0, 4), (2, 1.0, 4))
    assert torus2_link(cutoff=2).pairs[2] == (1, pytest.approx(2 ** 0.5), 4)


def test_link_by_name():
    assert link_by_name('T2').harmonic == (1, 2, 1)
    with pytest.raises(DomainError):
        link_by_name('K3')


def test_validation():
    with pytest.raises(DomainError):
        LinkSpectralData('bad', 1, (1,), ())
    with pytest.raises(DomainError):
        LinkSpectralData('bad', 1, (1, 1), ((0, 1.0, 1),))
    with pytest.raises(DomainError):
        LinkSpectralData('bad', 1, (1, 1), ((1, 0.0, 1),))


def main():
    from conftest import run_summary
    return run_summary("Link Spectra Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
