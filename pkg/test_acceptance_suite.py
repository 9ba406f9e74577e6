#!/usr/bin/env python3
"""
Tests for the acceptance suite on reduced grids.
"""

import sys
from fractions import Fraction as F

import numpy as np
import pytest

from acceptance_suite import (GROUPS, AcceptanceSuite, _unit_fractions, perversity_with,
                              random_critical_point)
from lab_report import RunConfig
from stratified_spaces import goodness_condition, sphere, torus


@pytest.fixture
def suite():
    return AcceptanceSuite(RunConfig('verify', seed=3))


def test_unit_fractions():
    assert _unit_fractions(3) == [F(1, 3), F(1, 2), F(2, 3)]


def test_perversity_with():
    assert perversity_with(6, 2).values == (0, 1, 2, 2, 2)
    assert perversity_with(4, 0).values == (0, 0, 0)


def test_random_critical_points_use_good_exponents():
    rng = np.random.default_rng(11)
    for _ in range(20):
        point = random_critical_point(rng)
        assert all(goodness_condition(f.k, f.u) for f in point.factors)


def test_exact_spectra_and_orthonormality(suite):
    assert suite.check_exact_spectra(grid=(F(0), F(1, 2)), scales=(1.0,), K=6)
    assert suite.check_orthonormality(grid=(F(0), F(1)), K=10)
    assert suite.report.all_passed


def test_positivity_of_assigned_realizations(suite):
    assert suite.check_positivity(kappas=(F(1),), us=(F(1, 2),), mus=(1.0,), scales=(1.0,), K=20)
    assert {r.inputs['tag'] for r in suite.report.records} == {'P1', 'W11', 'Q1'}


def test_even_odd_on_reduced_grid(suite):
    assert suite.check_even_odd(kappas=(F(0), F(1, 4), F(1, 2), F(9, 10)), us=(F(1, 2), F(9, 10)),
                                mus=(1.0,), scales=(1.0,), K=60)
    records = suite.report.records
    assert len([r for r in records if r.inputs['choice'] == 'max']) == 16
    assert {r.inputs['sign'] for r in records} == {'+', '-'}
    assert any(r.inputs['odd'] == 'W11' for r in records)
    assert suite.report.all_passed


def test_regions_and_exclusion(suite):
    assert suite.check_regions(kappas=[F(i, 10) for i in range(-10, 11)], us=[F(3, 10), F(1, 2)])
    assert suite.check_exclusion(n_max=5, max_denominator=12)


def test_morse_checks(suite):
    assert suite.check_nu_kunneth(count=20)
    assert suite.check_perversity_nu(k_max=6, samples=3)
    assert suite.check_association(k_max=6, max_denominator=12)
    assert suite.check_suspensions(spaces={'Sigma S2': sphere(2), 'Sigma T2': torus(2)})


def test_hilbert_oracle(suite):
    assert suite.check_hilbert_oracle(count=5)
    assert [r.inputs['seed'] for r in suite.report.records] == [3, 4, 5, 6, 7]


def test_selection(suite):
    assert suite.selected(['regions', 'C9']) == ['C7', 'C8', 'C9']
    assert len(suite.selected()) == 12
    assert set(GROUPS['spectra']) <= set(suite.checks())
    with pytest.raises(ValueError):
        suite.selected(['C99'])


def test_run_collects_records(suite):
    passed, report = suite.run(['C8'])
    assert passed
    assert [r.id for r in report.records] == ['C8 exclusion lemma']
    assert 'C8' in suite.timings


def test_guard_turns_errors_into_failed_records(suite):
    assert not suite._guarded('CX', lambda: 1 / 0)
    record = suite.report.records[-1]
    assert record.id == 'CX' and not record.passed
    assert 'ZeroDivisionError' in record.got


def main():
    from conftest import run_summary
    return run_summary("Acceptance Suite Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
