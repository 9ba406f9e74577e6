#!/usr/bin/env python3
"""
Tests for the command line: exit codes, report files and morse documents.
"""

import json
import sys
from pathlib import Path

import pytest
from typer.testing import CliRunner

from master_verifier import app, morse_document
from stratified_spaces import DocumentError

DOCUMENTS = Path(__file__).parent / 'documents'

runner = CliRunner()


def _invoke(tmp_path: Path, *args: str):
    return runner.invoke(app, ['--log-file', str(tmp_path / 'lab.log'), *args])


def test_complex1_sign_tables(tmp_path):
    out = tmp_path / 'complex1.json'
    result = _invoke(tmp_path, 'spectra', '--complex1', '--kappa', '0', '--sign', '+',
                     '--format', 'json', '--report', str(out))
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text(encoding='utf-8'))
    assert payload['summary']['failed'] == 0
    assert payload['records'][0]['got'] == {'0': '0', '2': '+', '4': '+', '6': '+', '8': '+'}


def test_operator_spectra(tmp_path):
    result = _invoke(tmp_path, 'spectra', '--kind', 'P', '--sigma', '1', '--u', '1/2', '--xi', '1',
                     '-s', '1,2', '-K', '8')
    assert result.exit_code == 0, result.output


def test_float_input_is_refused(tmp_path):
    result = _invoke(tmp_path, 'spectra', '--sigma', '0.5')
    assert result.exit_code == 2


def test_bad_basis_size_is_a_usage_error(tmp_path):
    result = _invoke(tmp_path, 'spectra', '-K', '2')
    assert result.exit_code == 2


def test_regions_exclusion(tmp_path):
    out = tmp_path / 'regions.csv'
    result = _invoke(tmp_path, 'regions', '--exclusion', '--nmax', '4', '--format', 'csv', '--report', str(out))
    assert result.exit_code == 0, result.output
    assert 'C8 exclusion lemma' in out.read_text(encoding='utf-8')


@pytest.mark.parametrize("name", ['suspension_s2.json', 'suspension_t2_upper.json', 'sphere_s2_height.json'])
def test_shipped_morse_documents(tmp_path, name):
    result = _invoke(tmp_path, 'morse', str(DOCUMENTS / name))
    assert result.exit_code == 0, result.output


def test_morse_document_errors(tmp_path):
    doc = tmp_path / 'cone.json'
    doc.write_text(json.dumps({'space': {'kind': 'suspension', 'link': 'S2', 'u': '1'}}), encoding='utf-8')
    assert _invoke(tmp_path, 'morse', str(doc)).exit_code == 2
    assert _invoke(tmp_path, 'morse', str(tmp_path / 'missing.json')).exit_code == 2


def test_morse_document_report():
    report = morse_document({'space': {'kind': 'suspension', 'link': 'T2', 'u': '1'}, 'perversity': [0, 0]})
    assert report.all_passed
    assert [r.got for r in report.records[:2]] == [(1, 2, 0, 0), (0, 0, 0, 1)]
    with pytest.raises(DocumentError):
        morse_document({'space': 'S2'})
    with pytest.raises(DocumentError):
        morse_document({'space': {'kind': 'suspension', 'link': 'S2', 'u': '1'}, 'perversity': [0, 0, 0]})
    with pytest.raises(DocumentError, match='p_2'):
        morse_document({'space': {'kind': 'suspension', 'link': 'S2', 'u': '1'}, 'perversity': [1, 1]})


def test_verify_single_check(tmp_path):
    out = tmp_path / 'verify.json'
    result = _invoke(tmp_path, 'verify', '--only', 'C8', '--format', 'json', '--report', str(out))
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text(encoding='utf-8'))['summary'] == {'failed': 0, 'passed': 1, 'total': 1}


def test_verify_unknown_check(tmp_path):
    assert _invoke(tmp_path, 'verify', '--only', 'C99').exit_code == 2


def main():
    from conftest import run_summary
    return run_summary("Master Verifier Tests", __file__)


if __name__ == "__main__":
    sys.exit(main())
