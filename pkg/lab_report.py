#!/usr/bin/env python3
"""
Lab Reports and Run Configuration
=================================

Check records, suite reports (JSON, CSV and console tables) and the run
configuration shared by the command line and the acceptance suite.

Environment (read from a .env file when python-dotenv is installed):
    LAB_BASIS_SIZE   default basis size K (40)
    LAB_REPORT_DIR   directory for reports (reports/)
    LAB_LOG_FILE     log file of the command line (master_verifier.log)
    LAB_SEED         seed of the randomized oracles (2024)

Usage: imported by acceptance_suite and master_verifier.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tabulate import tabulate

from numerics import DomainError, parse_rational, rational_range

# Load environment variables from .env file
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv not available, continue with system env vars

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FORMATS = ('table', 'json', 'csv')
DEFAULT_S_GRID = (1.0, 10.0, 100.0, 1000.0)
DEFAULT_SEED = 2024
MIN_BASIS = 8


def _plain(value: Any) -> Any:
    """JSON-ready copy: rationals as "num/den", arrays and tuples as lists"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return float(format(float(value), '.17g'))
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


@dataclass
class CheckRecord:
    id: str
    inputs: Dict[str, Any]
    expected: Any
    got: Any
    passed: bool
    citation: str = ''

    def as_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'inputs': _plain(self.inputs),
            'expected': _plain(self.expected),
            'got': _plain(self.got),
            'pass': bool(self.passed),
            'citation': self.citation,
        }


@dataclass
class Report:
    suite: str
    records: List[CheckRecord] = field(default_factory=list)

    def add(self, id: str, inputs: Dict[str, Any], expected: Any, got: Any, passed: bool,
            citation: str = '') -> bool:
        self.records.append(CheckRecord(id, inputs, expected, got, bool(passed), citation))
        if not passed:
            logger.error(f"❌ {self.suite}/{id}: expected {expected!r}, got {got!r}")
        return bool(passed)

    def extend(self, other: 'Report'):
        self.records.extend(other.records)

    @property
    def passed_count(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed_count(self) -> int:
        return len(self.records) - self.passed_count

    @property
    def all_passed(self) -> bool:
        return self.failed_count == 0

    def summary(self) -> Dict[str, int]:
        return {'total': len(self.records), 'passed': self.passed_count, 'failed': self.failed_count}

    def to_json(self, deterministic: bool = True) -> str:
        payload = {
            'schema': SCHEMA_VERSION,
            'suite': self.suite,
            'summary': self.summary(),
            'records': [r.as_dict() for r in self.records],
        }
        if not deterministic:
            payload['generated_at'] = datetime.now().isoformat()
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for record in self.records:
            row = record.as_dict()
            for key in ('inputs', 'expected', 'got'):
                row[key] = json.dumps(row[key], sort_keys=True, ensure_ascii=False)
            rows.append(row)
        return pd.DataFrame(rows, columns=['id', 'inputs', 'expected', 'got', 'pass', 'citation'])

    def to_table(self, failures_only: bool = False) -> str:
        rows = [(r.id, '✅' if r.passed else '❌', _short(r.expected), _short(r.got), r.citation)
                for r in self.records if r.passed is False or not failures_only]
        table = tabulate(rows, headers=['check', 'pass', 'expected', 'got', 'source'], tablefmt='github')
        return f"{table}\n\n📊 {self.suite}: {self.passed_count}/{len(self.records)} checks passed"


def _short(value: Any, width: int = 48) -> str:
    text = json.dumps(_plain(value), ensure_ascii=False)
    return text if len(text) <= width else text[:width - 3] + '...'


def parse_s_grid(text: str) -> Tuple[float, ...]:
    """'1,10,100' -> (1.0, 10.0, 100.0)"""
    try:
        values = tuple(float(part) for part in text.split(',') if part.strip())
    except ValueError as e:
        raise DomainError(f"--s: not a comma separated list of numbers: {text!r}") from e
    if not values:
        raise DomainError("--s: empty grid")
    return values


def parse_grid(text: str) -> Dict[str, List[Fraction]]:
    """'kappa=-2:2:1/40,u=1/10:9/10:1/10' -> exact inclusive ranges per name"""
    grid = {}
    for part in text.split(','):
        if not part.strip():
            continue
        if '=' not in part:
            raise DomainError(f"--grid: expected name=start:end:step, got {part!r}")
        name, spec = part.split('=', 1)
        pieces = spec.split(':')
        if len(pieces) == 1:
            grid[name.strip()] = [parse_rational(pieces[0])]
        elif len(pieces) == 3:
            start, end, step = (parse_rational(p) for p in pieces)
            grid[name.strip()] = rational_range(start, end, step)
        else:
            raise DomainError(f"--grid: {name.strip()} needs start:end:step, got {spec!r}")
    return grid


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from e


@dataclass
class RunConfig:
    """Settings of one command-line run"""
    subcommand: str
    input_path: Optional[Path] = None
    basis_size: int = 40
    s_grid: Tuple[float, ...] = DEFAULT_S_GRID
    tolerances: Dict[str, float] = field(default_factory=dict)
    output_format: str = 'table'
    report_path: Optional[Path] = None
    report_dir: Path = Path('reports')
    seed: int = DEFAULT_SEED
    only: Tuple[str, ...] = ()
    deterministic: bool = True

    def __post_init__(self):
        if self.basis_size < MIN_BASIS:
            raise DomainError(f"basis_size: K must be at least {MIN_BASIS}, got {self.basis_size}")
        if not self.s_grid or any(s <= 0 for s in self.s_grid):
            raise DomainError(f"s_grid: values must be positive, got {self.s_grid}")
        if any(b <= a for a, b in zip(self.s_grid, self.s_grid[1:])):
            raise DomainError(f"s_grid: values must be strictly ascending, got {self.s_grid}")
        if self.output_format not in FORMATS:
            raise DomainError(f"output_format: expected one of {FORMATS}, got {self.output_format!r}")

    @classmethod
    def from_env(cls, subcommand: str, **overrides) -> 'RunConfig':
        """Defaults from LAB_* environment variables, then explicit overrides"""
        settings = {
            'basis_size': _env_int('LAB_BASIS_SIZE', 40),
            'report_dir': Path(os.getenv('LAB_REPORT_DIR', 'reports')),
            'seed': _env_int('LAB_SEED', DEFAULT_SEED),
        }
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(subcommand=subcommand, **settings)

    def tolerance(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)


def save_report(report: Report, config: RunConfig) -> Optional[Path]:
    """Write the report as JSON or CSV; table output goes to the console only"""
    if config.output_format == 'table':
        print(report.to_table())
        if config.report_path is None:
            return None
    path = config.report_path
    suffix = '.csv' if config.output_format == 'csv' else '.json'
    if path is None:
        path = config.report_dir / f"{report.suite}_report{suffix}"
    path.parent.mkdir(parents=True, exist_ok=True)
    if config.output_format == 'csv':
        report.to_frame().to_csv(path, index=False, encoding='utf-8')
        logger.info(f"📊 Saved CSV report: {path}")
    else:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(report.to_json(config.deterministic) + '\n')
        logger.info(f"💾 Saved JSON report: {path}")
    return path
