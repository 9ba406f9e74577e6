#!/usr/bin/env python3
"""
Shared test helpers: the summary printed when a test file is run directly.
"""

from pathlib import Path
from typing import Dict

import pytest


class _OutcomeCollector:
    def __init__(self):
        self.outcomes: Dict[str, bool] = {}

    def pytest_runtest_logreport(self, report):
        if report.when == 'call' or (report.when == 'setup' and not report.passed):
            self.outcomes[report.nodeid.split('::', 1)[-1]] = report.passed


def run_summary(title: str, path: str) -> int:
    """Run one test file under pytest and print the pass/fail block"""
    print(f"🔧 {title}")
    print("=" * 50)
    collector = _OutcomeCollector()
    pytest.main(['-q', '-p', 'no:cacheprovider', str(Path(path))], plugins=[collector])

    print("\n" + "=" * 50)
    print("📊 TEST SUMMARY")
    print("=" * 50)
    for name, ok in collector.outcomes.items():
        status = "✅ PASS" if ok else "❌ FAIL"
        print(f"{status} - {name}")
    passed = sum(collector.outcomes.values())
    total = len(collector.outcomes)
    print(f"\nOverall: {passed}/{total} tests passed")
    return 0 if total and passed == total else 1
