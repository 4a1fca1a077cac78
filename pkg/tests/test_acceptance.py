"""Acceptance criteria, one test per check, each at its stated tolerance.

Every check prints one ``[PASS]``/``[FAIL]`` line with measured and expected
values.  Run directly (``python tests/test_acceptance.py``) for the report
alone.
"""
import sys

import pytest

from coherentinfo.verification import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[fn.__name__ for fn in CHECKS])
def test_acceptance(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def test_suite_size():
    assert len(CHECKS) >= 12


if __name__ == "__main__":
    failed = 0
    for fn in CHECKS:
        result = fn()
        failed += not result.passed
        print(result.line())
    sys.exit(1 if failed else 0)
