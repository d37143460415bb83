"""The eight acceptance criteria, each with its runtime budget.

Every test prints one ``criterion N [PASS|FAIL] ...`` line straight to the
terminal, whether or not output capture is on.
"""

import subprocess
import sys
import time

import pytest

from partalg import acceptance


def report(capsys, result, elapsed, budget):
    within = elapsed < budget
    line = result.line() + f" ({elapsed:.2f}s, budget {budget}s{'' if within else ' EXCEEDED'})"
    with capsys.disabled():
        print("\n" + line)
    return within


@pytest.mark.parametrize(
    "runner,budget",
    [
        (acceptance.worked_examples, 1),
        (acceptance.dimension_audits, 30),
        (acceptance.idempotent_laws, 10),
        (acceptance.lemma_certificates, 300),
        (acceptance.foulkes_splits, 30),
        (acceptance.route_agreement, 600),
        (acceptance.negative_controls, 10),
    ],
    ids=lambda x: getattr(x, "__name__", str(x)),
)
def test_criterion(runner, budget, capsys):
    start = time.perf_counter()
    result = runner()
    elapsed = time.perf_counter() - start
    within = report(capsys, result, elapsed, budget)
    assert result.passed, result.detail
    assert within, f"{runner.__name__} took {elapsed:.1f}s"


def test_criterion_4_residuals_are_exactly_zero():
    result = acceptance.lemma_certificates()
    assert "max residual=0," in result.detail


def test_criterion_8_selftest_is_byte_identical(capsys):
    cmd = [sys.executable, "-m", "partalg", "selftest", "--seed", "42"]
    start = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    elapsed = time.perf_counter() - start
    same = first.stdout == second.stdout and first.returncode == second.returncode == 0
    result = acceptance.CriterionResult(
        8, "determinism", same, f"two selftest runs, {len(first.stdout)} bytes each, identical={same}"
    )
    report(capsys, result, elapsed, 600)
    assert same
    assert first.stdout.startswith(b"selftest seed=42\n")
