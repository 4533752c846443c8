"""Acceptance gate: every criterion at its full stated scale.

The heavy sweeps run here once (the 10^9 Carmichael sieve takes about three
minutes, the 10^8 base-2 scan about twenty seconds); everything else is
seconds. Each test prints its CheckResult lines so the pytest -v log doubles
as the acceptance report.
"""
import pytest

from carmlab import verify


def _run(results):
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    assert not failed, "\n".join(r.line() for r in failed)


@pytest.mark.slow
def test_criterion_1_carmichael_counts():
    # exact C(x) and per-k columns up to 10^9, sieve vs constructive at 10^7
    _run(verify.check_carmichael_counts(level="full", threads=1))


@pytest.mark.slow
def test_criterion_2_psp_counts():
    # exact P_2(x) and two-factor census up to 10^8
    _run(verify.check_psp_counts(level="full", threads=1))


def test_criterion_3_formula_regression():
    _run(verify.check_formula_regression())


def test_criterion_4_constants():
    _run(verify.check_constants(level="full"))


def test_criterion_5_oracle_equivalence():
    _run(verify.check_equivalence(level="full"))


def test_criterion_6_bound_sandwich():
    _run(verify.check_bound_sandwich())


def test_criterion_7_opqbt():
    _run(verify.check_opqbt(level="full"))


def test_criterion_8_extension():
    _run(verify.check_extension())


def test_criterion_9_paper_scale_behavior():
    _run(verify.check_paper_scale())
