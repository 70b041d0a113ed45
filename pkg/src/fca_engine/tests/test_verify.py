import asyncio

from fca_engine.errors import ensure
from fca_engine.models import LawStatus
from fca_engine.verify import LAWS, Case, Law, LawSkipped, _run_law, make_cases, render_table, verify_suite


def test_law_names_are_unique():
    names = [rule.name for rule in LAWS]
    assert len(names) == len(set(names))
    assert len(names) >= 20


def test_k1_passes_every_law(k1):
    report = asyncio.run(verify_suite(k1, seed=0, source="K1"))
    assert report.passed
    assert [r.law for r in report.laws] == [rule.name for rule in LAWS]


def test_empty_context_passes(empty_context):
    assert asyncio.run(verify_suite(empty_context, seed=0)).passed


def test_generated_batch_is_reproducible():
    first = asyncio.run(verify_suite(seed=3, batch_size=4, max_side=3))
    second = asyncio.run(verify_suite(seed=3, batch_size=4, max_side=3))
    assert first == second
    assert first.passed
    assert render_table(first) == render_table(second)


def test_make_cases(k1):
    assert len(make_cases(None, seed=1, batch_size=6, max_side=2)) == 6
    (case,) = make_cases(k1, seed=1, batch_size=6, max_side=2)
    assert case.context is k1


def test_failing_and_skipped_laws(k1):
    cases = [Case(k1, 0, 0)]

    def broken(case):
        ensure(False, "broken", "always fails")

    def skipped(case):
        raise LawSkipped("never applies")

    failed = _run_law(Law("broken", "tests", broken), cases)
    assert failed.status is LawStatus.FAIL
    assert failed.detail == "case 0: always fails"

    skip = _run_law(Law("skipped", "tests", skipped), cases)
    assert skip.status is LawStatus.SKIP
    assert skip.cases == 0


def test_render_table_summary(k1):
    report = asyncio.run(verify_suite(k1, seed=0, source="K1"))
    table = render_table(report)
    assert table.splitlines()[0] == "verify K1 (seed 0)"
    passed = sum(r.status is LawStatus.PASS for r in report.laws)
    skipped = sum(r.status is LawStatus.SKIP for r in report.laws)
    assert table.splitlines()[-1] == f"{passed} passed, 0 failed, {skipped} skipped"
