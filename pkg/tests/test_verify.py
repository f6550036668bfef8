import pytest

from metaplectic import verify
from metaplectic.verify import Check, run_check

ALL = [c for checks in verify.SUITES.values() for c in checks]


def test_check_names_unique_and_prefixed():
    names = [c.name for c in ALL]
    assert len(names) == len(set(names))
    assert verify.find_check("delta0.renard").name == "delta0.renard"
    with pytest.raises(KeyError):
        verify.find_check("nope")


@pytest.mark.parametrize("check", ALL, ids=lambda c: c.name)
def test_every_check_passes_a_few_trials(check):
    rep = run_check(check, 3, seed=11)
    assert rep.passed, rep.failures


def test_reports_are_deterministic():
    c = verify.find_check("maslov.cocycle")
    assert run_check(c, 5, 3).to_json() == run_check(c, 5, 3).to_json()


def test_exhaustive_checks_run_once():
    rep = run_check(verify.find_check("hilbert.square-classes"), 50, 0)
    assert rep.trials == 1


def test_crash_becomes_witness():
    def boom(rng):
        raise ZeroDivisionError("x")

    rep = run_check(Check("t.boom", "", boom), 2, 0)
    assert not rep.passed
    assert rep.to_json()["status"] == "fail"
    assert rep.failures[0] == {"trial": 0, "witness": {"error": "ZeroDivisionError: x"}}


def test_failing_witness_is_reported():
    rep = run_check(Check("t.odd", "", lambda rng: {"r": 1} if rng.random() < 2 else None), 3, 0)
    assert [f["trial"] for f in rep.failures] == [0, 1, 2]


def test_run_suites_covers_suite():
    reps = verify.run_suites(["hilbert"], 2, 0)
    assert [r.name for r in reps] == [c.name for c in verify.SUITES["hilbert"]]
