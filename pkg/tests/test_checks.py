import pytest

from ncomplex.checks import SUITES, case_rng, run_case, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_runs_pass(name):
    r = run_suite(name, seed=7, cases=3)
    assert r.ok, r.to_dict()
    assert r.cases == 3 and r.checks > 0


def test_runs_are_deterministic():
    a = run_case("factorization", 3, 11)
    b = run_case("factorization", 3, 11)
    assert a.instance == b.instance and a.checks == b.checks


def test_shared_families_see_the_same_instances():
    assert SUITES["factorization"].family == SUITES["m-complex"].family
    assert case_rng("ncomplex", 0, 4).random() == case_rng("ncomplex", 0, 4).random()
    assert case_rng("ncomplex", 0, 4).random() != case_rng("ncomplex", 1, 4).random()


def test_single_case_replay():
    r = run_suite("lower-bound", seed=2, cases=50, only_case=17)
    assert r.cases == 1 and r.ok


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("missing")
