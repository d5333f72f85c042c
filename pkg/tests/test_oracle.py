import pytest

from qmat.exceptions import AlgebraError, CapExceededError
from qmat.oracle import (
    OracleCaps,
    build_theta_matrix,
    expand_plan,
    kernel_equals_i1,
    run_entry,
    run_plan,
    verify_centrality,
    verify_coinvariants,
    verify_confluence,
    verify_domain,
    verify_commutation,
    verify_iso,
    verify_pbw,
    verify_s_basis,
    verify_specialization,
)


@pytest.mark.parametrize(
    "m, n, d, rank",
    [(2, 2, 1, 4), (2, 2, 2, 9), (2, 2, 3, 16), (2, 3, 2, 18), (1, 3, 3, 10)],
)
def test_theta_ranks(m, n, d, rank):
    theta_map = build_theta_matrix(m, n, d)
    assert theta_map.rank() == rank
    assert theta_map.shape[1] == len(theta_map.source_basis)


@pytest.mark.parametrize(
    "m, n, d, kernel", [(2, 2, 1, 0), (2, 2, 2, 1), (2, 2, 3, 4), (1, 3, 3, 0)]
)
def test_kernel_is_i1(m, n, d, kernel):
    report = kernel_equals_i1(m, n, d)
    assert report.passed
    assert report.expected == report.got == kernel
    assert report.details["contained"]


def test_kernel_in_three_by_three():
    report = kernel_equals_i1(3, 3, 2)
    assert report.passed
    assert report.expected == 45 - 36


@pytest.mark.parametrize("m, n, d", [(2, 2, 3), (2, 3, 2), (3, 2, 2)])
def test_s_basis_check(m, n, d):
    assert verify_s_basis(m, n, d).passed


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_coinvariants_on_the_diagonal(d):
    report = verify_coinvariants(2, 2, d)
    assert report.passed
    assert report.details["bidegree"] == [d, d]


def test_coinvariants_off_the_diagonal():
    report = verify_coinvariants(2, 2, 2, bidegree=(1, 2))
    assert report.passed
    assert report.got == report.expected == 0


@pytest.mark.parametrize("d", [0, 2, 3])
def test_pbw(d):
    assert verify_pbw(2, 2, d).passed


def test_confluence():
    report = verify_confluence(3, 3, samples=50, max_length=5, seed=1)
    assert report.passed
    assert report.got == 50


@pytest.mark.parametrize("n", [1, 2, 3])
def test_centrality(n):
    assert verify_centrality(n).passed


def test_domain():
    assert verify_domain(2, 2, samples=25, max_degree=2, seed=4).passed


def test_commutation():
    report = verify_commutation(2, 3)
    assert report.passed
    assert report.check == "lemma33"
    assert report.expected == 36


def test_iso():
    report = verify_iso(2, 2)
    assert report.passed
    assert report.expected == 9


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_specialization(seed):
    report = verify_specialization(2, 2, 2, seed=seed)
    assert report.passed
    assert report.got == 9


def test_caps():
    caps = OracleCaps(max_m=2, max_n=2, max_degree=2)
    with pytest.raises(CapExceededError):
        build_theta_matrix(3, 2, 1, caps)
    with pytest.raises(CapExceededError):
        verify_pbw(2, 2, 3, caps)
    with pytest.raises(AlgebraError):
        build_theta_matrix(2, 2, -1)


def test_expand_plan():
    plan = expand_plan(
        {
            "checks": [
                {"check": "s-basis", "m": [1, 2], "n": 2, "d": [1, 2]},
                {"check": "coinv", "m": 2, "n": 2, "d": 2, "bidegree": [1, 2]},
            ]
        }
    )
    assert len(plan) == 5
    assert plan[0] == {"check": "s-basis", "m": 1, "n": 2, "d": 1}
    assert plan[-1]["bidegree"] == [1, 2]


@pytest.mark.parametrize(
    "manifest", [{}, {"checks": [{"check": "nope"}]}, {"checks": "pbw"}]
)
def test_expand_plan_rejects_bad_manifests(manifest):
    with pytest.raises(AlgebraError):
        expand_plan(manifest)


def test_run_entry():
    report = run_entry(
        {"check": "coinv", "m": 2, "n": 2, "d": 2, "bidegree": [2, 1]}
    )
    assert report.passed
    assert report.to_json()["pass"] is True
    report = run_entry({"check": "centrality", "m": 2, "n": 2})
    assert report.passed


def test_run_plan_keeps_order():
    plan = [
        {"check": "s-basis", "m": 2, "n": 2, "d": 2},
        {"check": "pbw", "m": 2, "n": 2, "d": 1},
        {"check": "commutation", "m": 2, "n": 2},
    ]
    reports = run_plan(plan, jobs=1)
    assert [r.check for r in reports] == ["s-basis", "pbw", "lemma33"]
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("m, n, kernel", [(2, 2, 10), (2, 3, 51)])
def test_kernel_is_i1_in_degree_four(m, n, kernel):
    report = kernel_equals_i1(m, n, 4)
    assert report.passed
    assert report.expected == report.got == kernel


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3)])
def test_s_basis_check_in_degree_four(m, n):
    assert verify_s_basis(m, n, 4).passed


@pytest.mark.slow
def test_confluence_at_full_scale():
    report = verify_confluence(3, 3, samples=1000, max_length=6, seed=1997)
    assert report.passed
    assert report.got == 1000


def test_run_plan_is_the_same_on_several_workers():
    plan = expand_plan(
        {
            "checks": [
                {"check": "theta-kernel", "m": [1, 2], "n": 2, "d": [1, 2]},
                {"check": "lemma33", "m": 2, "n": 2},
                {"check": "centrality", "n": 2},
            ]
        }
    )
    serial = [r.to_json() for r in run_plan(plan, jobs=1)]
    parallel = [r.to_json() for r in run_plan(plan, jobs=2)]
    assert parallel == serial
    assert [r["check"] for r in serial][-2:] == ["lemma33", "centrality"]
