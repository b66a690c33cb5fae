import pytest

from sliceburnside.groups import GroupError, builtin, direct_product
from sliceburnside.lattice import enumerate_subgroups
from sliceburnside.verify import (
    DEFAULT_CATALOG,
    GROUP_CHECKS,
    CheckReport,
    c2_x_d8_setup,
    check_crapo,
    check_crapo_all,
    check_deflation_identities,
    check_mcirc_expansion,
    check_mcirc_factorization,
    check_tau_circ,
    no_universal_t_quotient,
    run_all,
)


def _sub(G, order):
    return next(H for H in enumerate_subgroups(G) if H.order == order)


@pytest.mark.parametrize("which", ["trivial", "whole"])
def test_crapo_degenerate_m(which):
    G = builtin("D8")
    M = G.trivial if which == "trivial" else G.whole
    r = check_crapo(G, M)
    assert r.passed and r.instances == 10


def test_crapo_s3_a3():
    G = builtin("S3")
    r = check_crapo(G, _sub(G, 3))
    assert r.passed and r.instances == 6


def test_injected_mu_sign_error_is_caught():
    G = builtin("S3")
    lat = enumerate_subgroups(G)
    assert lat.mu(0, lat.top) == 3
    lat.mobius_row(0)[lat.top] = -3
    try:
        r = check_crapo_all(G)
        assert not r.passed
        bad = r.failures[0]
        assert bad["inputs"]["X"] == "#1" and bad["lhs"] == "-3"
    finally:
        lat.mobius_row(0)[lat.top] = 3


def test_mcirc_expansion_c4():
    G = builtin("C4")
    C2 = _sub(G, 2)
    r = check_mcirc_expansion(G, C2, C2, C2)
    assert r.passed and r.instances == 1


@pytest.mark.parametrize("name", ["C4", "S3", "D8"])
def test_mcirc_expansion_trivial_kernels(name):
    G = builtin(name)
    for S in enumerate_subgroups(G):
        assert check_mcirc_expansion(G, S, G.trivial, G.whole).passed
        assert check_mcirc_expansion(G, S, G.whole, G.trivial).passed


def test_mcirc_factorization_c4():
    G = builtin("C4")
    r = check_mcirc_factorization(G, G.trivial, _sub(G, 2), G.whole)
    assert r.passed


def test_mcirc_factorization_needs_m_below_n():
    G = direct_product(builtin("C2"), builtin("C2"))
    a, b = [H for H in enumerate_subgroups(G) if H.order == 2][:2]
    with pytest.raises(GroupError):
        check_mcirc_factorization(G, G.trivial, a, b)


@pytest.mark.parametrize("name", ["C1", "C4"])
def test_tau_circ_check_small(name):
    r = check_tau_circ(builtin(name))
    assert r.passed and r.instances > 0


def test_tau_circ_check_c2_x_d8():
    x = c2_x_d8_setup()
    r = check_tau_circ(x.G)
    assert r.passed


def test_deflation_check_c4():
    assert check_deflation_identities(builtin("C4")).passed


def test_counterexample_report():
    r = no_universal_t_quotient()
    assert r.passed
    assert len(r.claims) == 11
    assert all(actual == expected for _, actual, expected in r.claims)


def test_run_all_empty_catalog():
    s = run_all([], include_counterexample=False)
    assert s.passed and s.reports == []


def test_run_all_over_cap_skips():
    s = run_all(["C2", "S5", "C3"], checks=["crapo"], include_counterexample=False)
    assert [(r.name, r.subject) for r in s.reports] == [("crapo", "C2"), ("build", "S5"), ("crapo", "C3")]
    assert s.reports[1].skipped and "cap" in s.reports[1].skipped
    assert s.passed


def test_run_all_is_deterministic():
    cat = ["C4", "S3", "C2 x C2"]
    a = run_all(cat).to_dict()
    b = run_all(cat).to_dict()
    assert a == b
    assert [r["check"] for r in a["reports"]][: len(GROUP_CHECKS)] == list(GROUP_CHECKS)


def test_check_selection():
    s = run_all(["C6"], checks=["beta", "c2_x_d8"])
    assert [r.name for r in s.reports] == ["beta", "c2_x_d8"]


def test_report_serialization():
    r = CheckReport("x", "G")
    r.record(False, {"G": "C2"}, 1, 2)
    d = r.to_dict()
    assert d["passed"] is False and d["failures"] == [{"inputs": {"G": "C2"}, "lhs": "1", "rhs": "2"}]


def test_default_catalog_contents():
    assert len(DEFAULT_CATALOG) == 21 and "C2 x D8" in DEFAULT_CATALOG
