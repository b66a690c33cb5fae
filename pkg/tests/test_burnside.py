from fractions import Fraction as F

import pytest

from oracles import all_subgroups, is_normal, m_constant as oracle_m, mobius_by_chains
from sliceburnside.burnside import (
    BurnsideElement,
    beta,
    deflate_burnside,
    idempotent_e,
    is_b_group,
    m_constant,
)
from sliceburnside.expr import build_group
from sliceburnside.groups import NotNormalError, are_isomorphic, builtin, normalizer, quotient_group
from sliceburnside.lattice import enumerate_subgroups


def basis(G, H):
    return BurnsideElement.basis(G, H)


def test_e_trivial():
    G = builtin("C1")
    assert idempotent_e(G, G.whole) == basis(G, G.whole)


def test_e_c2():
    G = builtin("C2")
    assert idempotent_e(G, G.whole) == basis(G, G.whole) - F(1, 2) * basis(G, G.trivial)


def test_e_c4():
    G = builtin("C4")
    C2 = enumerate_subgroups(G)[1]
    e = idempotent_e(G, G.whole)
    assert e == basis(G, G.whole) - F(1, 2) * basis(G, C2)
    assert e[0] == 0


def test_deflate_basis_elements():
    G = builtin("C4")
    C2 = enumerate_subgroups(G)[1]
    Q, _ = quotient_group(G, C2)
    assert deflate_burnside(basis(G, G.whole), C2) == basis(Q, Q.whole)
    assert deflate_burnside(basis(G, C2), C2) == basis(Q, Q.trivial)


def test_deflate_e_c4():
    G = builtin("C4")
    C2 = enumerate_subgroups(G)[1]
    Q, _ = quotient_group(G, C2)
    d = deflate_burnside(idempotent_e(G, G.whole), C2)
    assert d == basis(Q, Q.whole) - F(1, 2) * basis(Q, Q.trivial)
    assert d == idempotent_e(Q, Q.whole)


def test_deflate_needs_normal():
    G = builtin("S3")
    with pytest.raises(NotNormalError):
        deflate_burnside(idempotent_e(G, G.whole), enumerate_subgroups(G)[1])


def test_m_examples():
    C2 = builtin("C2")
    assert m_constant(C2, C2.trivial) == 1
    assert m_constant(C2, C2.whole) == F(1, 2)
    V = build_group("C2 x C2")
    assert all(m_constant(V, N) == 0 for N in enumerate_subgroups(V) if not N.is_trivial())


def test_m_needs_normal():
    G = builtin("S3")
    with pytest.raises(NotNormalError):
        m_constant(G, enumerate_subgroups(G)[1])


@pytest.mark.parametrize("text", ["C4", "S3", "D8", "Q8", "C6", "A4", "C2 x C2 x C2"])
def test_m_matches_oracle(text):
    G = build_group(text)
    subs = all_subgroups(G.mul)
    mu = mobius_by_chains(subs)
    for N in enumerate_subgroups(G).normal_subgroups():
        assert is_normal(G.mul, G.inv, frozenset(N.members))
        assert m_constant(G, N) == oracle_m(G.mul, subs, mu, frozenset(N.members))


def test_b_groups():
    assert is_b_group(builtin("C1"))
    cert = is_b_group(build_group("C2 x C2"))
    assert cert.holds and len(cert.table) == 4 and all(m == 0 for _, m in cert.table)
    c2 = is_b_group(builtin("C2"))
    assert not c2 and c2.table[0][1] == F(1, 2)


def test_beta():
    V = build_group("C2 x C2")
    Q, N = beta(V)
    assert N.is_trivial() and are_isomorphic(Q, V) is not None
    Q, N = beta(builtin("C2"))
    assert Q.order == 1
    Q, N = beta(builtin("C1"))
    assert Q.order == 1


@pytest.mark.parametrize("text", ["C2", "C4", "C6", "S3", "D8", "Q8", "A4", "D12", "C2 x D8", "S4"])
def test_properties(text):
    G = build_group(text)
    lat = enumerate_subgroups(G)
    assert m_constant(G, G.trivial) == 1
    total = BurnsideElement(G)
    for c in range(len(lat.classes)):
        H = lat[lat.representative(c)]
        e = idempotent_e(G, H)
        assert all(normalizer(G, H).order % v.denominator == 0 for v in e.coeffs.values())
        total = total + e
    assert total == basis(G, G.whole)
    for N in lat.normal_subgroups():
        Q, _ = quotient_group(G, N)
        assert deflate_burnside(idempotent_e(G, G.whole), N) == m_constant(G, N) * idempotent_e(Q, Q.whole)
    Q, _ = beta(G)
    assert is_b_group(Q)
