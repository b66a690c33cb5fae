import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import perm_closure, product_set
from sliceburnside.groups import (
    FiniteGroup,
    GroupError,
    NotNormalError,
    OrderCapError,
    ParentMismatchError,
    Permutation,
    are_isomorphic,
    builtin,
    direct_product,
    group_from_generators,
    image_subgroup,
    normal_subgroups,
    normalizer,
    quotient_group,
    structure_name,
    subgroup_product,
)
from sliceburnside.lattice import enumerate_subgroups
from sliceburnside.verify import c2_x_d8_setup


def P(text, degree=None):
    return Permutation.parse(text, degree)


class TestPermutation:
    def test_parse_and_print(self):
        p = P("(0 1 2 3)(4 5)")
        assert p.images == (1, 2, 3, 0, 5, 4)
        assert str(p) == "(0 1 2 3)(4 5)"
        assert str(P("()", 3)) == "()"

    def test_compose_left_to_right(self):
        p, q = P("(0 1)", 3), P("(1 2)", 3)
        assert (p * q)(0) == q(p(0)) == 2

    @pytest.mark.parametrize("bad", ["(0 0)", "(0 1", "0 1", "(a b)", ""])
    def test_rejects_bad_notation(self, bad):
        with pytest.raises(ValueError):
            P(bad)

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))


class TestConstruction:
    def test_empty_generators_give_trivial_group(self):
        G = group_from_generators([])
        assert G.order == 1

    def test_cyclic_from_4_cycle(self):
        assert group_from_generators([P("(0 1 2 3)")]).order == 4

    def test_dihedral_8_from_generators(self):
        gens = [P("(0 1 2 3)"), P("(0 2)", 4)]
        G = group_from_generators(gens)
        assert G.order == len(perm_closure([g.images for g in gens])) == 8
        assert structure_name(G) == "D8"

    def test_numbering_is_bfs_and_deterministic(self):
        gens = [P("(0 1 2 3)"), P("(0 2)", 4)]
        G1, G2 = group_from_generators(gens), group_from_generators(gens)
        assert G1.mul == G2.mul
        assert G1.element_labels[:3] == ("()", "(0 1 2 3)", "(0 2)")

    def test_degree_mismatch(self):
        with pytest.raises(GroupError):
            group_from_generators([P("(0 1)"), P("(0 1 2)")])

    def test_cap(self):
        with pytest.raises(OrderCapError):
            group_from_generators([P("(0 1)", 5), P("(0 1 2 3 4)")], cap=64)
        assert group_from_generators([P("(0 1)", 5), P("(0 1 2 3 4)")], cap=120).order == 120

    def test_bad_table(self):
        with pytest.raises(GroupError):
            FiniteGroup([[0, 1], [1, 1]])


class TestBuiltin:
    @pytest.mark.parametrize(
        "spec,order",
        [("C 6", 6), ("C1", 1), ("D 8", 8), ("D4", 4), ("D2", 2), ("S 3", 6), ("S4", 24), ("A4", 12),
         ("A 5", 60), ("Q8", 8), ("Q 12", 12), ("E 2^3", 8), ("E3^2", 9)],
    )
    def test_orders(self, spec, order):
        G = builtin(spec)
        assert G.order == order
        assert G.check_axioms() if order <= 24 else True

    def test_d8_generators(self):
        G = builtin("D 8")
        b, c = G.generators
        assert (G.element_order(b), G.element_order(c)) == (2, 4)

    @pytest.mark.parametrize("bad", ["D 7", "Z 3", "Q 6", "E 4^2", "C2^3"])
    def test_rejects(self, bad):
        with pytest.raises(GroupError):
            builtin(bad)

    def test_q8_is_not_d8(self):
        assert are_isomorphic(builtin("Q8"), builtin("D8")) is None
        assert max(builtin("Q8").element_orders) == 4
        assert sorted(builtin("Q8").element_orders).count(2) == 1


class TestDirectProduct:
    def test_c2_x_d8(self):
        G = direct_product(builtin("C2"), builtin("D8"))
        assert G.order == 16
        assert G.check_axioms()

    def test_trivial_factor(self):
        D8 = builtin("D8")
        assert are_isomorphic(direct_product(D8, builtin("C1")), D8) is not None

    def test_klein(self):
        V = direct_product(builtin("C2"), builtin("C2"))
        assert V.order == 4
        assert all(V.element_order(x) == 2 for x in range(1, 4))

    def test_lexicographic_numbering_and_factors(self):
        C2, C3 = builtin("C2"), builtin("C3")
        P6 = direct_product(C2, C3)
        for a in range(2):
            for b in range(3):
                for c in range(2):
                    for d in range(3):
                        assert P6.mul[a * 3 + b][c * 3 + d] == C2.mul[a][c] * 3 + C3.mul[b][d]
        f1, f2 = P6.factors
        assert (f1.order, f2.order) == (2, 3)

    def test_cap(self):
        with pytest.raises(OrderCapError):
            direct_product(builtin("S4"), builtin("C3"))


class TestQuotients:
    def test_remark_quotients(self):
        x = c2_x_d8_setup()
        GN, _ = quotient_group(x.G, x.N)
        GM, _ = quotient_group(x.G, x.M)
        assert GN.order == GM.order == 8
        assert are_isomorphic(GN, builtin("D8")) is not None
        assert are_isomorphic(GM, builtin("E2^3")) is not None

    def test_trivial_kernel(self, small_group):
        Q, proj = quotient_group(small_group, small_group.trivial)
        assert Q.order == small_group.order
        assert proj.is_surjective() and proj.kernel.is_trivial()
        assert are_isomorphic(Q, small_group) is not None

    def test_cosets_numbered_by_min_element(self):
        G = builtin("S3")
        A3 = [H for H in normal_subgroups(G) if H.order == 3][0]
        Q, proj = quotient_group(G, A3)
        assert proj.images[0] == 0
        assert proj.is_homomorphism()
        assert proj.kernel == A3

    def test_not_normal(self):
        G = builtin("S3")
        H = enumerate_subgroups(G)[1]
        with pytest.raises(NotNormalError):
            quotient_group(G, H)

    def test_image_examples(self):
        x = c2_x_d8_setup()
        GN, proj = quotient_group(x.G, x.N)
        assert image_subgroup(proj, x.N).is_trivial()
        assert image_subgroup(proj, x.S).order == 4  # |SN|/|N| = 8/2
        Q1, id_proj = quotient_group(x.G, x.G.trivial)
        assert image_subgroup(id_proj, x.S).order == x.S.order

    def test_image_parent_mismatch(self):
        G, H = builtin("C4"), builtin("C2")
        _, proj = quotient_group(G, G.trivial)
        with pytest.raises(ParentMismatchError):
            image_subgroup(proj, H.whole)


class TestProducts:
    def test_examples(self):
        x = c2_x_d8_setup()
        assert subgroup_product(x.S, x.N).order == 8
        assert subgroup_product(x.S, x.G.trivial) == x.S
        assert subgroup_product(x.S, x.G.whole) == x.G.whole

    def test_not_closed(self):
        G = builtin("S3")
        lat = enumerate_subgroups(G)
        with pytest.raises(NotNormalError):
            subgroup_product(lat[1], lat[2])


class TestNormalAndNormalizer:
    def test_s3_normal_subgroups(self):
        assert [H.order for H in normal_subgroups(builtin("S3"))] == [1, 3, 6]

    def test_remark_subgroups_are_normal(self):
        x = c2_x_d8_setup()
        normals = normal_subgroups(x.G)
        assert x.N in normals and x.M in normals

    def test_abelian_all_normal(self):
        G = direct_product(builtin("C2"), builtin("C4"))
        assert len(normal_subgroups(G)) == len(enumerate_subgroups(G))

    def test_normalizers(self):
        S3 = builtin("S3")
        t = S3.generated([S3.element_labels.index("(0 1)")])
        assert normalizer(S3, t).order == 2
        D8 = builtin("D8")
        assert normalizer(D8, D8.generated([D8.generators[0]])).order == 4
        for N in normal_subgroups(D8):
            assert normalizer(D8, N) == D8.whole


class TestIsomorphism:
    def test_c4_vs_klein(self):
        assert are_isomorphic(builtin("C4"), builtin("E2^2")) is None

    def test_identity(self, small_group):
        phi = are_isomorphic(small_group, small_group)
        assert phi is not None and phi.is_homomorphism()

    def test_relabelled_copy(self):
        S3a = builtin("S3")
        S3b = group_from_generators([P("(0 1 2)"), P("(1 2)", 3)])
        phi = are_isomorphic(S3a, S3b)
        assert phi is not None and phi.is_homomorphism() and phi.is_surjective()


CATALOG = ["C1", "C2", "C4", "C2 x C2", "S3", "D8", "Q8", "C6", "A4", "C2 x D8", "D12"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_noether_count_and_product_oracle(text, data):
    from sliceburnside.expr import build_group

    G = build_group(text)
    lat = enumerate_subgroups(G)
    S = data.draw(st.sampled_from(lat.subgroups))
    N = data.draw(st.sampled_from(lat.normal_subgroups()))
    Q, proj = quotient_group(G, N)
    SN = subgroup_product(S, N)
    assert set(SN.members) == set(product_set(G.mul, S.members, N.members))
    assert proj.image(S).order == SN.order // N.order
    assert G.order % S.order == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CATALOG), st.sampled_from(CATALOG))
def test_isomorphism_symmetric_and_witnessed(a, b):
    from sliceburnside.expr import build_group

    G, H = build_group(a), build_group(b)
    f, g = are_isomorphic(G, H), are_isomorphic(H, G)
    assert (f is None) == (g is None)
    if f is not None:
        assert f.is_homomorphism() and f.is_surjective()


@pytest.mark.parametrize("text", CATALOG)
def test_axioms(text):
    from sliceburnside.expr import build_group

    assert build_group(text).check_axioms()
