"""Slices (T, S) of finite groups, the slice Burnside idempotents, the
deflation constants m_{G,S,N} and m°_{G,S,N}, and the largest quotient
T°-slice of a slice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .burnside import Certificate, LinearCombination, _maximal, _require_normal, m_constant
from .groups import (
    ConsistencyError,
    FiniteGroup,
    GroupError,
    GroupMap,
    ParentMismatchError,
    Subgroup,
    bits_of,
    find_isomorphism,
    normalizer,
    product_order,
    quotient_group,
    subgroup_product,
)
from .lattice import enumerate_subgroups


@dataclass(frozen=True)
class Slice:
    ambient: FiniteGroup
    T: Subgroup
    S: Subgroup

    def __post_init__(self):
        if self.T.group is not self.ambient or self.S.group is not self.ambient:
            raise ParentMismatchError("slice subgroups must live in the ambient group")
        if not self.S <= self.T:
            raise GroupError("slice needs S ≤ T")

    @classmethod
    def of(cls, G: FiniteGroup, S: Subgroup) -> Slice:
        """The slice (G, S)."""
        return cls(G, G.whole, S)

    def top_group(self) -> tuple[FiniteGroup, Subgroup]:
        """T as a group in its own right, with S inside it."""
        if self.T.is_whole():
            return self.ambient, self.S
        H, emb = self.T.as_group()
        return H, Subgroup(H, bits_of(i for i, x in enumerate(emb) if x in self.S), check=False)


class SliceBurnsideElement(LinearCombination):
    """Element of Q ⊗ Ξ(G); key ``c`` stands for ⟨V,U⟩_G with (V,U) in slice class c."""


class SliceClasses:
    """Conjugacy classes of the slices of G.

    Pairs are stored as (t, s) lattice indices.  Classes are ordered by
    their representative, the member minimizing (|T|, |S|, T bits, S bits).
    """

    def __init__(self, G: FiniteGroup):
        lat = enumerate_subgroups(G)
        self.group = G
        self.lattice = lat
        pairs = [(t, s) for t in range(len(lat)) for s in lat.below(t)]

        def key(p):
            T, S = lat[p[0]], lat[p[1]]
            return (T.order, S.order, T.bits, S.bits)

        seen: dict[tuple[int, int], int] = {}
        orbits = []
        for p in pairs:
            if p in seen:
                continue
            orbit = {p}
            frontier = [p]
            while frontier:
                nxt = []
                for t, s in frontier:
                    for act in lat.conj_action:
                        q = (act[t], act[s])
                        if q not in orbit:
                            orbit.add(q)
                            nxt.append(q)
                frontier = nxt
            orbit = sorted(orbit, key=key)
            for q in orbit:
                seen[q] = -1
            orbits.append(orbit)
        orbits.sort(key=lambda o: key(o[0]))
        self.classes: list[list[tuple[int, int]]] = orbits
        self._class_of = {q: c for c, orbit in enumerate(orbits) for q in orbit}

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, t: int, s: int) -> int:
        return self._class_of[(t, s)]

    def representative(self, c: int) -> Slice:
        t, s = self.classes[c][0]
        return Slice(self.group, self.lattice[t], self.lattice[s])


def enumerate_slice_classes(G: FiniteGroup) -> SliceClasses:
    if "slice_classes" not in G.cache:
        G.cache["slice_classes"] = SliceClasses(G)
    return G.cache["slice_classes"]


def slice_normalizer(G: FiniteGroup, sl: Slice) -> Subgroup:
    """N_G(T, S) = N_G(T) ∩ N_G(S)."""
    if sl.ambient is not G:
        raise ParentMismatchError("slice is not in G")
    return normalizer(G, sl.T) & normalizer(G, sl.S)


def xi_idempotent(G: FiniteGroup, sl: Slice) -> SliceBurnsideElement:
    """ξ_{T,S}^G = 1/|N_G(T,S)| Σ_{U ≤ S ≤ V ≤ T} |U| μ(U,S) μ(V,T) ⟨V,U⟩_G."""
    if sl.ambient is not G:
        raise ParentMismatchError("slice is not in G")
    lat = enumerate_subgroups(G)
    sc = enumerate_slice_classes(G)
    t, s = lat.index(sl.T), lat.index(sl.S)
    lower = [(u, lat[u].order * lat.mu(u, s)) for u in lat.below(s)]
    upper = [(v, lat.mu(v, t)) for v in lat.interval_indices(s, t)]
    coeffs: dict[int, int] = {}
    for v, mv in upper:
        if not mv:
            continue
        for u, w in lower:
            if w:
                c = sc.class_of(v, u)
                coeffs[c] = coeffs.get(c, 0) + w * mv
    scale = Fraction(1, slice_normalizer(G, sl).order)
    return SliceBurnsideElement(G, {c: scale * v for c, v in coeffs.items()})


def deflate_slice(x: SliceBurnsideElement, N: Subgroup) -> SliceBurnsideElement:
    """⟨V,U⟩_G ↦ ⟨VN/N, UN/N⟩_{G/N}, extended linearly."""
    G = x.group
    _require_normal(G, N)
    Q, proj = quotient_group(G, N)
    sc, qsc = enumerate_slice_classes(G), enumerate_slice_classes(Q)
    qlat = qsc.lattice
    out: dict[int, Fraction] = {}
    for c, v in x.coeffs.items():
        rep = sc.representative(c)
        qc = qsc.class_of(qlat.index(proj.image(rep.T)), qlat.index(proj.image(rep.S)))
        out[qc] = out.get(qc, 0) + v
    return SliceBurnsideElement(Q, out)


def m_circ(G: FiniteGroup, S: Subgroup, N: Subgroup) -> int:
    """m°_{G,S,N} = Σ_{S ≤ X ≤ G, XN = G} μ(X,G)."""
    _require_normal(G, N)
    lat = enumerate_subgroups(G)
    s, top = lat.index(S), lat.top
    return sum(
        lat.mu(x, top) for x in lat.interval_indices(s, top) if product_order(lat[x], N) == G.order
    )


def _index_ratio_numerator(G: FiniteGroup, S: Subgroup, N: Subgroup) -> Fraction:
    SN = subgroup_product(S, N)
    return Fraction(normalizer(G, SN).order, SN.order)


def m_slice_direct(G: FiniteGroup, S: Subgroup, N: Subgroup) -> Fraction:
    """|N_G(SN):SN| / |N_G(S)| · Σ_{U ≤ S ≤ V, VN = G, UN = SN} |U| μ(U,S) μ(V,G)."""
    _require_normal(G, N)
    lat = enumerate_subgroups(G)
    s, top = lat.index(S), lat.top
    sn = product_order(S, N)
    total = 0
    for u in lat.below(s):
        for v in lat.interval_indices(s, top):
            if product_order(lat[v], N) == G.order and product_order(lat[u], N) == sn:
                total += lat[u].order * lat.mu(u, s) * lat.mu(v, top)
    return _index_ratio_numerator(G, S, N) / normalizer(G, S).order * total


def m_slice_factored(G: FiniteGroup, S: Subgroup, N: Subgroup) -> Fraction:
    """|N_G(SN):SN| / |N_G(S):S| · m_{S, S∩N} · m°_{G,S,N}."""
    _require_normal(G, N)
    H, emb = S.as_group()
    SN_in_S = Subgroup(H, bits_of(i for i, x in enumerate(emb) if x in N), check=False)
    index_S = Fraction(normalizer(G, S).order, S.order)
    return _index_ratio_numerator(G, S, N) / index_S * m_constant(H, SN_in_S) * m_circ(G, S, N)


def m_slice(G: FiniteGroup, S: Subgroup, N: Subgroup) -> Fraction:
    """m_{G,S,N}, evaluated two independent ways that must agree."""
    a = m_slice_direct(G, S, N)
    b = m_slice_factored(G, S, N)
    if a != b:
        raise ConsistencyError(f"m_{{G,S,N}} evaluators disagree: {a} != {b}")
    return a


def is_t_slice(G: FiniteGroup, S: Subgroup) -> Certificate:
    lat = enumerate_subgroups(G)
    table = [(N, m_slice(G, S, N)) for N in lat.normal_subgroups() if not N.is_trivial()]
    return Certificate(all(m == 0 for _, m in table), table)


def is_t_circ_slice(G: FiniteGroup, S: Subgroup) -> Certificate:
    lat = enumerate_subgroups(G)
    table = [(N, m_circ(G, S, N)) for N in lat.normal_subgroups() if not N.is_trivial()]
    return Certificate(all(m == 0 for _, m in table), table)


def quotient_slice(G: FiniteGroup, S: Subgroup, M: Subgroup) -> tuple[Slice, GroupMap]:
    """(G/M, SM/M) together with the projection G -> G/M."""
    Q, proj = quotient_group(G, M)
    return Slice.of(Q, proj.image(S)), proj


def slices_isomorphic(a: Slice, b: Slice) -> GroupMap | None:
    """An isomorphism T_a -> T_b carrying S_a onto S_b, if one exists."""
    Ga, Sa = a.top_group()
    Gb, Sb = b.top_group()
    if Ga is Gb and Sa == Sb:
        return GroupMap(Ga, Gb, tuple(range(Ga.order)))
    return find_isomorphism(Ga, Gb, Sa, Sb)


@dataclass
class QuotientWitness:
    kernel: Subgroup
    isomorphism: GroupMap


def is_slice_quotient(a: Slice, b: Slice) -> QuotientWitness | None:
    """Is b a quotient of a?  Searches every normal subgroup M of T_a."""
    Ga, Sa = a.top_group()
    Gb, _ = b.top_group()
    if Ga.order % Gb.order:
        return None
    want = Ga.order // Gb.order
    for M in enumerate_subgroups(Ga).normal_subgroups():
        if M.order != want:
            continue
        q, _ = quotient_slice(Ga, Sa, M)
        iso = slices_isomorphic(q, b)
        if iso is not None:
            return QuotientWitness(M, iso)
    return None


@dataclass
class TauResult:
    slice: Slice
    kernel: Subgroup
    projection: GroupMap


def tau_circ(G: FiniteGroup, S: Subgroup) -> TauResult:
    """The largest quotient T°-slice of (G, S).

    Realized as (G/M, SM/M) with M the first inclusion-maximal normal
    subgroup having m°_{G,S,M} ≠ 0.  Checks that the result is a T°-slice
    and that every other maximal choice gives an isomorphic slice.
    """
    if S.group is not G:
        raise ParentMismatchError("S is not a subgroup of G")
    lat = enumerate_subgroups(G)
    nonzero = [i for i in lat.normal_indices() if m_circ(G, S, lat[i]) != 0]
    maximal = _maximal(lat, nonzero)
    M = lat[maximal[0]]
    result, proj = quotient_slice(G, S, M)
    if not is_t_circ_slice(result.ambient, result.S):
        raise ConsistencyError("tau°(G,S) is not a T°-slice")
    for j in maximal[1:]:
        other, _ = quotient_slice(G, S, lat[j])
        if slices_isomorphic(result, other) is None:
            raise ConsistencyError("maximal choices of M give non-isomorphic slices")
    return TauResult(result, M, proj)
