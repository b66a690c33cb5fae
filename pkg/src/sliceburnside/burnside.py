"""Idempotents of the rational Burnside algebra, deflation, and B-groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .groups import (
    ConsistencyError,
    FiniteGroup,
    NotNormalError,
    ParentMismatchError,
    Subgroup,
    find_isomorphism,
    normalizer,
    product_order,
    quotient_group,
)
from .lattice import enumerate_subgroups


class LinearCombination:
    """Exact rational combination of basis elements keyed by class index."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Mapping[int, Fraction | int] | None = None):
        self.group = group
        self.coeffs: dict[int, Fraction] = {
            k: Fraction(v) for k, v in sorted((coeffs or {}).items()) if v != 0
        }

    def _check(self, other: LinearCombination):
        if type(other) is not type(self) or other.group is not self.group:
            raise ParentMismatchError("elements live over different groups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return type(self)(self.group, out)

    def __neg__(self):
        return type(self)(self.group, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return type(self)(self.group, {k: scalar * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.group is self.group and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((id(self.group), tuple(self.coeffs.items())))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        terms = " + ".join(f"{v}*b{k}" for k, v in self.coeffs.items()) or "0"
        return f"{type(self).__name__}({terms})"


class BurnsideElement(LinearCombination):
    """Element of Q ⊗ B(G); key ``c`` stands for [G/K] with K in subgroup class c."""

    @classmethod
    def basis(cls, G: FiniteGroup, K: Subgroup) -> BurnsideElement:
        lat = enumerate_subgroups(G)
        return cls(G, {lat.class_of[lat.index(K)]: 1})


@dataclass
class Certificate:
    """A yes/no answer together with the per-normal-subgroup table behind it."""

    holds: bool
    table: list[tuple[Subgroup, Fraction | int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


def _require_normal(G: FiniteGroup, N: Subgroup):
    if N.group is not G:
        raise ParentMismatchError("N is not a subgroup of G")
    lat = enumerate_subgroups(G)
    if len(lat.classes[lat.class_of[lat.index(N)]]) != 1:
        raise NotNormalError("N is not normal in G")


def idempotent_e(G: FiniteGroup, H: Subgroup) -> BurnsideElement:
    """e_H^G = 1/|N_G(H)| Σ_{K ≤ H} |K| μ(K,H) [G/K]."""
    if H.group is not G:
        raise ParentMismatchError("H is not a subgroup of G")
    lat = enumerate_subgroups(G)
    h = lat.index(H)
    coeffs: dict[int, Fraction] = {}
    for k in lat.below(h):
        mu = lat.mu(k, h)
        if mu:
            c = lat.class_of[k]
            coeffs[c] = coeffs.get(c, 0) + lat[k].order * mu
    scale = Fraction(1, normalizer(G, H).order)
    return BurnsideElement(G, {c: scale * v for c, v in coeffs.items()})


def deflate_burnside(x: BurnsideElement, N: Subgroup) -> BurnsideElement:
    """Def^G_{G/N}: [G/K] ↦ [(G/N)/(KN/N)], extended linearly."""
    G = x.group
    _require_normal(G, N)
    Q, proj = quotient_group(G, N)
    lat, qlat = enumerate_subgroups(G), enumerate_subgroups(Q)
    out: dict[int, Fraction] = {}
    for c, v in x.coeffs.items():
        K = lat[lat.representative(c)]
        qc = qlat.class_of[qlat.index(proj.image(K))]
        out[qc] = out.get(qc, 0) + v
    return BurnsideElement(Q, out)


def m_constant(G: FiniteGroup, N: Subgroup) -> Fraction:
    """m_{G,N} = 1/|G| Σ_{X ≤ G, XN = G} |X| μ(X,G)."""
    _require_normal(G, N)
    lat = enumerate_subgroups(G)
    top = lat.top
    total = 0
    for x in lat.below(top):
        X = lat[x]
        if product_order(X, N) == G.order:
            total += X.order * lat.mu(x, top)
    return Fraction(total, G.order)


def is_b_group(G: FiniteGroup) -> Certificate:
    lat = enumerate_subgroups(G)
    table = [(N, m_constant(G, N)) for N in lat.normal_subgroups() if not N.is_trivial()]
    return Certificate(all(m == 0 for _, m in table), table)


def _maximal(lat, candidates: list[int]) -> list[int]:
    cs = set(candidates)
    return [i for i in candidates if not any(j != i and lat.leq(i, j) for j in cs)]


def beta(G: FiniteGroup) -> tuple[FiniteGroup, Subgroup]:
    """The largest quotient of G that is a B-group, with the kernel used.

    The kernel is the first (in lattice order) normal subgroup that is
    inclusion-maximal among those with m_{G,N} ≠ 0.
    """
    lat = enumerate_subgroups(G)
    nonzero = [i for i in lat.normal_indices() if m_constant(G, lat[i]) != 0]
    maximal = _maximal(lat, nonzero)
    N = lat[maximal[0]]
    Q, _ = quotient_group(G, N)
    for j in maximal[1:]:
        other, _ = quotient_group(G, lat[j])
        if find_isomorphism(Q, other) is None:
            raise ConsistencyError("maximal choices of N give non-isomorphic quotients")
    if not is_b_group(Q):
        raise ConsistencyError("beta(G) is not a B-group")
    return Q, N
