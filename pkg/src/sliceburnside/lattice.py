"""Subgroup lattices and their Möbius function."""

from __future__ import annotations

from typing import Iterable

from .groups import (
    ORDER_CAP,
    FiniteGroup,
    GroupError,
    OrderCapError,
    ParentMismatchError,
    Subgroup,
    members_of,
)


class SubgroupLattice:
    """All subgroups of a group, sorted by (order, bitset).

    ``up[i]`` / ``down[i]`` are bitmasks over subgroup *indices*: bit j of
    ``up[i]`` is set iff subgroup i is contained in subgroup j.  Since a
    proper subgroup is strictly smaller, index order is a linear extension
    of inclusion.
    """

    def __init__(self, group: FiniteGroup, bits: Iterable[int]):
        self.group = group
        ordered = sorted(set(bits), key=lambda b: (b.bit_count(), b))
        self.subgroups = [Subgroup(group, b, check=False) for b in ordered]
        self._index = {b: i for i, b in enumerate(ordered)}
        n = len(ordered)
        self.up = [0] * n
        self.down = [0] * n
        for i, a in enumerate(ordered):
            for j in range(i, n):
                if a & ordered[j] == a:
                    self.up[i] |= 1 << j
                    self.down[j] |= 1 << i
        # conjugation by each generator, as a permutation of subgroup indices
        self.conj_action = [
            tuple(self._index[group.conjugate_bits(g, b)] for b in ordered) for g in group.generators
        ]
        self.classes: list[tuple[int, ...]] = []
        self.class_of = [-1] * n
        for i in range(n):
            if self.class_of[i] >= 0:
                continue
            orbit = self._orbit(i)
            c = len(self.classes)
            self.classes.append(orbit)
            for j in orbit:
                self.class_of[j] = c
        self._mu: dict[int, dict[int, int]] = {}

    def _orbit(self, i: int) -> tuple[int, ...]:
        seen = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for j in frontier:
                for act in self.conj_action:
                    k = act[j]
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            frontier = nxt
        return tuple(sorted(seen))

    def __len__(self) -> int:
        return len(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def __iter__(self):
        return iter(self.subgroups)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.subgroups) - 1

    def index(self, H: Subgroup | int) -> int:
        if isinstance(H, Subgroup):
            if H.group is not self.group:
                raise ParentMismatchError("subgroup belongs to a different group")
            H = H.bits
        try:
            return self._index[H]
        except KeyError:
            raise GroupError("not a subgroup of this group") from None

    def ref(self, H: Subgroup | int) -> str:
        """Display reference ``#k``, 1-based in lattice order."""
        i = H if isinstance(H, int) else self.index(H)
        return f"#{i + 1}"

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def interval_indices(self, i: int, j: int) -> tuple[int, ...]:
        if not self.leq(i, j):
            raise GroupError(f"subgroup {self.ref(i)} is not contained in {self.ref(j)}")
        return members_of(self.up[i] & self.down[j])

    def above(self, i: int) -> tuple[int, ...]:
        return members_of(self.up[i])

    def below(self, j: int) -> tuple[int, ...]:
        return members_of(self.down[j])

    def mobius_row(self, i: int) -> dict[int, int]:
        """μ(X_i, Z) for every Z ≥ X_i."""
        row = self._mu.get(i)
        if row is None:
            row = {}
            for z in self.above(i):
                if z == i:
                    row[z] = 1
                else:
                    row[z] = -sum(row[w] for w in members_of(self.up[i] & self.down[z]) if w != z)
            self._mu[i] = row
        return row

    def mu(self, i: int, j: int) -> int:
        if not self.leq(i, j):
            raise GroupError(f"μ undefined: {self.ref(i)} is not contained in {self.ref(j)}")
        return self.mobius_row(i)[j]

    def mobius(self, X: Subgroup, Y: Subgroup) -> int:
        return self.mu(self.index(X), self.index(Y))

    def representative(self, c: int) -> int:
        return self.classes[c][0]

    def normal_indices(self) -> list[int]:
        return [i for i, cls in enumerate(self.class_of) if len(self.classes[cls]) == 1]

    def normal_subgroups(self) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.normal_indices()]


def enumerate_subgroups(G: FiniteGroup, cap: int = ORDER_CAP) -> SubgroupLattice:
    """All subgroups of G, computed once and kept in ``G.cache``.

    Seeds with the cyclic subgroups and closes under joins with cyclic
    subgroups until nothing new appears.
    """
    lat = G.cache.get("lattice")
    if lat is not None:
        return lat
    if G.order > cap:
        raise OrderCapError(f"group of order {G.order} exceeds order cap {cap}")
    cyclic: dict[int, int] = {}
    for x in range(G.order):
        cyclic.setdefault(G.closure([x]), x)
    cyc = list(cyclic.items())
    found: dict[int, tuple[int, ...]] = {b: (x,) for b, x in cyc}
    frontier = list(found.items())
    while frontier:
        nxt = []
        for bits, gens in frontier:
            for cbits, g in cyc:
                if cbits & bits == cbits:
                    continue
                b = G.closure(gens + (g,))
                if b not in found:
                    found[b] = gens + (g,)
                    nxt.append((b, found[b]))
        frontier = nxt
    lat = SubgroupLattice(G, found)
    G.cache["lattice"] = lat
    return lat


def mobius(t: SubgroupLattice, X: Subgroup, Y: Subgroup) -> int:
    return t.mobius(X, Y)


def conjugacy_classes_of_subgroups(G: FiniteGroup, cap: int = ORDER_CAP) -> list[list[Subgroup]]:
    lat = enumerate_subgroups(G, cap)
    return [[lat[i] for i in cls] for cls in lat.classes]


def interval(t: SubgroupLattice, X: Subgroup, Y: Subgroup) -> list[Subgroup]:
    return [t[i] for i in t.interval_indices(t.index(X), t.index(Y))]


# CACHE PAYLOAD
# -------------


def lattice_payload(lat: SubgroupLattice) -> dict:
    """Serializable subgroup list plus all Möbius values."""
    mus = []
    for i in range(len(lat)):
        for j, v in sorted(lat.mobius_row(i).items()):
            if v:
                mus.append([i, j, v])
    return {
        "subgroups": [format(H.bits, "x") for H in lat.subgroups],
        "mobius": mus,
    }


def lattice_from_payload(G: FiniteGroup, payload: dict) -> SubgroupLattice:
    bits = [int(h, 16) for h in payload["subgroups"]]
    lat = SubgroupLattice(G, bits)
    if [H.bits for H in lat.subgroups] != bits:
        raise ValueError("cached subgroup list is not in canonical order")
    rows: dict[int, dict[int, int]] = {i: {} for i in range(len(lat))}
    for i, j, v in payload["mobius"]:
        rows[i][j] = v
    for i in range(len(lat)):
        row = rows[i]
        lat._mu[i] = {j: row.get(j, 0) for j in lat.above(i)}
    G.cache["lattice"] = lat
    return lat
