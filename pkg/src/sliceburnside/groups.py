"""Finite groups given by explicit multiplication tables.

Elements of a :class:`FiniteGroup` are the integers ``0 .. order-1`` and
element 0 is always the identity.  A :class:`Subgroup` is a bitset over
those indices, stored as a python ``int`` (bit ``i`` set means element ``i``
is a member), so inclusion and intersection are single integer operations.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

ORDER_CAP = 64


class GroupError(Exception):
    pass


class OrderCapError(GroupError):
    pass


class NotNormalError(GroupError):
    pass


class ParentMismatchError(GroupError):
    pass


class ConsistencyError(AssertionError):
    """Two routes to the same quantity disagreed; always a bug."""


def bits_of(elements: Iterable[int]) -> int:
    b = 0
    for x in elements:
        b |= 1 << x
    return b


def members_of(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


# PERMUTATIONS
# ------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``0 .. degree-1``.

    Products compose left to right: ``(p * q)(i) == q(p(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection on 0..{len(self.images) - 1}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int | None = None) -> Permutation:
        top = max((max(c) for c in cycles if c), default=-1) + 1
        if degree is None:
            degree = top
        elif top > degree:
            raise ValueError(f"point {top - 1} out of range for degree {degree}")
        result = cls.identity(degree)
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {tuple(cycle)}")
            if any(p < 0 for p in cycle):
                raise ValueError(f"negative point in cycle {tuple(cycle)}")
            images = list(range(degree))
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a] = b
            result = result * cls(tuple(images))
        return result

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Permutation:
        """Parse cycle notation such as ``"(0 1 2 3)(4 5)"`` or ``"()"``."""
        cycles = []
        pos = 0
        stripped = text.strip()
        for m in _CYCLE_RE.finditer(stripped):
            if stripped[pos:m.start()].strip():
                raise ValueError(f"unexpected text {stripped[pos:m.start()]!r} at position {pos}")
            body = m.group(1).replace(",", " ").split()
            try:
                cycles.append([int(p) for p in body])
            except ValueError:
                raise ValueError(f"bad point in cycle {m.group(0)!r} at position {m.start()}") from None
            pos = m.end()
        if stripped[pos:].strip() or not stripped:
            raise ValueError(f"bad cycle notation {text!r} at position {pos}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def extend(self, degree: int) -> Permutation:
        if degree < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Permutation(self.images + tuple(range(self.degree, degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cycle = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


# GROUPS
# ------


class FiniteGroup:
    """A finite group as a multiplication table.

    ``cache`` holds derived data (subgroup lattice, quotients, ...) computed
    on demand; the group itself never changes after construction.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        generators: Sequence[int] = (),
        label: str = "",
        element_labels: Sequence[str] | None = None,
    ):
        n = len(mul)
        if n == 0 or any(len(row) != n for row in mul):
            raise GroupError("multiplication table must be square and non-empty")
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in mul)
        if self.mul[0] != tuple(range(n)) or any(row[0] != i for i, row in enumerate(self.mul)):
            raise GroupError("element 0 is not a two-sided identity")
        inv = []
        for i, row in enumerate(self.mul):
            try:
                j = row.index(0)
            except ValueError:
                raise GroupError(f"element {i} has no inverse") from None
            if self.mul[j][i] != 0:
                raise GroupError(f"inverse of {i} is not two-sided")
            inv.append(j)
        self.inv: tuple[int, ...] = tuple(inv)
        self.generators: tuple[int, ...] = tuple(generators)
        self.label = label
        self.element_labels = tuple(element_labels) if element_labels is not None else None
        self.cache: dict = {}
        if self.closure(self.generators) != (1 << n) - 1:
            raise GroupError("generators do not generate the group")

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.label or '?'} of order {self.order}>"

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    @property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    def element_name(self, x: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[x]
        return str(x)

    def check_axioms(self) -> bool:
        """Full associativity scan, O(order^3)."""
        m = self.mul
        r = range(self.order)
        return all(m[m[a][b]][c] == m[a][m[b][c]] for a in r for b in r for c in r)

    def power(self, x: int, k: int) -> int:
        y = 0
        for _ in range(k):
            y = self.mul[y][x]
        return y

    def element_order(self, x: int) -> int:
        return self.element_orders[x]

    @property
    def element_orders(self) -> tuple[int, ...]:
        if "orders" not in self.cache:
            out = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = self.mul[y][x]
                    k += 1
                out.append(k)
            self.cache["orders"] = tuple(out)
        return self.cache["orders"]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def conjugate_bits(self, g: int, bits: int) -> int:
        out = 0
        for x in members_of(bits):
            out |= 1 << self.conjugate(g, x)
        return out

    def closure(self, gens: Iterable[int]) -> int:
        """Bitset of the subgroup generated by ``gens``."""
        gens = [g for g in gens if g != 0]
        seen = 1
        frontier = [0]
        mul = self.mul
        while frontier:
            nxt = []
            for x in frontier:
                row = mul[x]
                for g in gens:
                    y = row[g]
                    if not seen >> y & 1:
                        seen |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return seen

    def subgroup(self, elements: Iterable[int]) -> Subgroup:
        return Subgroup(self, bits_of(elements))

    def generated(self, gens: Iterable[int]) -> Subgroup:
        return Subgroup(self, self.closure(gens), check=False)

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self, self.full_bits, check=False)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(self, 1, check=False)

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in self.generators for b in self.generators)

    def center(self) -> Subgroup:
        m = self.mul
        bits = bits_of(
            x for x in range(self.order) if all(m[x][g] == m[g][x] for g in self.generators)
        )
        return Subgroup(self, bits, check=False)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        if "classes" not in self.cache:
            seen = 0
            out = []
            for x in range(self.order):
                if seen >> x & 1:
                    continue
                cls = bits_of(self.conjugate(g, x) for g in range(self.order))
                seen |= cls
                out.append(members_of(cls))
            self.cache["classes"] = out
        return self.cache["classes"]

    def fingerprint(self) -> tuple:
        """Isomorphism invariant: order, element-order spectrum, class sizes, center order."""
        if "fingerprint" not in self.cache:
            self.cache["fingerprint"] = (
                self.order,
                tuple(sorted(self.element_orders)),
                tuple(sorted(len(c) for c in self.conjugacy_classes())),
                self.center().order,
            )
        return self.cache["fingerprint"]

    def table_hash(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.order).encode())
        for row in self.mul:
            h.update(b"|" + ",".join(map(str, row)).encode())
        return h.hexdigest()


class Subgroup:
    """A subgroup of ``group`` stored as a member bitset."""

    __slots__ = ("group", "bits", "order")

    def __init__(self, group: FiniteGroup, bits: int, check: bool = True):
        self.group = group
        self.bits = bits
        self.order = bits.bit_count()
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        if self.bits >> G.order:
            raise GroupError("member index out of range")
        if not self.bits & 1:
            raise GroupError("subgroup does not contain the identity")
        ms = self.members
        for a in ms:
            if not self.bits >> G.inv[a] & 1:
                raise GroupError(f"not closed under inverses ({a})")
            row = G.mul[a]
            for b in ms:
                if not self.bits >> row[b] & 1:
                    raise GroupError(f"not closed under multiplication ({a}*{b})")
        assert G.order % self.order == 0, "Lagrange violated"

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.group is self.group and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.group), self.bits))

    def __le__(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.bits & other.bits == self.bits

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: Subgroup) -> bool:
        return other <= self

    def __and__(self, other: Subgroup) -> Subgroup:
        _same_parent(self, other)
        return Subgroup(self.group, self.bits & other.bits, check=False)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.group.label or '?'}: {list(self.members)}>"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.bits)

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_whole(self) -> bool:
        return self.bits == self.group.full_bits

    def is_normal(self) -> bool:
        G = self.group
        return all(G.conjugate_bits(g, self.bits) == self.bits for g in G.generators)

    def conjugate(self, g: int) -> Subgroup:
        return Subgroup(self.group, self.group.conjugate_bits(g, self.bits), check=False)

    def generating_set(self) -> tuple[int, ...]:
        return generating_set(self.group, self.bits)

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Re-root this subgroup as a group in its own right.

        Returns the group and the embedding (new index -> parent index).
        New indices follow ascending parent index, so the identity stays 0.
        """
        key = ("rerooted", self.bits)
        G = self.group
        if key not in G.cache:
            ms = self.members
            pos = {x: i for i, x in enumerate(ms)}
            mul = [[pos[G.mul[a][b]] for b in ms] for a in ms]
            gens = [pos[g] for g in self.generating_set()]
            labels = [G.element_name(x) for x in ms] if G.element_labels else None
            H = FiniteGroup(mul, gens, label=f"<{self.order}-subgroup of {G.label}>", element_labels=labels)
            G.cache[key] = (H, ms)
        return G.cache[key]


def _same_parent(a: Subgroup, b: Subgroup):
    if a.group is not b.group:
        raise ParentMismatchError("subgroups live in different groups")


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A homomorphism given by its table of element images."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    @property
    def kernel(self) -> Subgroup:
        return Subgroup(self.source, bits_of(i for i, y in enumerate(self.images) if y == 0), check=False)

    def is_surjective(self) -> bool:
        return bits_of(self.images) == self.target.full_bits

    def is_homomorphism(self) -> bool:
        sm, tm, im = self.source.mul, self.target.mul, self.images
        r = range(self.source.order)
        return all(im[sm[a][b]] == tm[im[a]][im[b]] for a in r for b in r)

    def image(self, S: Subgroup) -> Subgroup:
        if S.group is not self.source:
            raise ParentMismatchError("subgroup is not in the source of the map")
        return Subgroup(self.target, bits_of(self.images[x] for x in S.members), check=False)

    def preimage(self, U: Subgroup) -> Subgroup:
        if U.group is not self.target:
            raise ParentMismatchError("subgroup is not in the target of the map")
        return Subgroup(self.source, bits_of(i for i, y in enumerate(self.images) if U.bits >> y & 1), check=False)


# CONSTRUCTIONS
# -------------


def group_from_generators(
    gens: Sequence[Permutation], label: str = "", cap: int = ORDER_CAP
) -> FiniteGroup:
    """Close a list of permutations into a group.

    Elements are numbered in breadth-first order of right products by the
    generators, in the order given, starting from the identity.
    """
    degrees = {g.degree for g in gens}
    if len(degrees) > 1:
        raise GroupError(f"generators have different degrees: {sorted(degrees)}")
    degree = degrees.pop() if degrees else 0
    ident = Permutation.identity(degree)
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = x * g
            if y not in index:
                if len(elements) >= cap:
                    raise OrderCapError(f"closure exceeds order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
        i += 1
    imgs = [e.images for e in elements]
    pos = {im: k for k, im in enumerate(imgs)}
    mul = [[pos[tuple(b[i] for i in a)] for b in imgs] for a in imgs]
    return FiniteGroup(mul, [index[g] for g in gens], label=label, element_labels=[str(e) for e in elements])


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str = "", cap: int = ORDER_CAP) -> FiniteGroup:
    """G x H with element (g, h) numbered g*|H| + h.

    The two factor embeddings are stored as ``P.factors``.
    """
    n, m = G.order, H.order
    if n * m > cap:
        raise OrderCapError(f"{n}*{m} exceeds order cap {cap}")
    mul = [
        [G.mul[a // m][b // m] * m + H.mul[a % m][b % m] for b in range(n * m)]
        for a in range(n * m)
    ]
    gens = [g * m for g in G.generators] + list(H.generators)
    labels = [f"({G.element_name(a)}, {H.element_name(b)})" for a in range(n) for b in range(m)]
    P = FiniteGroup(mul, gens, label=label or f"{G.label} x {H.label}", element_labels=labels)
    P.factors = (
        Subgroup(P, bits_of(g * m for g in range(n)), check=False),
        Subgroup(P, bits_of(range(m)), check=False),
    )
    return P


def _regular_group(n: int, mul_rule, gens: Sequence[int], label: str, cap: int) -> FiniteGroup:
    # right-regular representation of a group given on 0..n-1 by mul_rule
    perms = [Permutation(tuple(mul_rule(x, g) for x in range(n))) for g in gens]
    return group_from_generators(perms, label=label, cap=cap)


_FAMILY_RE = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def builtin(name: str, cap: int = ORDER_CAP) -> FiniteGroup:
    """A standard group from a family spec such as ``"C 6"``, ``"D8"``, ``"E 2^3"``.

    ``D n`` is the dihedral group of order n; ``Q n`` the dicyclic
    (generalized quaternion when n is a power of 2) group of order n.
    """
    m = _FAMILY_RE.match(name)
    if not m:
        raise GroupError(f"unknown family spec {name!r}")
    fam, n = m.group(1).upper(), int(m.group(2))
    exp = m.group(3)
    if exp is not None and fam != "E":
        raise GroupError(f"exponent only allowed for E p^k, got {name!r}")
    if fam == "E":
        k = int(exp) if exp is not None else 1
        label = f"E{n}^{k}"
    else:
        label = f"{fam}{n}"

    if fam == "C":
        if n < 1:
            raise GroupError("cyclic order must be positive")
        gens = [] if n == 1 else [Permutation.from_cycles([range(n)])]
        return group_from_generators(gens, label, cap)
    if fam == "D":
        if n < 2 or n % 2:
            raise GroupError(f"dihedral order must be even, got {n}")
        h = n // 2
        if h == 1:
            gens = [Permutation.from_cycles([(0, 1)])]
        elif h == 2:
            gens = [Permutation.from_cycles([(0, 1)], 4), Permutation.from_cycles([(2, 3)], 4)]
        else:
            # reflection b first (order 2), then rotation c (order n/2)
            refl = Permutation(tuple((-i) % h for i in range(h)))
            gens = [refl, Permutation.from_cycles([range(h)])]
        return group_from_generators(gens, label, cap)
    if fam == "S":
        if n < 1:
            raise GroupError("symmetric degree must be positive")
        if n == 1:
            return group_from_generators([], label, cap)
        if n == 2:
            return group_from_generators([Permutation.from_cycles([(0, 1)])], label, cap)
        gens = [Permutation.from_cycles([(0, 1)], n), Permutation.from_cycles([range(n)])]
        return group_from_generators(gens, label, cap)
    if fam == "A":
        if n < 1:
            raise GroupError("alternating degree must be positive")
        gens = [Permutation.from_cycles([(0, 1, k)], n) for k in range(2, n)]
        return group_from_generators(gens, label, cap)
    if fam == "Q":
        if n < 8 or n % 4:
            raise GroupError(f"quaternion order must be a multiple of 4 and >= 8, got {n}")
        h = n // 2  # order of a
        q = h // 2

        # element (i, j) = a^i b^j encoded as i + h*j
        def rule(x, y):
            i, j = x % h, x // h
            k, l = y % h, y // h
            if j == 0:
                return (i + k) % h + h * l
            if l == 0:
                return (i - k) % h + h
            return (i - k + q) % h

        return _regular_group(n, rule, [1, h], label, cap)
    if fam == "E":
        if n < 2 or any(n % d == 0 for d in range(2, n)):
            raise GroupError(f"E p^k needs a prime p, got {n}")
        k = int(exp) if exp is not None else 1
        if n**k > cap:
            raise OrderCapError(f"{n}^{k} exceeds order cap {cap}")
        deg = n * k
        gens = [Permutation.from_cycles([range(i * n, (i + 1) * n)], deg) for i in range(k)]
        return group_from_generators(gens, label, cap)
    raise GroupError(f"unknown group family {fam!r}")


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupMap]:
    """G/N with cosets numbered by their minimal element index.

    Memoized per (G, N) so that repeated deflations land in the same group.
    """
    if N.group is not G:
        raise ParentMismatchError("N is not a subgroup of G")
    key = ("quotient", N.bits)
    if key in G.cache:
        return G.cache[key]
    if not N.is_normal():
        raise NotNormalError("N is not normal in G")
    ns = N.members
    rep = [min(G.mul[x][n] for n in ns) for x in range(G.order)]
    reps = sorted(set(rep))
    idx = {r: i for i, r in enumerate(reps)}
    proj = tuple(idx[r] for r in rep)
    mul = [[proj[G.mul[a][b]] for b in reps] for a in reps]
    gens = []
    for g in G.generators:
        if proj[g] != 0 and proj[g] not in gens:
            gens.append(proj[g])
    labels = [G.element_name(r) + "N" for r in reps] if G.element_labels else None
    Q = FiniteGroup(mul, gens, label=f"{G.label}/N{N.order}", element_labels=labels)
    result = (Q, GroupMap(G, Q, proj))
    G.cache[key] = result
    return result


def image_subgroup(f: GroupMap, S: Subgroup) -> Subgroup:
    return f.image(S)


def subgroup_product(S: Subgroup, N: Subgroup) -> Subgroup:
    """The product set SN; raises if it is not a subgroup."""
    _same_parent(S, N)
    G = S.group
    bits = 0
    for s in S.members:
        row = G.mul[s]
        for n in N.members:
            bits |= 1 << row[n]
    try:
        return Subgroup(G, bits)
    except GroupError:
        raise NotNormalError("product set SN is not a subgroup") from None


def product_order(S: Subgroup, N: Subgroup) -> int:
    """|SN| as a set, without forming it."""
    return S.order * N.order // (S.bits & N.bits).bit_count()


def normal_subgroups(G: FiniteGroup, cap: int = ORDER_CAP) -> list[Subgroup]:
    from .lattice import enumerate_subgroups

    return enumerate_subgroups(G, cap).normal_subgroups()


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    if H.group is not G:
        raise ParentMismatchError("H is not a subgroup of G")
    key = ("normalizer", H.bits)
    if key not in G.cache:
        bits = bits_of(g for g in range(G.order) if G.conjugate_bits(g, H.bits) == H.bits)
        G.cache[key] = Subgroup(G, bits, check=False)
    return G.cache[key]


def generating_set(G: FiniteGroup, target: int | None = None, start: Sequence[int] = ()) -> tuple[int, ...]:
    """Greedy small generating set of the subgroup with bitset ``target``.

    Starts from ``start`` and repeatedly adds the element that enlarges the
    generated subgroup the most (lowest index on ties).
    """
    if target is None:
        target = G.full_bits
    key = ("gens", target, tuple(start))
    if key in G.cache:
        return G.cache[key]
    gens = list(start)
    current = G.closure(gens)
    while current != target:
        best, best_bits = -1, 0
        for x in members_of(target & ~current):
            b = G.closure(gens + [x])
            if b.bit_count() > best_bits.bit_count():
                best, best_bits = x, b
                if b == target:
                    break
        gens.append(best)
        current = best_bits
    G.cache[key] = tuple(gens)
    return G.cache[key]


# ISOMORPHISM
# -----------


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> dict[int, int] | None:
    # Walk the Cayley graph of <gens>; a consistent injective walk is an
    # injective homomorphism <gens> -> H.
    phi = {0: 0}
    frontier = [0]
    pairs = list(zip(gens, imgs))
    while frontier:
        nxt = []
        for x in frontier:
            px = phi[x]
            for g, h in pairs:
                y = G.mul[x][g]
                hy = H.mul[px][h]
                seen = phi.get(y)
                if seen is None:
                    phi[y] = hy
                    nxt.append(y)
                elif seen != hy:
                    return None
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def find_isomorphism(
    G: FiniteGroup,
    H: FiniteGroup,
    G_sub: Subgroup | None = None,
    H_sub: Subgroup | None = None,
) -> GroupMap | None:
    """Backtracking isomorphism search G -> H, optionally carrying G_sub onto H_sub."""
    if G.fingerprint() != H.fingerprint():
        return None
    constrained = G_sub is not None
    if constrained:
        assert H_sub is not None
        if G_sub.order != H_sub.order:
            return None
        so_g = sorted(G.element_orders[x] for x in G_sub.members)
        so_h = sorted(H.element_orders[x] for x in H_sub.members)
        if so_g != so_h:
            return None
        if G_sub.is_normal() != H_sub.is_normal():
            return None
        if normalizer(G, G_sub).order != normalizer(H, H_sub).order:
            return None
        sub_gens = generating_set(G, G_sub.bits)
    else:
        sub_gens = ()
    gens = generating_set(G, G.full_bits, sub_gens)
    k_sub = len(sub_gens)
    ords = H.element_orders
    cands = []
    for i, g in enumerate(gens):
        pool = H_sub.members if constrained and i < k_sub else range(H.order)
        cands.append([h for h in pool if ords[h] == G.element_orders[g]])

    def search(i: int, imgs: list[int]) -> dict[int, int] | None:
        if i == len(gens):
            return _extend(G, H, gens, imgs)
        for h in cands[i]:
            trial = imgs + [h]
            phi = _extend(G, H, gens[: i + 1], trial)
            if phi is None:
                continue
            if constrained and i + 1 == k_sub and bits_of(phi.values()) != H_sub.bits:
                continue
            found = search(i + 1, trial)
            if found is not None:
                return found
        return None

    if constrained and k_sub == 0 and H_sub.order != 1:
        return None
    phi = search(0, [])
    if phi is None or len(phi) != G.order:
        return None
    return GroupMap(G, H, tuple(phi[x] for x in range(G.order)))


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> GroupMap | None:
    return find_isomorphism(G, H)


# NAMING
# ------


def _abelian_name(G: FiniteGroup) -> str:
    # primary decomposition from counts of elements killed by p^k
    n = G.order
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))]
    factors = []
    for p in primes:
        e = 0
        while n % p ** (e + 1) == 0:
            e += 1
        counts = [1]
        for k in range(1, e + 1):
            c = sum(1 for x in range(G.order) if G.power(x, p**k) == 0)
            counts.append(c)
        # log_p(counts[k]) = sum_i min(k, e_i); successive differences give
        # the number of cyclic factors of order >= p^k
        logs = [round(_ilog(c, p)) for c in counts]
        ge = [logs[k] - logs[k - 1] for k in range(1, e + 1)] + [0]
        for k in range(e, 0, -1):
            mult = ge[k - 1] - ge[k]
            if mult:
                factors.append((p**k, mult))
    factors.sort()
    return " x ".join(f"C{q}" if m == 1 else f"C{q}^{m}" for q, m in factors)


def _ilog(c: int, p: int) -> int:
    k = 0
    while c > 1:
        c //= p
        k += 1
    return k


def structure_name(G: FiniteGroup) -> str:
    """A short human-readable isomorphism type, e.g. ``C2^3`` or ``D8``."""
    if "name" in G.cache:
        return G.cache["name"]
    n = G.order
    if n == 1:
        name = "1"
    elif max(G.element_orders) == n:
        name = f"C{n}"
    elif G.is_abelian():
        name = _abelian_name(G)
    else:
        name = f"[order {n}]"
        for spec in _nonabelian_candidates(n):
            try:
                H = _candidate(spec)
            except GroupError:
                continue
            if H.order == n and find_isomorphism(G, H) is not None:
                name = spec
                break
    G.cache["name"] = name
    return name


def _nonabelian_candidates(n: int) -> list[str]:
    out = [f"S{d}" for d in (3, 4) if _fact(d) == n]
    out += [f"A{d}" for d in (4,) if _fact(d) // 2 == n]
    out.append(f"D{n}")
    if n % 4 == 0:
        out.append(f"Q{n}")
    for k in range(2, n):
        if n % k == 0:
            m = n // k
            out += [f"C{k} x D{m}", f"C{k} x Q{m}"]
            out += [f"C{k} x A4"] * (m == 12) + [f"C{k} x S4"] * (m == 24)
    return out


def _fact(d: int) -> int:
    r = 1
    for i in range(2, d + 1):
        r *= i
    return r


def _candidate(spec: str) -> FiniteGroup:
    parts = [p.strip() for p in spec.split(" x ")]
    G = builtin(parts[0])
    for p in parts[1:]:
        G = direct_product(G, builtin(p))
    return G
