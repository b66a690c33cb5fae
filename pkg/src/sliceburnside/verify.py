"""Exhaustive verification of the Möbius/deflation identities over small groups.

Every check enumerates all instances (all subgroups, all normal
subgroups, all pairs) and compares both sides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .burnside import BurnsideElement, beta, deflate_burnside, idempotent_e, is_b_group, m_constant
from .expr import build_group
from .groups import (
    ORDER_CAP,
    ConsistencyError,
    FiniteGroup,
    GroupError,
    OrderCapError,
    Subgroup,
    builtin,
    direct_product,
    find_isomorphism,
    product_order,
    quotient_group,
    structure_name,
)
from .lattice import enumerate_subgroups
from .slices import (
    Slice,
    SliceBurnsideElement,
    deflate_slice,
    enumerate_slice_classes,
    is_slice_quotient,
    is_t_circ_slice,
    is_t_slice,
    m_circ,
    m_slice,
    m_slice_direct,
    m_slice_factored,
    quotient_slice,
    tau_circ,
    xi_idempotent,
)

DEFAULT_CATALOG = [f"C{n}" for n in range(1, 13)] + [
    "C2 x C2",
    "C2 x C2 x C2",
    "D8",
    "D12",
    "Q8",
    "S3",
    "A4",
    "S4",
    "C2 x D8",
]


def _fmt(v) -> str:
    return str(v)


@dataclass
class CheckReport:
    name: str
    subject: str
    instances: int = 0
    failures: list[dict] = field(default_factory=list)
    skipped: str | None = None
    # (name, actual, expected) for scripted scenarios
    claims: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, inputs: dict, lhs, rhs):
        self.instances += 1
        if not ok:
            self.failures.append({"inputs": inputs, "lhs": _fmt(lhs), "rhs": _fmt(rhs)})

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "subject": self.subject,
            "instances": self.instances,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.passed,
        }


def _ref(G: FiniteGroup, H: Subgroup) -> str:
    return enumerate_subgroups(G).ref(H)


# PER-INSTANCE CHECKS
# -------------------


def check_crapo(G: FiniteGroup, M: Subgroup, report: CheckReport | None = None) -> CheckReport:
    """μ(X,G) = Σ_{Y ≥ X, YM = G, Y∩M = X∩M} μ(X,Y) μ(Y,G) for every X ≤ G."""
    report = report or CheckReport("crapo", G.label)
    lat = enumerate_subgroups(G)
    top = lat.top
    for x in range(len(lat)):
        X = lat[x]
        xm = X.bits & M.bits
        rhs = 0
        for y in lat.above(x):
            Y = lat[y]
            if Y.bits & M.bits == xm and product_order(Y, M) == G.order:
                rhs += lat.mu(x, y) * lat.mu(y, top)
        lhs = lat.mu(x, top)
        report.record(lhs == rhs, {"G": G.label, "X": lat.ref(x), "M": _ref(G, M)}, lhs, rhs)
    return report


class _McircMemo:
    # m° on quotient groups, keyed by (quotient, S bits, N bits)
    def __init__(self):
        self.values: dict = {}

    def __call__(self, Q: FiniteGroup, S: Subgroup, N: Subgroup) -> int:
        key = (id(Q), S.bits, N.bits)
        if key not in self.values:
            self.values[key] = m_circ(Q, S, N)
        return self.values[key]


def check_mcirc_expansion(
    G: FiniteGroup, S: Subgroup, M: Subgroup, N: Subgroup,
    report: CheckReport | None = None, memo: _McircMemo | None = None,
) -> CheckReport:
    """m°_{G,S,N} = Σ_{Y ≥ S, YN = YM = G} μ(Y,G) m°_{G/M, SM/M, (Y∩N)M/M}."""
    report = report or CheckReport("mcirc_expansion", G.label)
    memo = memo or _McircMemo()
    lat = enumerate_subgroups(G)
    Q, proj = quotient_group(G, M)
    SM = proj.image(S)
    top = lat.top
    rhs = 0
    for y in lat.interval_indices(lat.index(S), top):
        Y = lat[y]
        if product_order(Y, N) == G.order and product_order(Y, M) == G.order:
            rhs += lat.mu(y, top) * memo(Q, SM, proj.image(Y & N))
    lhs = m_circ(G, S, N)
    report.record(lhs == rhs, {"G": G.label, "S": _ref(G, S), "M": _ref(G, M), "N": _ref(G, N)}, lhs, rhs)
    return report


def check_mcirc_factorization(
    G: FiniteGroup, S: Subgroup, M: Subgroup, N: Subgroup,
    report: CheckReport | None = None, memo: _McircMemo | None = None,
) -> CheckReport:
    """For M ≤ N: m°_{G,S,N} = m°_{G,S,M} · m°_{G/M, SM/M, N/M}."""
    if not M <= N:
        raise GroupError("factorization needs M ≤ N")
    report = report or CheckReport("mcirc_factorization", G.label)
    memo = memo or _McircMemo()
    Q, proj = quotient_group(G, M)
    lhs = m_circ(G, S, N)
    rhs = m_circ(G, S, M) * memo(Q, proj.image(S), proj.image(N))
    report.record(lhs == rhs, {"G": G.label, "S": _ref(G, S), "M": _ref(G, M), "N": _ref(G, N)}, lhs, rhs)
    return report


# PER-GROUP CHECKS
# ----------------


def check_crapo_all(G: FiniteGroup) -> CheckReport:
    report = CheckReport("crapo", G.label)
    for M in enumerate_subgroups(G).normal_subgroups():
        check_crapo(G, M, report)
    return report


def check_mcirc_expansion_all(G: FiniteGroup) -> CheckReport:
    report = CheckReport("mcirc_expansion", G.label)
    memo = _McircMemo()
    lat = enumerate_subgroups(G)
    normals = lat.normal_subgroups()
    for S in lat:
        for M in normals:
            for N in normals:
                check_mcirc_expansion(G, S, M, N, report, memo)
    return report


def check_mcirc_factorization_all(G: FiniteGroup) -> CheckReport:
    report = CheckReport("mcirc_factorization", G.label)
    memo = _McircMemo()
    lat = enumerate_subgroups(G)
    normals = lat.normal_subgroups()
    for S in lat:
        for M in normals:
            for N in normals:
                if M <= N:
                    check_mcirc_factorization(G, S, M, N, report, memo)
    return report


def check_trivial_kernel(G: FiniteGroup) -> CheckReport:
    """m_{G,S,1} = m°_{G,S,1} = 1 for every S ≤ G."""
    report = CheckReport("trivial_kernel", G.label)
    one = G.trivial
    for S in enumerate_subgroups(G):
        values = (m_slice(G, S, one), m_circ(G, S, one))
        report.record(values == (1, 1), {"G": G.label, "S": _ref(G, S)}, values, (1, 1))
    return report


def check_m_slice_evaluators(G: FiniteGroup) -> CheckReport:
    """The direct sum for m_{G,S,N} equals the factored form, for all S and normal N."""
    report = CheckReport("m_slice_evaluators", G.label)
    lat = enumerate_subgroups(G)
    for S in lat:
        for N in lat.normal_subgroups():
            a, b = m_slice_direct(G, S, N), m_slice_factored(G, S, N)
            report.record(a == b, {"G": G.label, "S": _ref(G, S), "N": _ref(G, N)}, a, b)
    return report


def check_tau_circ(G: FiniteGroup) -> CheckReport:
    """For every S: τ°(G,S) is a T°-slice, a quotient of (G,S), dominates
    every T°-slice quotient (G/M, SM/M), and does not depend on the choice
    of maximal M up to isomorphism."""
    report = CheckReport("tau_circ", G.label)
    lat = enumerate_subgroups(G)
    normals = lat.normal_subgroups()
    for S in lat:
        inputs = {"G": G.label, "S": _ref(G, S)}
        try:
            tau = tau_circ(G, S)
        except ConsistencyError as exc:
            report.record(False, inputs, str(exc), "unique T°-slice quotient")
            continue
        H = tau.slice
        report.record(bool(is_t_circ_slice(H.ambient, H.S)), {**inputs, "property": "T°-slice"}, False, True)
        is_quot = is_slice_quotient(Slice.of(G, S), H) is not None
        report.record(is_quot, {**inputs, "property": "quotient of (G,S)"}, is_quot, True)
        for M in normals:
            target, _ = quotient_slice(G, S, M)
            if not is_t_circ_slice(target.ambient, target.S):
                continue
            dominates = is_slice_quotient(H, target) is not None
            report.record(
                dominates, {**inputs, "M": _ref(G, M), "property": "dominates (G/M, SM/M)"}, dominates, True
            )
    return report


def check_deflation_identities(G: FiniteGroup) -> CheckReport:
    """Def e_G^G = m_{G,N} e_{G/N}^{G/N} and Def ξ_{G,S}^G = m_{G,S,N} ξ_{G/N,SN/N}^{G/N}."""
    report = CheckReport("deflation", G.label)
    lat = enumerate_subgroups(G)
    for N in lat.normal_subgroups():
        Q, proj = quotient_group(G, N)
        lhs = deflate_burnside(idempotent_e(G, G.whole), N)
        rhs = m_constant(G, N) * idempotent_e(Q, Q.whole)
        report.record(lhs == rhs, {"G": G.label, "N": _ref(G, N), "kind": "burnside"}, lhs, rhs)
        for S in lat:
            lhs = deflate_slice(xi_idempotent(G, Slice.of(G, S)), N)
            rhs = m_slice(G, S, N) * xi_idempotent(Q, Slice.of(Q, proj.image(S)))
            report.record(lhs == rhs, {"G": G.label, "S": _ref(G, S), "N": _ref(G, N), "kind": "slice"}, lhs, rhs)
    return report


def check_idempotent_sums(G: FiniteGroup) -> CheckReport:
    """Σ_[H] e_H^G = [G/G] and Σ_[(T,S)] ξ_{T,S}^G = ⟨G,G⟩."""
    report = CheckReport("idempotent_sums", G.label)
    lat = enumerate_subgroups(G)
    total = BurnsideElement(G)
    for c in range(len(lat.classes)):
        total = total + idempotent_e(G, lat[lat.representative(c)])
    one = BurnsideElement.basis(G, G.whole)
    report.record(total == one, {"G": G.label, "kind": "burnside"}, total, one)
    sc = enumerate_slice_classes(G)
    xtotal = SliceBurnsideElement(G)
    for c in range(len(sc)):
        xtotal = xtotal + xi_idempotent(G, sc.representative(c))
    xone = SliceBurnsideElement(G, {sc.class_of(lat.top, lat.top): 1})
    report.record(xtotal == xone, {"G": G.label, "kind": "slice"}, xtotal, xone)
    return report


def check_beta(G: FiniteGroup) -> CheckReport:
    report = CheckReport("beta", G.label)
    try:
        Q, N = beta(G)
        ok = bool(is_b_group(Q))
        report.record(ok, {"G": G.label, "N": _ref(G, N)}, structure_name(Q), "a B-group")
    except ConsistencyError as exc:
        report.record(False, {"G": G.label}, str(exc), "a B-group")
    return report


GROUP_CHECKS: dict[str, Callable[[FiniteGroup], CheckReport]] = {
    "crapo": check_crapo_all,
    "mcirc_expansion": check_mcirc_expansion_all,
    "mcirc_factorization": check_mcirc_factorization_all,
    "trivial_kernel": check_trivial_kernel,
    "m_slice_evaluators": check_m_slice_evaluators,
    "tau_circ": check_tau_circ,
    "deflation": check_deflation_identities,
    "idempotent_sums": check_idempotent_sums,
    "beta": check_beta,
}


# THE C2 x D8 COUNTEREXAMPLE
# --------------------------


@dataclass
class Counterexample:
    """Named pieces of the C2 x D8 setup."""

    G: FiniteGroup
    a: int
    b: int
    c: int
    d: int
    S: Subgroup
    N: Subgroup
    M: Subgroup


def c2_x_d8_setup() -> Counterexample:
    C2, D8 = builtin("C 2"), builtin("D 8")
    G = direct_product(C2, D8, label="C2 x D8")
    a, b, c = G.generators  # a from C2; b (order 2), c (order 4) from D8
    d = G.mul[c][c]
    S = G.generated([a, b])
    N = G.generated([G.mul[a][d]])
    M = G.generated([d])
    return Counterexample(G, a, b, c, d, S, N, M)


def no_universal_t_quotient() -> CheckReport:
    """(G/N, SN/N) and (G/M, SM/M) are T-slice quotients of (G, S) with no
    common T-slice quotient of (G, S) above them."""
    x = c2_x_d8_setup()
    G, S, N, M = x.G, x.S, x.N, x.M
    report = CheckReport("c2_x_d8", G.label)
    Z = G.center()

    def claim(name: str, actual, expected):
        report.claims.append((name, actual, expected))
        report.record(actual == expected, {"assertion": name}, actual, expected)

    claim("|G| = 16", G.order, 16)
    claim("b has order 2, c has order 4", (G.element_order(x.b), G.element_order(x.c)), (2, 4))
    claim("|N| = |M| = 2", (N.order, M.order), (2, 2))
    claim("N and M are central", (N <= Z, M <= Z), (True, True))
    GN, projN = quotient_group(G, N)
    GM, projM = quotient_group(G, M)
    claim("G/N ≅ D8", find_isomorphism(GN, builtin("D 8")) is not None, True)
    claim("G/M ≅ C2^3", find_isomorphism(GM, builtin("E 2^3")) is not None, True)
    SG, _ = S.as_group()
    claim("S ≅ C2 x C2", find_isomorphism(SG, builtin("E 2^2")) is not None, True)
    qN, qM = Slice.of(GN, projN.image(S)), Slice.of(GM, projM.image(S))
    whole = Slice.of(G, S)
    claim(
        "(G/N, SN/N) and (G/M, SM/M) are quotients of (G, S)",
        (is_slice_quotient(whole, qN) is not None, is_slice_quotient(whole, qM) is not None),
        (True, True),
    )
    claim(
        "(G/N, SN/N) and (G/M, SM/M) are T-slices",
        (bool(is_t_slice(GN, qN.S)), bool(is_t_slice(GM, qM.S))),
        (True, True),
    )
    claim("(G, S) is not a T-slice", bool(is_t_slice(G, S)), False)
    universal = []
    for K in enumerate_subgroups(G).normal_subgroups():
        cand, _ = quotient_slice(G, S, K)
        if not is_t_slice(cand.ambient, cand.S):
            continue
        if is_slice_quotient(cand, qN) is not None and is_slice_quotient(cand, qM) is not None:
            universal.append(_ref(G, K))
    claim("no T-slice quotient of (G, S) dominates both", universal, [])
    return report


# RUNNER
# ------


@dataclass
class Summary:
    reports: list[CheckReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "reports": [r.to_dict() for r in self.reports]}


def run_all(
    catalog: Sequence[str] = DEFAULT_CATALOG,
    checks: Sequence[str] | None = None,
    cap: int = ORDER_CAP,
    include_counterexample: bool = True,
    on_build: Callable[[FiniteGroup, int], None] | None = None,
) -> Summary:
    """Run the named checks (default: all) on every group of the catalog.

    Groups over the order cap get a skip notice and the run continues.
    """
    names = list(GROUP_CHECKS) if checks is None else [c for c in checks if c in GROUP_CHECKS]
    summary = Summary()
    for text in catalog:
        try:
            G = build_group(text, cap)
        except OrderCapError as exc:
            summary.reports.append(CheckReport("build", text, skipped=str(exc)))
            continue
        if on_build is not None:
            on_build(G, cap)
        for name in names:
            summary.reports.append(GROUP_CHECKS[name](G))
    if include_counterexample and (checks is None or "c2_x_d8" in checks):
        summary.reports.append(no_universal_t_quotient())
    return summary
