"""Command-line front end.

    sliceburnside info "C2 x D8"
    sliceburnside burnside C2 --m-table --format csv
    sliceburnside tau0 C4 --slice "#2"
    sliceburnside verify
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .burnside import beta, idempotent_e, is_b_group, m_constant
from .expr import ParseError, build_group
from .groups import ORDER_CAP, FiniteGroup, GroupError, Permutation, Subgroup, structure_name
from .lattice import enumerate_subgroups, lattice_from_payload, lattice_payload
from .slices import (
    Slice,
    enumerate_slice_classes,
    is_t_circ_slice,
    is_t_slice,
    m_circ,
    m_slice,
    slice_normalizer,
    tau_circ,
    xi_idempotent,
)
from .verify import DEFAULT_CATALOG, GROUP_CHECKS, no_universal_t_quotient, run_all

CACHE_VERSION = f"lattice-v1/{__version__}"
CACHE_ENV = "SLICEBURNSIDE_CACHE_DIR"


class LookupFailed(GroupError):
    pass


# OUTPUT
# ------


@dataclass
class Section:
    title: str
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)


@dataclass
class Result:
    group: str
    command: str
    sections: list[Section]
    status: str | None = None


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _csv_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return _text_value(v)


def _json_value(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    return v


def emit(result: Result, fmt: str) -> str:
    if fmt == "json":
        rows = []
        for sec in result.sections:
            for row in sec.rows:
                d = {"section": sec.title}
                d.update({c: _json_value(v) for c, v in zip(sec.columns, row)})
                rows.append(d)
        doc = {"group": result.group, "command": result.command, "rows": rows}
        if result.status is not None:
            doc["status"] = result.status
        return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for k, sec in enumerate(result.sections):
            if k:
                buf.write("\n")
            w.writerow(sec.columns)
            for row in sec.rows:
                w.writerow([_csv_value(v) for v in row])
        return buf.getvalue()
    out = [f"group: {result.group}"] if result.group else []
    for sec in result.sections:
        out.append("")
        out.append(f"== {sec.title} ==")
        cells = [sec.columns] + [[_text_value(v) for v in row] for row in sec.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(sec.columns))]
        for r in cells:
            out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    if result.status is not None:
        out.append("")
        out.append(result.status)
    return "\n".join(out) + "\n"


# CACHE
# -----


class LatticeCache:
    """Subgroup lists and Möbius values on disk, keyed by the table hash."""

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.enabled = True

    def _path(self, G: FiniteGroup) -> Path:
        return self.dir / f"{G.table_hash()}.json"

    def attach(self, G: FiniteGroup, cap: int = ORDER_CAP):
        """Load G's lattice from disk, or compute and store it."""
        if "lattice" in G.cache:
            return
        path = self._path(G)
        try:
            entry = json.loads(path.read_text())
            if entry.get("version") == CACHE_VERSION and entry.get("key") == G.table_hash():
                lattice_from_payload(G, entry["payload"])
                return
        except (OSError, ValueError, KeyError):
            pass
        lat = enumerate_subgroups(G, cap)
        if not self.enabled:
            return
        entry = {"version": CACHE_VERSION, "key": G.table_hash(), "order": G.order, "payload": lattice_payload(lat)}
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh)
            os.replace(tmp, path)
        except OSError as exc:
            print(f"warning: cache dir {self.dir} not writable ({exc}); continuing uncached", file=sys.stderr)
            self.enabled = False


# ADDRESSING
# ----------


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def resolve_subgroup(G: FiniteGroup, text: str) -> Subgroup:
    """``#k`` (1-based lattice position) or a generator list of element indices / cycles."""
    lat = enumerate_subgroups(G)
    text = text.strip()
    m = re.fullmatch(r"#\s*(\d+)", text)
    if m:
        k = int(m.group(1))
        if not 1 <= k <= len(lat):
            raise LookupFailed(f"no subgroup #{k} (refs run #1..#{len(lat)})")
        return lat[k - 1]
    body = text[1:-1] if text.startswith("<") and text.endswith(">") else text
    gens = []
    for item in _split_top(body, ","):
        if re.fullmatch(r"\d+", item):
            x = int(item)
            if x >= G.order:
                raise LookupFailed(f"no element {x}")
            gens.append(x)
            continue
        try:
            name = str(Permutation.parse(item))
        except ValueError as exc:
            raise LookupFailed(f"cannot read generator {item!r}: {exc}") from None
        labels = G.element_labels or ()
        if name not in labels:
            raise LookupFailed(f"element {item!r} not found in {G.label}")
        gens.append(labels.index(name))
    return G.generated(gens)


def resolve_slice(G: FiniteGroup, text: str) -> Slice:
    """``T;S`` or ``#i,#j``."""
    if ";" in text:
        parts = text.split(";")
    elif re.fullmatch(r"\s*#\s*\d+\s*,\s*#\s*\d+\s*", text):
        parts = text.split(",")
    else:
        raise LookupFailed(f"slice must be written 'T;S' or '#i,#j', got {text!r}")
    if len(parts) != 2:
        raise LookupFailed(f"slice needs exactly two subgroups, got {text!r}")
    T, S = (resolve_subgroup(G, p) for p in parts)
    if not S <= T:
        raise LookupFailed("slice needs S ≤ T")
    return Slice(G, T, S)


def _ref(G: FiniteGroup, H: Subgroup) -> str:
    return enumerate_subgroups(G).ref(H)


def _name(H: Subgroup) -> str:
    return structure_name(H.as_group()[0])


# COMMANDS
# --------


def cmd_info(G: FiniteGroup, args) -> Result:
    lat = enumerate_subgroups(G)
    spectrum = Counter(G.element_orders)
    rows = [
        ["order", G.order],
        ["structure", structure_name(G)],
        ["element orders", " ".join(f"{k}:{spectrum[k]}" for k in sorted(spectrum))],
        ["center order", G.center().order],
        ["subgroups", len(lat)],
        ["subgroup classes", len(lat.classes)],
        ["normal subgroups", len(lat.normal_subgroups())],
    ]
    return Result(G.label, "info", [Section("info", ["field", "value"], rows)])


def cmd_subgroups(G: FiniteGroup, args) -> Result:
    lat = enumerate_subgroups(G)
    rows = []
    for i, H in enumerate(lat):
        c = lat.class_of[i]
        gens = " ".join(G.element_name(g) for g in H.generating_set()) or "-"
        rows.append([lat.ref(i), H.order, _name(H), c, len(lat.classes[c]) == 1, gens])
    sec = Section("subgroups", ["ref", "order", "structure", "class", "normal", "generators"], rows)
    return Result(G.label, "subgroups", [sec])


def cmd_mobius(G: FiniteGroup, args) -> Result:
    lat = enumerate_subgroups(G)
    sections = [
        Section("mobius to G", ["X", "order", "mu(X,G)"], [[lat.ref(i), H.order, lat.mu(i, lat.top)] for i, H in enumerate(lat)])
    ]
    if args.pair:
        X, Y = (resolve_subgroup(G, t) for t in args.pair)
        if not X <= Y:
            raise LookupFailed("mu(X,Y) needs X ≤ Y")
        sections.append(Section("mobius pair", ["X", "Y", "mu(X,Y)"], [[_ref(G, X), _ref(G, Y), lat.mobius(X, Y)]]))
    return Result(G.label, "mobius", sections)


def cmd_burnside(G: FiniteGroup, args) -> Result:
    lat = enumerate_subgroups(G)
    rows = []
    for c in range(len(lat.classes)):
        H = lat[lat.representative(c)]
        e = idempotent_e(G, H)
        for k, v in e.coeffs.items():
            rows.append([_ref(G, H), _ref(G, lat[lat.representative(k)]), v])
    sections = [Section("idempotents", ["H", "K", "coeff [G/K]"], rows)]
    if args.m_table:
        sections.append(
            Section("m-table", ["N", "m", "ref"], [[_name(N), m_constant(G, N), _ref(G, N)] for N in lat.normal_subgroups()])
        )
    if args.beta:
        Q, N = beta(G)
        sections.append(
            Section(
                "beta",
                ["field", "value"],
                [["beta(G)", structure_name(Q)], ["order", Q.order], ["kernel", f"{_ref(G, N)} ({_name(N)})"],
                 ["B-group", bool(is_b_group(G))]],
            )
        )
    return Result(G.label, "burnside", sections)


def _evidence(G: FiniteGroup, title: str, cert, column: str) -> Section:
    rows = [[_ref(G, N), _name(N), v] for N, v in cert.table]
    rows.append(["all", "", cert.holds])
    return Section(title, ["N", "structure", column], rows)


def cmd_slices(G: FiniteGroup, args) -> Result:
    sc = enumerate_slice_classes(G)
    census = []
    for c, members in enumerate(sc.classes):
        rep = sc.representative(c)
        census.append([c, _ref(G, rep.T), _ref(G, rep.S), rep.T.order, rep.S.order, len(members),
                       slice_normalizer(G, rep).order])
    sections = [Section("slice classes", ["class", "T", "S", "|T|", "|S|", "size", "|N_G(T,S)|"], census)]
    if args.xi:
        sl = resolve_slice(G, args.xi)
        xi = xi_idempotent(G, sl)
        rows = []
        for k, v in xi.coeffs.items():
            rep = sc.representative(k)
            rows.append([_ref(G, rep.T), _ref(G, rep.S), v])
        sections.append(Section(f"xi {_ref(G, sl.T)},{_ref(G, sl.S)}", ["V", "U", "coeff <V,U>"], rows))
    if args.m_table:
        S = resolve_subgroup(G, args.m_table)
        lat = enumerate_subgroups(G)
        rows = [[_name(N), m_slice(G, S, N), m_circ(G, S, N), _ref(G, N)] for N in lat.normal_subgroups()]
        sections.append(Section(f"m-table S={_ref(G, S)}", ["N", "m", "m_circ", "ref"], rows))
    if args.tslice:
        S = resolve_subgroup(G, args.tslice)
        sections.append(_evidence(G, f"T-slice S={_ref(G, S)}", is_t_slice(G, S), "m"))
    if args.t0slice:
        S = resolve_subgroup(G, args.t0slice)
        sections.append(_evidence(G, f"T0-slice S={_ref(G, S)}", is_t_circ_slice(G, S), "m_circ"))
    return Result(G.label, "slices", sections)


def cmd_tau0(G: FiniteGroup, args) -> Result:
    S = resolve_subgroup(G, args.slice)
    tau = tau_circ(G, S)
    H = tau.slice
    rows = [
        ["tau0", f"({structure_name(H.ambient)}, {_name(H.S)})"],
        ["order", H.ambient.order],
        ["S image order", H.S.order],
        ["M", f"{_ref(G, tau.kernel)} ({_name(tau.kernel)})"],
        ["projection", " ".join(str(y) for y in tau.projection.images)],
    ]
    return Result(G.label, "tau0", [Section("tau0", ["field", "value"], rows)])


def cmd_verify(args, cache: LatticeCache | None) -> Result:
    if args.catalog:
        lines = Path(args.catalog).read_text().splitlines()
        catalog = [ln.split("#", 1)[0].strip() for ln in lines]
        catalog = [c for c in catalog if c]
    else:
        catalog = DEFAULT_CATALOG
    checks = args.check or None
    summary = run_all(catalog, checks, cap=args.cap, on_build=cache.attach if cache else None)
    rows, dumps = [], []
    for r in summary.reports:
        status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
        rows.append([r.name, r.subject, r.instances, len(r.failures), status])
        for f in r.failures:
            dumps.append([r.name, r.subject, json.dumps(f["inputs"], ensure_ascii=False), f["lhs"], f["rhs"]])
    sections = [Section("checks", ["check", "group", "instances", "failures", "status"], rows)]
    if dumps:
        sections.append(Section("failures", ["check", "group", "inputs", "lhs", "rhs"], dumps))
    return Result("", "verify", sections, status="PASS" if summary.passed else "FAIL")


def cmd_remark22(args) -> Result:
    r = no_universal_t_quotient()
    rows = [
        [name, _text_value(expected), _text_value(actual), "PASS" if actual == expected else "FAIL"]
        for name, actual, expected in r.claims
    ]
    return Result("C2 x D8", "remark22", [Section("assertions", ["assertion", "expected", "actual", "status"], rows)],
                  status="PASS" if r.passed else "FAIL")


# ENTRY POINT
# -----------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cap", type=int, default=ORDER_CAP, help="largest group order handled")
    common.add_argument("--cache-dir", default=None, help=f"lattice cache directory (default ${CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true", help="bypass the lattice cache")

    p = argparse.ArgumentParser(prog="sliceburnside", description="Slice Burnside idempotents and T°-slices of small groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def group_cmd(name, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("expr", help='group expression, e.g. "C2 x D8"')
        return sp

    group_cmd("info", "order, element orders, center, normal subgroup count")
    group_cmd("subgroups", "subgroup lattice with conjugacy classes")
    sp = group_cmd("mobius", "Möbius values μ(X,G)")
    sp.add_argument("--pair", nargs=2, metavar=("X", "Y"), help="also print μ(X,Y)")
    sp = group_cmd("burnside", "idempotents e_H^G")
    sp.add_argument("--m-table", action="store_true", help="add (N, m_{G,N}) rows")
    sp.add_argument("--beta", action="store_true", help="print beta(G) and its kernel")
    sp = group_cmd("slices", "slice class census")
    sp.add_argument("--xi", metavar="T,S", help="coefficients of ξ_{T,S}^G")
    sp.add_argument("--m-table", metavar="S", help="(N, m_{G,S,N}, m°_{G,S,N}) rows")
    sp.add_argument("--tslice", metavar="S", help="is (G,S) a T-slice")
    sp.add_argument("--t0slice", metavar="S", help="is (G,S) a T°-slice")
    sp = group_cmd("tau0", "largest quotient T°-slice of (G,S)")
    sp.add_argument("--slice", required=True, metavar="S")
    sp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    sp.add_argument("--catalog", help="file with one group expression per line")
    sp.add_argument("--check", action="append", choices=sorted(GROUP_CHECKS) + ["c2_x_d8"])
    sub.add_parser("remark22", parents=[common], help="the C2 x D8 counterexample for T-slices")
    return p


COMMANDS = {
    "info": cmd_info,
    "subgroups": cmd_subgroups,
    "mobius": cmd_mobius,
    "burnside": cmd_burnside,
    "slices": cmd_slices,
    "tau0": cmd_tau0,
}


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = _parser().parse_args(argv)
    cache_dir = None if args.no_cache else (args.cache_dir or os.environ.get(CACHE_ENV))
    cache = LatticeCache(cache_dir) if cache_dir else None
    try:
        if args.command == "verify":
            result = cmd_verify(args, cache)
        elif args.command == "remark22":
            result = cmd_remark22(args)
        else:
            G = build_group(args.expr, args.cap)
            if cache:
                cache.attach(G, args.cap)
            result = COMMANDS[args.command](G, args)
    except (ParseError, GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    stdout.write(emit(result, args.format))
    return 0 if result.status in (None, "PASS") else 1


if __name__ == "__main__":
    sys.exit(main())
