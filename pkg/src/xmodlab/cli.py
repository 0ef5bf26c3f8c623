"""Command line interface.

Subcommands validate objects from text files or the built-in catalog, run
the constructions, and emit reports either human-readable or as JSON
(``--json``).  Exit codes: 0 the object checked out, 1 the input object is
invalid, 2 usage, parse or I/O error.  Reports are deterministic: identical
inputs give byte-identical JSON up to the timing field.  ``--figures DIR``
additionally renders the report's tables to CSV and PNG files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import catalog as _catalog
from .actions import ActionSet, check_derived_action
from .core import DEFAULT_BUDGET, OmegaAlgebra, validate_algebra
from .derivations import (
    check_derivation,
    enumerate_derivations,
    is_regular,
    kernel_image_predicate,
    make_derivation,
    whitehead_group,
)
from .derived import derived_action_general, derived_crossed_module, derived_iso, iterate_chain
from .errors import (
    BudgetExceeded,
    InvalidCrossedModule,
    InvalidGroupoid,
    InvalidHomotopy,
    NotRegular,
    ParseError,
    RoundTripFailure,
    UnknownName,
    UsageError,
    XModLabError,
)
from .groupoid import (
    InternalGroupoid,
    roundtrip_crossed_module,
    roundtrip_groupoid,
    to_crossed_module,
    to_internal_groupoid,
    validate_groupoid,
)
from .homotopy import XModHomotopy, validate_xmod_homotopy
from .reporting import ValidationReport
from .textio import action_to_text, algebra_to_text, groupoid_to_text, parse_file, xmod_to_text
from .xmod import CrossedModule, validate_crossed_module

SCHEMA_VERSION = 1

_KIND_TYPES = {
    "algebra": OmegaAlgebra,
    "action": ActionSet,
    "xmod": CrossedModule,
    "groupoid": InternalGroupoid,
    "homotopy": XModHomotopy,
}


@dataclass
class Report:
    command: str
    status: str = "ok"  # ok | invalid | error
    findings: list = field(default_factory=list)
    timing_ms: float = 0.0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "findings": self.findings,
            "timing_ms": round(self.timing_ms, 3),
        }


def _violations(report: ValidationReport) -> list[dict]:
    return [{"kind": "violation", "rule": v.rule, "witness": list(v.witness),
             "message": v.message} for v in report.violations]


def _table_finding(name: str, rows) -> dict:
    return {"kind": "table", "name": name, "rows": [list(r) for r in rows]}


def _row_finding(name: str, row) -> dict:
    return {"kind": "row", "name": name, "values": list(row)}


def _count(what: str, value) -> dict:
    return {"kind": "count", "what": what, "value": value}


def _note(text: str) -> dict:
    return {"kind": "note", "text": text}


def _action_digest(act: ActionSet) -> str:
    payload = json.dumps(
        {"dot": [list(r) for r in act.dot],
         "stars": [[op, [list(r) for r in t]] for op, t in act.star_tables]},
        sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _resolve(ref: str, kind: str, name: str | None = None):
    """A catalog name, or a file whose blocks include the wanted kind."""
    if os.path.exists(ref):
        blocks = parse_file(ref, _catalog.context())
        wanted = [(k, n, obj) for k, n, obj in blocks
                  if k == kind or isinstance(obj, _KIND_TYPES[kind])]
        if name is not None:
            for k, n, obj in wanted:
                if n == name:
                    return n, obj
            raise UsageError(f"{ref} has no {kind} named {name!r}")
        if not wanted:
            raise UsageError(f"{ref} contains no {kind} block")
        _, n, obj = wanted[-1]
        return n, obj
    entry = _catalog.load(ref)
    if entry.kind != kind:
        raise UsageError(f"catalog entry {ref!r} is a {entry.kind}, expected {kind}")
    return entry.name, entry.payload


def _parse_d_option(value: str, length: int) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in value.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"--d expects integers, got {value!r}") from None
    if len(values) != length:
        raise UsageError(f"--d expects {length} entries, got {len(values)}")
    return values


# ---------------------------------------------------------------------------
# handlers: each fills a Report and may return figure tables

def _handle_validate(args, report):
    kind = args.command.split("-", 1)[1]
    name, obj = _resolve(args.target, kind, args.name)
    checker = {
        "algebra": validate_algebra,
        "action": check_derived_action,
        "xmod": validate_crossed_module,
        "groupoid": validate_groupoid,
    }[kind]
    result = checker(obj)
    report.findings.extend(_violations(result))
    report.findings.append(_note(f"{kind} {name}: {'valid' if result.valid else 'invalid'}"))
    if not result.valid:
        report.status = "invalid"


def _handle_to_groupoid(args, report):
    name, x = _resolve(args.xmod, "xmod")
    g = to_internal_groupoid(x)
    report.findings.append(_note(f"groupoid of {name}: {g.arrows.order} arrows, "
                                 f"{g.objects.order} objects"))
    report.findings.append({"kind": "object", "format": "groupoid-text",
                            "text": groupoid_to_text(g, f"{name}-gpd")})
    return {"arrows-add": (g.arrows.add, f"arrow addition of {name}-gpd")}


def _handle_from_groupoid(args, report):
    name, g = _resolve(args.groupoid, "groupoid")
    x = to_crossed_module(g)
    report.findings.append(_note(f"crossed module of {name}: top order {x.top.order}, "
                                 f"base order {x.base.order}"))
    report.findings.append({"kind": "object", "format": "xmod-text",
                            "text": xmod_to_text(x, f"{name}-xmod")})


def _handle_roundtrip(args, report):
    if (args.xmod is None) == (args.groupoid is None):
        raise UsageError("roundtrip needs exactly one of --xmod / --groupoid")
    if args.xmod is not None:
        name, x = _resolve(args.xmod, "xmod")
        m = roundtrip_crossed_module(x)
        report.findings.append(_note(f"{name}: isomorphic to its double conversion"))
        report.findings.append(_row_finding("iso-f1", m.f1))
        report.findings.append(_row_finding("iso-f0", m.f0))
    else:
        name, g = _resolve(args.groupoid, "groupoid")
        F = roundtrip_groupoid(g)
        report.findings.append(_note(f"{name}: isomorphic to its double conversion"))
        report.findings.append(_row_finding("iso-arrows", F.f1))
        report.findings.append(_row_finding("iso-objects", F.f0))


def _handle_derivations(args, report):
    name, x = _resolve(args.xmod, "xmod")
    ders = enumerate_derivations(x, args.budget)
    report.findings.append(_count("derivations", len(ders)))
    flagged = 0
    for i, d in enumerate(ders):
        regular = bool(is_regular(d, args.budget))
        in_kernel = kernel_image_predicate(d)
        entry = {"kind": "derivation", "index": i, "table": list(d.table),
                 "regular": regular, "image-in-kernel": in_kernel}
        report.findings.append(entry)
        if in_kernel and any(v != 0 for v in d.table):
            flagged += 1
            report.findings.append(
                {"kind": "kernel-image-counterexample", "index": i,
                 "table": list(d.table),
                 "message": "nonzero derivation with image inside the boundary kernel"})
    report.findings.append(_count("kernel-image-counterexamples", flagged))


def _handle_whitehead(args, report):
    name, x = _resolve(args.xmod, "xmod")
    ders = enumerate_derivations(x, args.budget)
    wg = whitehead_group(x, args.budget)
    report.findings.append(_count("derivations", len(ders)))
    report.findings.append(_count("regular-derivations", wg.order))
    for i, d in enumerate(wg.elements):
        report.findings.append({"kind": "element", "index": i, "table": list(d.table)})
    report.findings.append(_table_finding("cayley-wcomp", wg.cayley))
    report.findings.append(_count("identity-index", wg.identity_index))
    iso = _catalog.group_isomorphism_type(wg.cayley, wg.order) if wg.order <= 8 else None
    report.findings.append({"kind": "isomorphism-type", "value": iso})
    return {"cayley": (wg.cayley, f"Whitehead group of {name}"),
            "elements": ([d.table for d in wg.elements], f"regular derivation tables of {name}")}


def _handle_homotopy_check(args, report):
    if not os.path.exists(args.target):
        raise UsageError(f"homotopy-check expects a file, {args.target!r} not found")
    name, h = _resolve(args.target, "homotopy", args.name)
    result = validate_xmod_homotopy(h)
    report.findings.extend(_violations(result))
    report.findings.append(_note(f"homotopy {name}: {'valid' if result.valid else 'invalid'}"))
    if not result.valid:
        report.status = "invalid"


def _handle_derive(args, report):
    name, x = _resolve(args.xmod, "xmod")
    table = _parse_d_option(args.d, x.base.order)
    d = make_derivation(x, table)
    result = check_derivation(x, d.table)
    if not result.valid:
        report.status = "invalid"
        report.findings.extend(_violations(result))
        report.findings.append(_note("the given table is not a derivation"))
        return
    cert = is_regular(d, args.budget)
    report.findings.append(_row_finding("induced-top-map", d.f1))
    report.findings.append(_row_finding("induced-base-map", d.f0))
    report.findings.append({"kind": "regularity", "regular": bool(cert)})
    new_action = derived_action_general(x, d)
    report.findings.append({"kind": "derived-action", "digest": _action_digest(new_action),
                            "dot": [list(r) for r in new_action.dot]})
    if cert.regular:
        derived = derived_crossed_module(x, d, args.budget)
        iso = derived_iso(x, d, args.budget)
        report.findings.append(_row_finding("derived-boundary", derived.boundary))
        report.findings.append(_row_finding("iso-f0", iso.f0))
        report.findings.append({"kind": "covering", "value": True})
    else:
        report.findings.append(_note("derivation is singular; no derived boundary"))


def _handle_derive_chain(args, report):
    name, x = _resolve(args.xmod, "xmod")
    table = _parse_d_option(args.d, x.base.order)
    d = make_derivation(x, table)
    chain = iterate_chain(x, d, max_stages=args.max_stages, budget=args.budget)
    report.findings.append(_count("period", chain.period))
    boundaries = []
    for k, stage in enumerate(chain.stages):
        boundaries.append(stage.boundary)
        report.findings.append({
            "kind": "stage", "index": k,
            "boundary": list(stage.boundary),
            "action-digest": _action_digest(stage.action),
            "iso-f0": list(chain.links[k].f0),
        })
    return {"chain-boundaries": (boundaries, f"stage boundaries for {name}")}


def _handle_catalog(args, report):
    if args.what == "list":
        for n in _catalog.names():
            report.findings.append({"kind": "entry", "name": n,
                                    "entry-kind": _catalog.load(n).kind})
        report.findings.append(_count("entries", len(_catalog.names())))
        return
    if args.name is None:
        raise UsageError("catalog show needs a name")
    entry = _catalog.load(args.name)
    report.findings.append(_note(f"{entry.name}: {entry.kind}"))
    figures = {}
    if entry.kind == "algebra":
        report.findings.append({"kind": "object", "format": "algebra-text",
                                "text": algebra_to_text(entry.payload)})
        figures["add"] = (entry.payload.add, f"addition table of {entry.name}")
        for op, t in entry.payload.binary_tables:
            figures[f"op-{op}"] = (t, f"{op} table of {entry.name}")
    elif entry.kind == "xmod":
        report.findings.append({"kind": "object", "format": "xmod-text",
                                "text": xmod_to_text(entry.payload, entry.name)})
        figures["dot"] = (entry.payload.action.dot, f"action table of {entry.name}")
    elif entry.kind == "groupoid":
        report.findings.append({"kind": "object", "format": "groupoid-text",
                                "text": groupoid_to_text(entry.payload)})
        figures["arrows-add"] = (entry.payload.arrows.add,
                                 f"arrow addition of {entry.name}")
    else:
        act = entry.payload
        report.findings.append({"kind": "object", "format": "action-text",
                                "text": action_to_text(act, entry.name)})
        figures["dot"] = (act.dot, f"dot table of {entry.name}")
    return figures


# ---------------------------------------------------------------------------
# rendering and entry point

def _render_human(report: Report) -> str:
    """Everything except embedded object blocks is '# '-prefixed, so a
    report carrying an object is itself a parseable input file."""
    lines = [f"# command: {report.command}", f"# status: {report.status}"]
    for f in report.findings:
        kind = f.get("kind")
        if kind == "violation":
            lines.append(f"# violation {f['rule']} at {tuple(f['witness'])}: {f['message']}")
        elif kind == "note":
            lines.append(f"# {f['text']}")
        elif kind == "count":
            lines.append(f"# {f['what']}: {f['value']}")
        elif kind == "row":
            lines.append(f"# {f['name']}: {' '.join(str(v) for v in f['values'])}")
        elif kind == "table":
            lines.append(f"# {f['name']}:")
            for row in f["rows"]:
                lines.append("#   " + " ".join(str(v) for v in row))
        elif kind == "object":
            lines.append(f["text"].rstrip("\n"))
        elif kind == "derivation":
            flags = [" regular" if f["regular"] else " singular"]
            if f["image-in-kernel"]:
                flags.append(" image-in-kernel")
            lines.append(f"# d[{f['index']}] = {f['table']}{''.join(flags)}")
        elif kind == "kernel-image-counterexample":
            lines.append(f"# FLAG d[{f['index']}] = {f['table']}: {f['message']}")
        elif kind == "element":
            lines.append(f"# element {f['index']}: {f['table']}")
        elif kind == "stage":
            lines.append(f"# stage {f['index']}: boundary {f['boundary']} "
                         f"action {f['action-digest']} iso-f0 {f['iso-f0']}")
        elif kind == "entry":
            lines.append(f"# {f['name']} ({f['entry-kind']})")
        else:
            lines.append(f"# {json.dumps(f, sort_keys=True)}")
    lines.append(f"# (timing: {report.timing_ms:.1f} ms)")
    return "\n".join(lines) + "\n"


def _emit(report: Report, args, figures=None) -> None:
    if args.json:
        text = json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    else:
        text = _render_human(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "figures", None) and figures:
        from .figures import emit_table
        for stem, (rows, title) in sorted(figures.items()):
            table = rows if rows and isinstance(rows[0], (list, tuple)) else [rows]
            emit_table(args.figures, f"{report.command}-{stem}", table, title)


def _add_common(parser, figures=False):
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument("--out", help="write the report to a file instead of stdout")
    parser.add_argument("--budget", type=int,
                        default=int(os.environ.get("XMODLAB_BUDGET", DEFAULT_BUDGET)),
                        help="bound on enumeration candidates")
    parser.add_argument("--seed-order", choices=["fixed"], default="fixed",
                        help="enumeration order is canonical; there is no randomness")
    if figures:
        parser.add_argument("--figures", metavar="DIR",
                            help="render report tables to CSV and PNG files in DIR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xmodlab",
        description="Validate and compute with finite groups with operations, "
                    "crossed modules, internal groupoids and derivations.")
    sub = parser.add_subparsers(dest="command", required=True)

    for kind in ("algebra", "action", "xmod", "groupoid"):
        p = sub.add_parser(f"validate-{kind}", help=f"validate a {kind} from a file or the catalog")
        p.add_argument("target", help="file path or catalog name")
        p.add_argument("--name", help="block name to pick from the file")
        _add_common(p)

    p = sub.add_parser("to-groupoid", help="convert a crossed module to its internal groupoid")
    p.add_argument("--xmod", required=True)
    _add_common(p, figures=True)

    p = sub.add_parser("from-groupoid", help="convert an internal groupoid to its crossed module")
    p.add_argument("--groupoid", required=True)
    _add_common(p)

    p = sub.add_parser("roundtrip", help="check the double conversion isomorphism")
    p.add_argument("--xmod")
    p.add_argument("--groupoid")
    _add_common(p)

    p = sub.add_parser("derivations", help="enumerate the derivations of a crossed module")
    p.add_argument("--xmod", required=True)
    _add_common(p)

    p = sub.add_parser("whitehead", help="the group of regular derivations")
    p.add_argument("--xmod", required=True)
    _add_common(p, figures=True)

    p = sub.add_parser("homotopy-check", help="validate a homotopy file")
    p.add_argument("target", help="file containing a homotopy block")
    p.add_argument("--name", help="block name to pick from the file")
    _add_common(p)

    p = sub.add_parser("derive", help="twist a crossed module by a derivation")
    p.add_argument("--xmod", required=True)
    p.add_argument("--d", required=True, help="comma separated derivation table")
    _add_common(p)

    p = sub.add_parser("derive-chain", help="iterate the derived construction to its period")
    p.add_argument("--xmod", required=True)
    p.add_argument("--d", required=True, help="comma separated derivation table")
    p.add_argument("--max-stages", type=int, default=64)
    _add_common(p, figures=True)

    p = sub.add_parser("catalog", help="list or show built-in objects")
    p.add_argument("what", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    _add_common(p, figures=True)

    return parser


_HANDLERS = {
    "validate-algebra": _handle_validate,
    "validate-action": _handle_validate,
    "validate-xmod": _handle_validate,
    "validate-groupoid": _handle_validate,
    "to-groupoid": _handle_to_groupoid,
    "from-groupoid": _handle_from_groupoid,
    "roundtrip": _handle_roundtrip,
    "derivations": _handle_derivations,
    "whitehead": _handle_whitehead,
    "homotopy-check": _handle_homotopy_check,
    "derive": _handle_derive,
    "derive-chain": _handle_derive_chain,
    "catalog": _handle_catalog,
}

_INVALID_OBJECT_ERRORS = (InvalidCrossedModule, InvalidGroupoid, InvalidHomotopy,
                          RoundTripFailure, NotRegular)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    report = Report(command=args.command)
    start = time.perf_counter()
    try:
        figures = _HANDLERS[args.command](args, report)
    except _INVALID_OBJECT_ERRORS as exc:
        report.status = "invalid"
        inner = getattr(exc, "report", None)
        if inner is not None:
            report.findings.extend(_violations(inner))
        report.findings.append(_note(str(exc)))
        figures = None
    except (ParseError, UnknownName, UsageError, BudgetExceeded, FileNotFoundError,
            OSError) as exc:
        report.status = "error"
        report.findings.append(_note(str(exc)))
        report.timing_ms = (time.perf_counter() - start) * 1000
        sys.stderr.write(_render_human(report))
        return 2
    except XModLabError as exc:
        report.status = "error"
        report.findings.append(_note(str(exc)))
        report.timing_ms = (time.perf_counter() - start) * 1000
        sys.stderr.write(_render_human(report))
        return 2
    report.timing_ms = (time.perf_counter() - start) * 1000
    _emit(report, args, figures)
    return 0 if report.status == "ok" else 1


if __name__ == "__main__":
    raise SystemExit(main())
