"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a verification or validation
check fails (witnesses are in the report), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .commutation import (
    orbit_tower,
    quotient_matches_reduction,
    stabilized_commutation_check,
    verify,
)
from .errors import InternalInconsistency, OrbitLimitError, ValidationError
from .limits import enumerate_threads
from .search import MODES, SearchParams, search
from .serialize import dumps, load_json, parse_document, parse_tower_file, tower_to_dict
from .systems import ConstantTowerSpec, EquivariantTower, builtin_solenoid, materialize

COMMANDS = ("validate", "threads", "orbits", "verify", "stabilized", "demo-solenoid", "search")
DEFAULT_DEPTH = 3


class InputError(Exception):
    pass


def _resolve_tower(args):
    depth = args.depth
    obj = parse_tower_file(args.input, depth)
    spec = None
    if isinstance(obj, ConstantTowerSpec):
        spec, obj = obj, materialize(obj, DEFAULT_DEPTH if depth is None else depth)
    elif depth is not None and depth != obj.depth:
        if depth > obj.depth and not obj.extensible:
            raise InputError(f"depth {depth} exceeds the explicit tower depth {obj.depth}")
        obj = obj.extended(depth)
    args.depth = obj.depth
    return obj, spec


def _describe(obj):
    from .algebra import FiniteGroup, GroupHom, GSpace
    if isinstance(obj, FiniteGroup):
        return "group", {"order": obj.order, "identity": obj.identity}
    if isinstance(obj, GroupHom):
        return "hom", {"source": obj.source.order, "target": obj.target.order}
    if isinstance(obj, GSpace):
        return "gspace", {"order": obj.group.order, "carrier": obj.carrier}
    if isinstance(obj, ConstantTowerSpec):
        return "constant", {"space": obj.space, "order": obj.group.order}
    return "tower", {"depth": obj.depth, "carriers": list(obj.spaces.sizes),
                     "orders": list(obj.groups.sizes)}


def cmd_validate(args):
    try:
        obj = parse_document(load_json(args.input), args.depth)
    except ValidationError as exc:
        return 1, {"verdict": "invalid",
                   "witnesses": [{"location": exc.witness[0], **exc.cause.as_dict()}]}
    kind, sizes = _describe(obj)
    return 0, {"verdict": "valid", "object": kind, "sizes": sizes, "witnesses": []}


def cmd_threads(args):
    tower, _ = _resolve_tower(args)
    threads = enumerate_threads(tower)
    return 0, {"verdict": "ok", "sizes": {"threads": len(threads), "depth": tower.depth},
               "threads": [list(t.entries) for t in threads], "witnesses": []}


def cmd_orbits(args):
    tower, _ = _resolve_tower(args)
    ot = orbit_tower(tower)
    return 0, {
        "verdict": "ok",
        "sizes": {"carriers": list(tower.spaces.sizes), "orbits": list(ot.sizes)},
        "classes": [list(p.class_of) for p in ot.partitions],
        "induced_bonds": [list(ot.tower.bond(k)) for k in range(tower.depth)],
        "witnesses": [],
    }


def _psi_body(rep):
    witnesses = [w.as_dict() for w in rep.hypotheses.witnesses()]
    witnesses += [w.as_dict() for w in rep.failures]
    return {
        "verdict": "bijective" if rep.bijective else "not-bijective",
        "limit_verdict": rep.limit_verdict,
        "hypotheses": rep.hypotheses.as_dict(),
        "unique_transporters": rep.unique_transporters,
        "sizes": {"threads": rep.thread_count, "domain": rep.domain_size,
                  "codomain": rep.codomain_size, "depth": rep.depth},
        "surjective": rep.surjective,
        "injective": rep.injective,
        "witnesses": witnesses,
    }


def cmd_verify(args):
    tower, _ = _resolve_tower(args)
    rep = verify(tower)
    return (0 if rep.bijective else 1), _psi_body(rep)


def cmd_stabilized(args):
    obj = parse_tower_file(args.input)
    if not isinstance(obj, ConstantTowerSpec):
        raise InputError("stabilized needs a constant tower spec")
    r = stabilized_commutation_check(obj)
    return (0 if r.bijective else 1), {
        "verdict": "bijective" if r.bijective else "not-bijective",
        "sizes": {"omega": len(r.omega), "gamma": len(r.gamma),
                  "domain_classes": len(r.domain_classes), "q": len(r.q)},
        "omega": sorted(r.omega),
        "gamma": sorted(r.gamma),
        "closed": r.closed,
        "domain_classes": [list(c) for c in r.domain_classes],
        "q": sorted(r.q),
        "correspondence": list(r.correspondence),
        "witnesses": [],
    }


def cmd_demo_solenoid(args):
    p = 3 if args.p is None else args.p
    if p < 3 or p % 2 == 0:
        raise InputError("--p must be an odd integer >= 3")
    depth = DEFAULT_DEPTH if args.depth is None else args.depth
    args.p, args.depth = p, depth
    tower = builtin_solenoid(p, depth)
    if args.export:
        Path(args.export).write_text(dumps(tower_to_dict(tower)))
    rep = verify(tower)
    ot = orbit_tower(tower)
    matches = quotient_matches_reduction(ot, p)
    body = _psi_body(rep)
    body["orbit_counts"] = list(ot.sizes)
    body["quotient_is_reduction_tower"] = matches
    ok = rep.bijective and matches
    body["verdict"] = "bijective" if ok else "not-bijective"
    return (0 if ok else 1), body


def cmd_search(args):
    if args.depth is None:
        args.depth = DEFAULT_DEPTH
    params = SearchParams(
        max_carrier=args.max_carrier, max_group=args.max_group,
        depth=args.depth,
        count=args.count, violation=args.violation,
    )
    summary = search(args.seed, params)
    c = summary["counts"]
    ok = c["psi_bijective"] == c["towers"] and c["stabilized_bijective"] == c["constant_specs"]
    summary["verdict"] = "pass" if ok else "fail"
    summary["witnesses"] = summary.pop("failures")
    return (0 if ok else 1), summary


HANDLERS = {
    "validate": cmd_validate, "threads": cmd_threads, "orbits": cmd_orbits,
    "verify": cmd_verify, "stabilized": cmd_stabilized,
    "demo-solenoid": cmd_demo_solenoid, "search": cmd_search,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="orbitlimit", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", nargs="?", help="tower, group or G-space JSON file")
    parser.add_argument("--depth", type=int)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--p", type=int)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--export", help="demo-solenoid: write the tower file here")
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--max-carrier", type=int, default=6)
    parser.add_argument("--max-group", type=int, default=6)
    parser.add_argument("--violation", choices=MODES, default="none")
    return parser


def _config(args):
    return dict(vars(args))


def render_text(report) -> str:
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, separators=(",", ":"))
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), "", None
    report = {"tool": "orbitlimit", "version": __version__, "command": args.command,
              "config": _config(args)}
    try:
        if args.command not in ("demo-solenoid", "search") and not args.input:
            raise InputError(f"{args.command} needs an input file")
        if args.depth is not None and args.depth < 0:
            raise InputError("--depth must be non-negative")
        code, body = HANDLERS[args.command](args)
        report.update(body)
        report["config"] = _config(args)
    except InternalInconsistency as exc:
        code = 1
        report["verdict"] = "internal-inconsistency"
        report["error"] = exc.as_dict()
    except (InputError, OrbitLimitError) as exc:
        code = 2
        report["verdict"] = "input-error"
        report["error"] = exc.as_dict() if isinstance(exc, OrbitLimitError) else {"error": str(exc)}
    text = dumps(report) if args.format == "json" else render_text(report)
    return code, text, args.out


def run(argv=None):
    """Run one command and return ``(exit_code, report_text)``."""
    code, text, _ = _run(argv)
    return code, text


def main(argv=None):
    code, text, out = _run(argv)
    if out and text:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
