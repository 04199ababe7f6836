"""Command-line surface: mmw <command> [flags].

Exit codes: 0 success, 1 domain error (syntax, caps, bad coordinates),
2 internal consistency failure.  The environment variable
MMW_UNIVERSE_CAP overrides the default context cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool

from . import formula as fm
from .context import CapExceededError, DegreeError, context
from .kripke import correspondence_check, find_countermodel
from .lattice import (STAR, InternalConsistencyError, SystemCoord, collapse,
                      enumerate_cmms, map_to_star)
from .minmatrix import ContextMismatchError, Minmatrix, normalize
from .orbit import display_label, orbit_map
from .substitution import all_substitutions, classify

__all__ = ["main"]


def _coord_value(text: str) -> int | str:
    if text == STAR:
        return STAR
    return int(text)


def _parse_formula(text: str) -> fm.Formula:
    return fm.parse(text)


def _print_minmatrix(m: Minmatrix, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(m.to_json(include_hex=True)))
    else:
        print(m.render_matrix())


def cmd_normalize(args) -> int:
    ctx = context(args.v, args.d)
    m = normalize(_parse_formula(args.formula), ctx)
    _print_minmatrix(m, args.format)
    return 0


def _orbit_set_of(m: Minmatrix) -> list[str]:
    return [lbl for lbl, orb in orbit_map(m.ctx).items() if orb <= m and orb.bits]


def _coord_of_cmm(m: Minmatrix, v: int) -> SystemCoord | None:
    for c in enumerate_cmms(v):
        if c.matrix == m:
            return c.coord
    return None


def cmd_collapse(args) -> int:
    ctx = context(args.v, 1)
    m = normalize(_parse_formula(args.formula), ctx)
    subs = all_substitutions(args.v) if args.exhaustive else None
    result = collapse(m, subs)
    coord = _coord_of_cmm(result, args.v)
    if args.format == "json":
        doc = result.to_json()
        doc["orbits"] = _orbit_set_of(result)
        doc["coord"] = str(coord) if coord else None
        print(json.dumps(doc))
    else:
        print(result.render_matrix())
        labels = _orbit_set_of(result)
        names = "+".join(display_label(l, args.v) for l in labels) or "(empty)"
        print(f"orbits: [{names}]")
        if coord is not None:
            print(f"coordinate: {coord}")
    return 0


def cmd_orbits(args) -> int:
    ctx = context(args.v, 1)
    orbits = orbit_map(ctx)
    if args.format == "json":
        print(json.dumps({lbl: list(orb.members()) for lbl, orb in orbits.items()}))
    else:
        for lbl, orb in orbits.items():
            print(f"{display_label(lbl, args.v)} ({orb.count} minterms): "
                  f"{list(orb.members())}")
            if args.matrices:
                print(orb.render_matrix())
                print()
    return 0


def _registry_name(coord: SystemCoord) -> str | None:
    from .axiom import registry_lookup
    entry = registry_lookup(coord)
    return entry.name if entry else None


def cmd_lattice(args) -> int:
    cmms = enumerate_cmms(args.v)
    if args.format == "json":
        out = []
        for c in cmms:
            star = map_to_star(c.coord, args.v)
            out.append({"coord": str(c.coord), "star": str(star),
                        "plane": c.coord.plane,
                        "x": c.coord.x, "y": c.coord.y,
                        "orbits": sorted(c.orbits),
                        "name": _registry_name(star),
                        "minterms": list(c.matrix.members())})
        print(json.dumps(out))
    elif args.format == "dot":
        print(_lattice_dot(args.v, cmms))
    else:
        for c in cmms:
            star = map_to_star(c.coord, args.v)
            name = _registry_name(star)
            labels = "+".join(display_label(l, args.v) for l in sorted(c.orbits)) \
                or "(empty)"
            tag = f"  ({name})" if name else ""
            print(f"{c.coord}  ->  {star}  [{labels}]{tag}")
    return 0


def _lattice_dot(v: int, cmms) -> str:
    from .lattice import build_hasse
    hasse = build_hasse(v)
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for plane in ("K", "D"):
        lines.append(f"  subgraph cluster_{plane} {{")
        lines.append(f'    label="{plane}-plane";')
        for c in cmms:
            if c.coord.plane != plane:
                continue
            star = map_to_star(c.coord, v)
            name = _registry_name(star)
            label = str(c.coord) + (f"\\n{name}" if name else "")
            lines.append(f'    "{c.coord}" [label="{label}"];')
        lines.append("  }")
    for a, b, orb in hasse.edges:
        lines.append(f'  "{a}" -> "{b}" [label="{display_label(orb, v)}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_axiom(args) -> int:
    coord = SystemCoord(args.plane, _coord_value(args.x), _coord_value(args.y))
    from .axiom import alpha_for
    axiom = alpha_for(coord, args.v, args.variant)
    ctx = context(args.v, 1)
    cmm = collapse(normalize(axiom, ctx))
    if args.format == "json":
        doc = {"coord": str(coord), "axiom": fm.render(axiom),
               "cmm": cmm.to_json(), "orbits": _orbit_set_of(cmm)}
        print(json.dumps(doc))
    else:
        print(fm.render(axiom))
        labels = "+".join(display_label(l, args.v) for l in _orbit_set_of(cmm)) \
            or "(empty)"
        print(f"CMM orbits: [{labels}]")
    return 0


def cmd_system_of(args) -> int:
    from .axiom import system_of
    f = _parse_formula(args.formula)
    coord, origin = system_of(f)
    ctx = context(origin, 1)
    cmm = collapse(normalize(f, ctx))
    labels = _orbit_set_of(cmm)
    name = _registry_name(coord)
    if args.format == "json":
        print(json.dumps({"coord": str(coord), "origin_v": origin,
                          "orbits": labels, "name": name}))
    else:
        print(f"coordinate: {coord}")
        print(f"origin context: K[{origin},1]")
        names = "+".join(display_label(l, origin) for l in labels) or "(empty)"
        print(f"orbits: [{names}]")
        if name:
            print(f"named system: {name}")
    return 0


def cmd_classify(args) -> int:
    mode = args.mode
    if mode is None:
        mode = "exhaustive" if args.v <= 2 else "reduced"
    classes = classify(args.v, mode)
    out = [{"size": c.size,
            "representative": {"v": c.representative.v,
                               "tables": list(c.representative.tables)},
            "key_digest": c.key_digest}
           for c in classes]
    print(json.dumps(out))
    return 0


def _check_coord(task) -> tuple[str, int, tuple]:
    v, plane, x, y, max_worlds, sample, seed = task
    rep = correspondence_check(v, SystemCoord(plane, x, y), max_worlds,
                               sample=sample, seed=seed)
    return str(rep.coord), rep.frames_checked, rep.violations


def cmd_frames(args) -> int:
    if not args.correspondence:
        print("nothing to do: pass --correspondence", file=sys.stderr)
        return 1
    if args.all_coords:
        coords = [c.coord for c in enumerate_cmms(args.v)]
    else:
        if args.plane is None or args.x is None or args.y is None:
            print("need --plane/--x/--y or --all-coords", file=sys.stderr)
            return 1
        coords = [SystemCoord(args.plane, _coord_value(args.x),
                              _coord_value(args.y))]
    tasks = [(args.v, c.plane, c.x, c.y, args.max_worlds, args.sample, args.seed)
             for c in coords]
    if args.threads > 1:
        with Pool(args.threads) as pool:
            results = pool.map(_check_coord, tasks)
    else:
        results = [_check_coord(t) for t in tasks]
    report = [{"coord": coord, "frames_checked": checked,
               "violations": list(viols)}
              for coord, checked, viols in results]
    bad = sum(len(r["violations"]) for r in report)
    if args.format == "json":
        print(json.dumps(report))
    else:
        for r in report:
            status = "ok" if not r["violations"] else f"{len(r['violations'])} VIOLATIONS"
            print(f"{r['coord']}: {r['frames_checked']} frames, {status}")
    if bad:
        print(f"{bad} correspondence violations", file=sys.stderr)
        return 2
    return 0


def cmd_countermodel(args) -> int:
    f = _parse_formula(args.formula)
    hit = find_countermodel(f, args.max_worlds)
    if hit is None:
        print(f"no countermodel with up to {args.max_worlds} worlds")
        return 0
    frame, model, w = hit
    doc = {"worlds": frame.size, "relation_rows": list(frame.rows),
           "valuation_minterms": list(model.assignment), "world": w}
    if args.format == "json":
        print(json.dumps(doc))
    else:
        print(f"falsified at world {w} of {frame.size}")
        for u in range(frame.size):
            seen = [t for t in range(frame.size) if frame.sees(u, t)]
            val = context(model.v, 0).minterm_formula(model.assignment[u])
            print(f"  w{u}: sees {seen}, valuation {fm.render(val)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mmw",
                                 description="minmatrix workbench for "
                                             "non-iterative normal modal logics")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json", "dot"),
                       default="text")
        return p

    p = add("normalize", cmd_normalize, help="formula to minmatrix")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("formula")

    p = add("collapse", cmd_collapse, help="CMM of a formula")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true",
                   help="close under every level-0 substitution (v <= 2)")
    p.add_argument("formula")

    p = add("orbits", cmd_orbits, help="prime orbits of K[v,1]")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--matrices", action="store_true")

    p = add("lattice", cmd_lattice, help="the CMM lattice of K[v,1]")
    p.add_argument("--v", type=int, required=True)

    p = add("axiom", cmd_axiom, help="defining axiom of a coordinate")
    p.add_argument("--plane", choices=("K", "D"), required=True)
    p.add_argument("--x", required=True, help="0..n-1 or *")
    p.add_argument("--y", required=True, help="-1..n-1 or *")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--variant", choices=("alpha", "alpha-prime"),
                   default="alpha")

    p = add("system-of", cmd_system_of, help="lattice position of a formula")
    p.add_argument("formula")

    p = add("classify", cmd_classify, help="substitution classes of S(v,0)")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "reduced"), default=None)
    p.add_argument("--threads", type=int, default=1)

    p = add("frames", cmd_frames, help="Kripke frame correspondence checks")
    p.add_argument("--correspondence", action="store_true")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--plane", choices=("K", "D"))
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--all-coords", action="store_true")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--sample", type=int, default=None,
                   help="random frames per size beyond exhaustive range")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)

    p = add("countermodel", cmd_countermodel, help="search small falsifying model")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=3)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (fm.FormulaSyntaxError, CapExceededError, DegreeError,
            ContextMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
