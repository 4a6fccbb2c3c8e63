"""Command-line driver for batch lattice, subdivision and f-vector studies.

All reports are JSON (line-delimited for scans) so they can be piped into
statistics; ``--format pretty`` renders small human-readable tables.
Exit codes: 0 success, 1 input or validation error, 2 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool

from .closure import HasseDiagram, NodeCapExceeded, ganter_hasse, poset_statistics
from .exactgeom import (
    Fan,
    PointConfig,
    fan_closure,
    hull,
    polytope_closure_facet,
    polytope_closure_vertex,
)
from .matroid import (
    Matroid,
    MatroidError,
    Valuation,
    corank_valuation,
    is_matroidal,
    non_matroidal_witness,
    parse_census_line,
)
from .subdivision import HeightFunction, coordinatize, regular_subdivision
from .troplin import (
    ValuatedMatroid,
    bergman_fan,
    fvector_report,
    tropical_linear_space,
)


class InputError(ValueError):
    pass


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(path: str) -> PointConfig:
    try:
        return PointConfig.from_json(_read(path))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad point configuration in {path}: {exc}") from exc


def _load_heights(path: str) -> HeightFunction:
    try:
        return HeightFunction.from_json(_read(path))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad height function in {path}: {exc}") from exc


def _load_matroid(path: str) -> Matroid:
    try:
        return Matroid.from_json(_read(path))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad matroid in {path}: {exc}") from exc


def _load_valuation(owner: Matroid, path: str) -> Valuation:
    try:
        return Valuation.from_json(owner, _read(path))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad valuation in {path}: {exc}") from exc


def _diagram_output(diagram: HasseDiagram, fmt: str, f_vec=None) -> str:
    if fmt == "dot":
        return diagram.to_dot()
    payload = json.loads(diagram.to_json())
    if f_vec is not None:
        payload["f_vector"] = list(f_vec)
    if fmt == "pretty":
        lines = [
            f"nodes: {len(diagram.nodes)}",
            f"arcs:  {len(diagram.arcs)}",
        ]
        if f_vec is not None:
            lines.append(f"f-vector: {tuple(f_vec)}")
        return "\n".join(lines) + "\n"
    return json.dumps(payload, sort_keys=True) + "\n"


def _face_lattice_f_vector(diagram: HasseDiagram, inverted: bool) -> list[int]:
    heights = diagram.heights()
    counts = poset_statistics(diagram, lambda m: heights[diagram.index[m]])
    inner = counts[1:-1] if len(counts) > 2 else []
    return inner[::-1] if inverted else inner


def cmd_face_lattice(args) -> int:
    config = _load_config(args.input)
    hrep, inc, flags = hull(config)
    if args.encoding == "vertex":
        system = polytope_closure_vertex(inc.restricted_to(flags))
        inverted = False
    else:
        if not hrep.facets:
            raise InputError("facet encoding needs a polytope with facets")
        system = polytope_closure_facet(inc)
        inverted = True
    diagram = ganter_hasse(system, node_cap=args.node_cap)
    _emit(
        _diagram_output(diagram, args.format, _face_lattice_f_vector(diagram, inverted)),
        args.output,
    )
    return 0


def cmd_fan_lattice(args) -> int:
    try:
        fan = Fan.from_json(_read(args.input))
        system = fan_closure(fan)
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad fan in {args.input}: {exc}") from exc
    diagram = ganter_hasse(system, node_cap=args.node_cap)
    _emit(_diagram_output(diagram, args.format), args.output)
    return 0


def cmd_flats(args) -> int:
    m = _load_matroid(args.input)
    diagram = ganter_hasse(
        m.closure_system(), skip_minimality=True, node_cap=args.node_cap
    )
    f_vec = poset_statistics(diagram, m.rank)
    _emit(_diagram_output(diagram, args.format, f_vec), args.output)
    return 0


def _subdivision_payload(sub) -> dict:
    payload = json.loads(sub.to_json())
    zero_one = all(x in (0, 1) for p in sub.config.points for x in p) and (
        len({sum(p) for p in sub.config.points}) == 1
    )
    if zero_one:
        witness = non_matroidal_witness(sub)
        payload["matroidal"] = witness is None
        payload["witness_edge"] = None if witness is None else [str(x) for x in witness[1]]
    else:
        payload["matroidal"] = None
        payload["witness_edge"] = None
    return payload


def cmd_subdivide(args) -> int:
    config = _load_config(args.points)
    heights = _load_heights(args.heights)
    if len(heights.values) != len(config.points):
        raise InputError("heights length must match point count")
    sub = regular_subdivision(config, heights)
    _emit(json.dumps(_subdivision_payload(sub), sort_keys=True) + "\n", args.output)
    return 0


def _gamma_for(sub, mode: str):
    if mode == "none":
        return []
    if mode == "all":
        return list(sub.boundary_facets)
    if mode == "loops":
        from .troplin import _loop_faces

        zero_one = all(x in (0, 1) for p in sub.config.points for x in p)
        if not zero_one:
            raise InputError("--gamma loops needs a 0/1 point configuration")
        return _loop_faces(sub.config)
    raise InputError(f"unknown gamma mode {mode!r}")


def cmd_tightspan(args) -> int:
    config = _load_config(args.points)
    heights = _load_heights(args.heights)
    if len(heights.values) != len(config.points):
        raise InputError("heights length must match point count")
    sub = regular_subdivision(config, heights)
    span = coordinatize(sub, _gamma_for(sub, args.gamma), node_cap=args.node_cap)
    _emit(span.to_json(quotient=args.quotient == "on") + "\n", args.output)
    return 0


def _tls_output(tls, fmt: str) -> str:
    if fmt == "pretty":
        rep = fvector_report(tls)
        lines = [
            f"(n, r) = ({rep['n']}, {rep['r']})",
            f"dim: {rep['dim']}   lineality dim: {rep['lineality_dim']}",
            f"f-vector:         {tuple(rep['f_vector'])}",
            f"bounded f-vector: {tuple(rep['bounded_f_vector'])}",
            f"conjectured bound:{tuple(rep['speyer_bounds'])}",
            f"within bound:     {all(rep['within_bound'])}",
        ]
        return "\n".join(lines) + "\n"
    data = json.loads(tls.to_json())
    data.update(fvector_report(tls))
    return json.dumps(data, sort_keys=True) + "\n"


def cmd_tls(args) -> int:
    m = _load_matroid(args.matroid)
    v = _load_valuation(m, args.valuation)
    vm = ValuatedMatroid(matroid=m, valuation=v)
    tls = tropical_linear_space(vm, node_cap=args.node_cap)
    _emit(_tls_output(tls, args.format), args.output)
    return 0


def cmd_bergman(args) -> int:
    m = _load_matroid(args.input)
    tls = bergman_fan(m, node_cap=args.node_cap)
    _emit(_tls_output(tls, args.format), args.output)
    return 0


def cmd_corank_lift(args) -> int:
    m = _load_matroid(args.input)
    v = corank_valuation(m)
    _emit(v.to_json() + "\n", args.output)
    if args.emit_uniform:
        with open(args.emit_uniform, "w", encoding="utf-8") as fh:
            fh.write(Matroid.uniform(m.r, m.n).to_json() + "\n")
    return 0


def _scan_line(task) -> dict:
    lineno, line, n, r, order, lift, node_cap = task
    record = {"line": lineno}
    try:
        m = parse_census_line(line, n, r, order=order)
        if lift == "corank":
            v = corank_valuation(m)
            vm = ValuatedMatroid(matroid=v.owner, valuation=v)
            tls = tropical_linear_space(vm, node_cap=node_cap)
        else:
            tls = bergman_fan(m, node_cap=node_cap)
        record.update(fvector_report(tls))
        record["ok"] = True
    except NodeCapExceeded as exc:
        record.update(ok=False, error=str(exc), node_cap=True)
    except (MatroidError, ValueError) as exc:
        record.update(ok=False, error=str(exc))
    return record


def cmd_fvector_scan(args) -> int:
    text = _read(args.census)
    lines = [
        (i, ln.strip())
        for i, ln in enumerate(text.splitlines())
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    tasks = [
        (i, ln, args.n, args.r, args.order, args.lift, args.node_cap)
        for i, ln in lines
    ]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            records = pool.map(_scan_line, tasks)
    else:
        records = [_scan_line(t) for t in tasks]

    ok = sum(1 for rec in records if rec.get("ok"))
    if args.format == "pretty":
        out = []
        for rec in records:
            if rec.get("ok"):
                out.append(
                    f"line {rec['line']:4d}  bounded {tuple(rec['bounded_f_vector'])}"
                    f"  f {tuple(rec['f_vector'])}"
                )
            else:
                out.append(f"line {rec['line']:4d}  SKIPPED: {rec['error']}")
        out.append(f"summary: {ok} ok, {len(records) - ok} failed")
        _emit("\n".join(out) + "\n", args.output)
    else:
        body = "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in records)
        body += json.dumps(
            {"summary": {"ok": ok, "failed": len(records) - ok}}, sort_keys=True
        ) + "\n"
        _emit(body, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tightspan",
        description="Hasse diagrams of closure systems, polytope duals and "
        "tropical linear spaces",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("json", "dot", "pretty")):
        p.add_argument("--format", choices=fmt_choices, default="json")
        p.add_argument("--node-cap", type=int, default=10_000_000)
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("face-lattice", help="face lattice of a polytope")
    p.add_argument("input")
    p.add_argument("--encoding", choices=("vertex", "facet"), default="vertex")
    common(p)
    p.set_defaults(func=cmd_face_lattice)

    p = sub.add_parser("fan-lattice", help="face lattice of a polyhedral fan")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_fan_lattice)

    p = sub.add_parser("flats", help="lattice of flats of a matroid")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("subdivide", help="regular subdivision of lifted points")
    p.add_argument("points")
    p.add_argument("heights")
    p.add_argument("--node-cap", type=int, default=10_000_000)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("tightspan", help="coordinatized extended tight span")
    p.add_argument("points")
    p.add_argument("heights")
    p.add_argument("--gamma", choices=("all", "loops", "none"), default="none")
    p.add_argument("--quotient", choices=("on", "off"), default="on")
    p.add_argument("--node-cap", type=int, default=10_000_000)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_tightspan)

    p = sub.add_parser("tls", help="tropical linear space of a valuated matroid")
    p.add_argument("matroid")
    p.add_argument("valuation")
    common(p, fmt_choices=("json", "pretty"))
    p.set_defaults(func=cmd_tls)

    p = sub.add_parser("bergman", help="Bergman fan (trivial valuation)")
    p.add_argument("input")
    common(p, fmt_choices=("json", "pretty"))
    p.set_defaults(func=cmd_bergman)

    p = sub.add_parser("corank-lift", help="corank valuation on the uniform matroid")
    p.add_argument("input")
    p.add_argument("--emit-uniform", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_corank_lift)

    p = sub.add_parser("fvector-scan", help="f-vector report per census line")
    p.add_argument("census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", choices=("lex", "revlex"), default="lex")
    p.add_argument("--lift", choices=("trivial", "corank"), default="trivial")
    p.add_argument("--jobs", type=int, default=1)
    common(p, fmt_choices=("json", "pretty"))
    p.set_defaults(func=cmd_fvector_scan)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NodeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, MatroidError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
