"""Command-line interface.

One subcommand per operation; with ``--json`` every run emits exactly one
JSON document (schema version 1) on stdout, otherwise a short human
summary.  Exit codes: 0 computed, 1 property violated / infeasible,
2 usage or input error, 3 timeout ("unknown").
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import configs, density, discharging, fii, generators, starcolor
from .graphs import (Graph, GraphError, parse_graph, serialize_graph, girth,
                     classify_vertices, find_pendent_triangles, INFINITY)

SCHEMA = 1

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from exc


def _load_graph(args) -> Graph:
    try:
        return parse_graph(_read_text(args.file), args.format)
    except GraphError as exc:
        raise _CliError(f"bad graph input: {exc}") from exc


def _frac(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        payload = {"schema": SCHEMA, "command": args.command, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human + "\n")


def _timeout_s(args) -> float | None:
    ms = getattr(args, "timeout_ms", None)
    return ms / 1000.0 if ms else None


# -- subcommand handlers ----------------------------------------------------

def _cmd_mad(args) -> int:
    g = _load_graph(args)
    d = density.mad(g)
    ok83, violation = density.mad_le_8_3(g)
    payload = {"value": _frac(d.value), "witness": list(d.witness),
               "le_8_3": ok83,
               "violating_set": list(violation) if violation else None}
    _emit(args, payload, f"mad = {_frac(d.value)} witness {list(d.witness)}"
          f" (mad <= 8/3: {ok83})")
    return EXIT_OK


def _cmd_rho_star(args) -> int:
    g = _load_graph(args)
    seed = _parse_vertices(args.seed, g.n)
    res = density.rho_star(g, seed)
    payload = {"value": res.value, "witness": list(res.minimizer),
               "seed": sorted(seed)}
    _emit(args, payload, f"rho* = {res.value} minimizer {list(res.minimizer)}")
    return EXIT_OK


def _parse_vertices(spec: str | None, n: int) -> list[int]:
    if not spec:
        return []
    try:
        vs = [int(tok) for tok in spec.replace(",", " ").split()]
    except ValueError as exc:
        raise _CliError(f"bad vertex list {spec!r}") from exc
    for v in vs:
        if not 0 <= v < n:
            raise _CliError(f"vertex {v} out of range 0..{n - 1}")
    return vs


def _cmd_girth(args) -> int:
    g = _load_graph(args)
    val = girth(g)
    out = "infinity" if val == INFINITY else int(val)
    _emit(args, {"girth": out}, f"girth = {out}")
    return EXIT_OK


def _cmd_classify(args) -> int:
    g = _load_graph(args)
    cls = classify_vertices(g)
    tris = find_pendent_triangles(g)
    payload = {"classes": [c.value for c in cls],
               "degrees": g.degrees(),
               "pendent_triangles": [list(t.cycle) for t in tris]}
    human = "\n".join(f"{v} ({g.name_of(v)}): {cls[v].value}" for v in range(g.n)) \
        or "(empty graph)"
    _emit(args, payload, human)
    return EXIT_OK


def _load_coloring(path: str, n: int) -> starcolor.Coloring:
    doc = json.loads(_read_text(path))
    colors = doc["colors"] if isinstance(doc, dict) else doc
    if len(colors) != n:
        raise _CliError(f"coloring covers {len(colors)} vertices, graph has {n}")
    palette = (doc.get("palette_size") if isinstance(doc, dict) else None) \
        or (max(colors) + 1 if colors else 1)
    return starcolor.Coloring(tuple(colors), palette)


def _cmd_star_verify(args) -> int:
    g = _load_graph(args)
    coloring = _load_coloring(args.coloring, g.n)
    ok, witness = starcolor.is_star_coloring(g, coloring)
    payload = {"valid": ok,
               "violation": {"kind": witness[0], "vertices": list(witness[1])}
               if witness else None}
    _emit(args, payload, "valid star coloring" if ok
          else f"violation: {witness[0]} {list(witness[1])}")
    return EXIT_OK if ok else EXIT_VIOLATED


def _cmd_star_color(args) -> int:
    g = _load_graph(args)
    try:
        res = starcolor.star_chromatic_number(g, args.limit, force=args.force)
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    if res is None:
        _emit(args, {"chi_s": None, "exceeds_limit": args.limit},
              f"star chromatic number exceeds limit {args.limit}")
        return EXIT_VIOLATED
    k, coloring = res
    payload = {"chi_s": k, "coloring": list(coloring.colors)}
    _emit(args, payload, f"chi_s = {k} coloring {list(coloring.colors)}")
    return EXIT_OK


def _load_partition(path: str, n: int, k: int) -> fii.FiiPartition:
    doc = json.loads(_read_text(path))
    labels = doc["labels"] if isinstance(doc, dict) else doc
    if len(labels) != n:
        raise _CliError(f"partition covers {len(labels)} vertices, graph has {n}")
    parsed = [fii.parse_label(l, k) if isinstance(l, str) else int(l)
              for l in labels]
    return fii.FiiPartition(tuple(parsed), k)


def _cmd_fii_find(args) -> int:
    g = _load_graph(args)
    res = fii.find_fii(g, args.k, forcing=not args.no_forcing,
                       timeout_s=_timeout_s(args))
    payload = {"status": res.status, "k": args.k, "nodes": res.nodes,
               "forced": res.forced, "exhausted": res.exhausted,
               "partition": res.partition.names() if res.partition else None}
    _emit(args, payload, f"{res.status} (nodes {res.nodes}, forced {res.forced})")
    if res.status == "feasible":
        return EXIT_OK
    return EXIT_TIMEOUT if res.status == "unknown" else EXIT_VIOLATED


def _cmd_fii_verify(args) -> int:
    g = _load_graph(args)
    part = _load_partition(args.partition, g.n, args.k)
    ok, witness = fii.verify_fii(g, part)
    payload = {"valid": ok,
               "violation": {"kind": witness[0], "detail": list(witness[1])}
               if witness else None}
    _emit(args, payload, "valid partition" if ok
          else f"violation: {witness[0]} {list(witness[1])}")
    return EXIT_OK if ok else EXIT_VIOLATED


def _cmd_star5(args) -> int:
    g = _load_graph(args)
    res = fii.find_fii(g, 2, timeout_s=_timeout_s(args))
    if res.status == "unknown":
        _emit(args, {"status": "unknown"}, "unknown (timeout)")
        return EXIT_TIMEOUT
    if res.status == "infeasible":
        _emit(args, {"status": "infeasible", "nodes": res.nodes,
                     "exhausted": res.exhausted},
              f"no FII-partition (exhausted, nodes {res.nodes})")
        return EXIT_VIOLATED
    coloring = fii.fii_to_star5(g, res.partition)
    ok, _ = starcolor.is_star_coloring(g, coloring)
    payload = {"status": "feasible", "partition": res.partition.names(),
               "coloring": list(coloring.colors), "verified": ok}
    _emit(args, payload, f"star 5-coloring {list(coloring.colors)}")
    return EXIT_OK


def _cmd_boundary(args) -> int:
    try:
        paths = sorted(Path(args.corpus).iterdir())
    except OSError as exc:
        raise _CliError(f"cannot read corpus directory: {exc}") from exc
    corpus = []
    for p in paths:
        if p.is_file():
            try:
                corpus.append((p.name, parse_graph(p.read_text(), args.format)))
            except GraphError as exc:
                raise _CliError(f"bad graph in {p.name}: {exc}") from exc
    report = fii.boundary_search(args.k, corpus, timeout_s=_timeout_s(args))
    payload = {
        "k": args.k,
        "entries": [{"name": e.name, "n": e.n, "mad": _frac(e.mad),
                     "status": e.status} for e in report.entries],
        "min_infeasible_mad": _frac(report.min_infeasible_mad)
        if report.min_infeasible_mad is not None else None,
        "unknown": report.unknown_count,
        "note": "empirical bound only",
    }
    human = (f"k={args.k}: {len(report.entries)} graphs, "
             f"min infeasible mad = {payload['min_infeasible_mad']}")
    _emit(args, payload, human)
    return EXIT_TIMEOUT if report.unknown_count else EXIT_OK


def _cmd_config_scan(args) -> int:
    g = _load_graph(args)
    ids = tuple(args.ids.split(",")) if args.ids else None
    try:
        matches = configs.scan_configs(g, ids)
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    payload = {"matches": [
        {"config": m.config_id,
         "vertices": {k: (list(v) if isinstance(v, tuple) else v)
                      for k, v in m.vertices}}
        for m in matches]}
    human = "\n".join(f"{m.config_id}: {dict(m.vertices)}" for m in matches) \
        or "no matches"
    _emit(args, payload, human)
    return EXIT_OK


def _cmd_lemma_check(args) -> int:
    g = _load_graph(args)
    matches = configs.scan_configs(g, (args.config,))
    if not matches:
        raise _CliError(f"no {args.config} match in input", EXIT_VIOLATED)
    if args.match:
        roles = json.loads(_read_text(args.match))
        wanted = {k: tuple(v) if isinstance(v, list) else v
                  for k, v in roles.items()}
        picked = [m for m in matches
                  if all(m.role(k) == v for k, v in wanted.items())]
        if not picked:
            raise _CliError(f"no {args.config} match with roles {wanted}")
        match = picked[0]
    else:
        match = matches[args.match_index]
    report = configs.verify_lemma_extension(g, match)
    payload = {"config": args.config,
               "deleted": list(report.plan.deleted),
               "mods": [list(m) for m in report.plan.mods],
               "h_partitions": report.h_partitions,
               "distinct_restrictions": report.distinct_restrictions,
               "extended": report.extended,
               "vacuous": report.vacuous,
               "passed": report.passed,
               "failures": [list(f) for f in report.failures[:5]]}
    human = (f"{args.config}: {report.extended}/{report.h_partitions} "
             f"partitions extend"
             + (" (vacuous)" if report.vacuous else ""))
    _emit(args, payload, human)
    return EXIT_OK if report.passed else EXIT_VIOLATED


def _cmd_attach(args) -> int:
    g = _load_graph(args)
    try:
        gadget = configs.gadget_by_name(args.gadget)
        result = configs.attach_gadget(g, args.at, gadget)
    except (ValueError, GraphError) as exc:
        raise _CliError(str(exc)) from exc
    out = serialize_graph(result, args.out_format)
    if args.json:
        _emit(args, {"graph": out.strip(), "n": result.n,
                     "m": result.edge_count}, out)
    else:
        sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return EXIT_OK


def _cmd_discharge(args) -> int:
    g = _load_graph(args)
    table = discharging.run_discharging(g)
    payload = {
        "initial": [_frac(x) for x in table.initial],
        "final": [_frac(x) for x in table.final],
        "total": _frac(table.total),
        "transfers": [{"from": t.source, "to": t.target,
                       "amount": _frac(t.amount), "rule": t.rule}
                      for t in table.transfers],
    }
    _emit(args, payload,
          f"total charge {_frac(table.total)} = 2|E| over {g.n} vertices, "
          f"{len(table.transfers)} transfers")
    return EXIT_OK


def _cmd_discharge_audit(args) -> int:
    g = _load_graph(args)
    report = discharging.audit_final_charges(g)
    payload = {"deficits": [
        {"vertex": d.vertex, "final": _frac(d.final),
         "nearby_configs": list(d.nearby_configs), "special": d.special}
        for d in report.deficits]}
    human = "no deficits" if report.clean else "\n".join(
        f"vertex {d.vertex}: {_frac(d.final)} < 8/3, near {list(d.nearby_configs)}"
        + (f" [{d.special}]" if d.special else "")
        for d in report.deficits)
    _emit(args, payload, human)
    return EXIT_OK if report.clean else EXIT_VIOLATED


def _cmd_terminal_partition(args) -> int:
    g = _load_graph(args)
    res = discharging.build_terminal_partition(g)
    if not res.applicable:
        _emit(args, {"applicable": False, "reason": res.reason},
              f"inapplicable: {res.reason}")
        return EXIT_VIOLATED
    sets = res.sets or discharging.TerminalSets()
    payload = {"applicable": True,
               "degenerate": list(res.degenerate),
               "partition": res.partition.names(),
               "sets": {name: list(getattr(sets, name))
                        for name in ("X", "Y_alpha", "Y_beta", "W_X", "W_alpha",
                                     "W_beta", "T_X", "T_alpha", "T_beta",
                                     "Z", "F0")}}
    _emit(args, payload, f"FII-partition {res.partition.names()}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.family == "g5n":
        g = generators.gen_g5n(args.n)
        text = serialize_graph(g, args.out_format)
        if args.out:
            Path(args.out).write_text(text + ("" if text.endswith("\n") else "\n"))
            _emit(args, {"written": args.out, "n": g.n, "m": g.edge_count},
                  f"wrote {args.out} ({g.n} vertices, {g.edge_count} edges)")
        elif args.json:
            _emit(args, {"graph": text.strip(), "n": g.n, "m": g.edge_count}, "")
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return EXIT_OK
    if args.family == "corpus":
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        names = []
        for name, g in generators.gen_corpus(args.count, args.n_max,
                                             Fraction(args.bound), args.seed):
            path = outdir / f"{name}.g6"
            path.write_text(serialize_graph(g, "graph6") + "\n")
            names.append(path.name)
        _emit(args, {"written": names, "dir": str(outdir)},
              f"wrote {len(names)} graphs to {outdir}")
        return EXIT_OK
    if args.family in ("cycle", "path"):
        g = generators.gen_cycle(args.n) if args.family == "cycle" \
            else generators.gen_path(args.n)
        text = serialize_graph(g, args.out_format)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return EXIT_OK
    raise _CliError(f"unknown family {args.family!r}")


# -- parser -----------------------------------------------------------------

def _add_graph_arg(sub, **kwargs):
    sub.add_argument("file", help="input graph file, or - for stdin", **kwargs)
    sub.add_argument("--format", default="auto",
                     choices=("auto", "graph6", "edgelist", "dimacs"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="starpart",
        description="Exact star-coloring / sparse-partition toolkit.")
    ap.add_argument("--json", action="store_true",
                    help="emit one JSON document on stdout")
    ap.add_argument("--timeout-ms", type=int, default=None,
                    help="search budget; expiry exits 3 with status unknown")
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("mad", help="exact maximum average degree")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_mad)

    s = sp.add_parser("rho-star", help="constrained potential minimum")
    _add_graph_arg(s)
    s.add_argument("--seed", default="", help="comma-separated seed vertices")
    s.set_defaults(fn=_cmd_rho_star)

    s = sp.add_parser("girth", help="shortest cycle length")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_girth)

    s = sp.add_parser("classify", help="vertex taxonomy")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_classify)

    s = sp.add_parser("star-verify", help="check a star coloring")
    _add_graph_arg(s)
    s.add_argument("--coloring", required=True, help="JSON coloring file")
    s.set_defaults(fn=_cmd_star_verify)

    s = sp.add_parser("star-color", help="exact star chromatic number")
    _add_graph_arg(s)
    s.add_argument("--limit", type=int, default=None)
    s.add_argument("--force", action="store_true",
                   help="allow exact search beyond the size cap")
    s.set_defaults(fn=_cmd_star_color)

    s = sp.add_parser("fii-find", help="find an FI_k-partition or prove none")
    _add_graph_arg(s)
    s.add_argument("-k", type=int, default=2)
    s.add_argument("--no-forcing", action="store_true")
    s.set_defaults(fn=_cmd_fii_find)

    s = sp.add_parser("fii-verify", help="check an FI_k-partition")
    _add_graph_arg(s)
    s.add_argument("--partition", required=True, help="JSON partition file")
    s.add_argument("-k", type=int, default=2)
    s.set_defaults(fn=_cmd_fii_verify)

    s = sp.add_parser("star5", help="find partition, convert, verify")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_star5)

    s = sp.add_parser("boundary", help="feasibility sweep over a corpus")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--corpus", required=True, help="directory of graph files")
    s.add_argument("--format", default="auto",
                   choices=("auto", "graph6", "edgelist", "dimacs"))
    s.set_defaults(fn=_cmd_boundary)

    s = sp.add_parser("config-scan", help="scan reducible configurations")
    _add_graph_arg(s)
    s.add_argument("--ids", default=None, help="comma-separated (e.g. C5,Cp1)")
    s.set_defaults(fn=_cmd_config_scan)

    s = sp.add_parser("lemma-check", help="instance-level extension check")
    _add_graph_arg(s)
    s.add_argument("--config", required=True)
    s.add_argument("--match", default=None,
                   help="JSON role map selecting one match")
    s.add_argument("--match-index", type=int, default=0)
    s.set_defaults(fn=_cmd_lemma_check)

    s = sp.add_parser("attach", help="graft a gadget, print the new graph")
    _add_graph_arg(s)
    s.add_argument("--at", type=int, required=True)
    s.add_argument("--gadget", required=True,
                   help="triangle | J1 | J2 | edge:V | path2:V")
    s.add_argument("--out-format", default="graph6",
                   choices=("graph6", "edgelist", "dimacs"))
    s.set_defaults(fn=_cmd_attach)

    s = sp.add_parser("discharge", help="run the charge rules")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_discharge)

    s = sp.add_parser("discharge-audit", help="final-charge deficit audit")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_discharge_audit)

    s = sp.add_parser("terminal-partition", help="end-state construction")
    _add_graph_arg(s)
    s.set_defaults(fn=_cmd_terminal_partition)

    s = sp.add_parser("gen", help="graph family generators")
    gsub = s.add_subparsers(dest="family", required=True)
    sg = gsub.add_parser("g5n")
    sg.add_argument("-n", type=int, required=True)
    sg.add_argument("--out", default=None)
    sg.add_argument("--out-format", default="graph6",
                    choices=("graph6", "edgelist", "dimacs"))
    sg.set_defaults(fn=_cmd_gen)
    sc = gsub.add_parser("corpus")
    sc.add_argument("--count", type=int, required=True)
    sc.add_argument("--n-max", type=int, default=14)
    sc.add_argument("--bound", default="8/3")
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--out", required=True)
    sc.set_defaults(fn=_cmd_gen)
    for fam in ("cycle", "path"):
        sx = gsub.add_parser(fam)
        sx.add_argument("-n", type=int, required=True)
        sx.add_argument("--out-format", default="graph6",
                        choices=("graph6", "edgelist", "dimacs"))
        sx.set_defaults(fn=_cmd_gen)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        code, detail = exc.code, str(exc)
    except (GraphError, ValueError, KeyError, json.JSONDecodeError) as exc:
        code, detail = EXIT_USAGE, str(exc)
    except BrokenPipeError:
        return EXIT_USAGE
    doc = {"schema": SCHEMA,
           "error": "usage" if code == EXIT_USAGE else "violated",
           "detail": detail}
    if args.json:
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"error: {detail}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
