"""Command line front end.

Exit codes: 0 success, 2 validation failure, 3 ambiguous maximal destabilizing subobject.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .hn import AmbiguousMDS, LatticeError, hn_filtration
from .models import builtin
from .numring import ModelError, degree, frac_str
from .stability import Status, hilbert_polynomial, is_semistable, reduced_hilbert, truncate
from .svg import render
from .walls import (enumerate_candidates, sample_chambers, sign_string, verdict_constancy_check, verdict_signature,
                    wall_crossing_report, wall_system)

EXIT_OK, EXIT_INVALID, EXIT_AMBIGUOUS = 0, 2, 3
COMMANDS = ("degrees", "hilbert", "ss", "hn", "walls", "chambers", "cross", "dump-model")

log = logging.getLogger("alphastab")


class Invalid(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    variety: str | None = None
    builtin: str | None = None
    problem: str | None = None
    region: str | None = None
    lattice: str | None = None
    seed: int = 0
    samples: int = 256
    grid: int = 3
    format: str = "json"
    svg: str | None = None
    pruning: str = "all"
    level: int | None = None
    output: str | None = None

    def __post_init__(self):
        if self.seed < 0 or self.samples < 0 or self.grid < 1:
            raise Invalid("seed and samples must be nonnegative and grid positive")
        for name in ("variety", "problem", "region", "lattice"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise Invalid(f"--{name}: no such file {path}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alphastab", description="Exact alpha-semistability computations.")
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--variety", help="variety model JSON file")
    src.add_argument("--builtin", help="p2 | p1xp1 | example-threefold | pN:k")
    ap.add_argument("--problem", help="problem JSON file (gamma, degree system, candidates)")
    ap.add_argument("--region", help="region JSON file (sections, K, box, segment)")
    ap.add_argument("--lattice", help="subobject lattice JSON file for hn")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=256)
    ap.add_argument("--grid", type=int, default=3, help="grid density for stratified pruning")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--svg", help="write an SVG of the chamber table (2 parameter coordinates only)")
    ap.add_argument("--pruning", choices=("all", "stratified"), default="all")
    ap.add_argument("--level", type=int, help="truncation level s for ss")
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


# ---------------------------------------------------------------------------
# loading


def _model(cfg: RunConfig):
    if cfg.variety:
        return io.variety_from_dict(io.read_json(cfg.variety), where=cfg.variety)
    if cfg.builtin:
        try:
            return builtin(cfg.builtin)
        except ValueError as exc:
            raise Invalid(str(exc)) from None
    raise Invalid("one of --variety or --builtin is required")


def _problem(cfg: RunConfig, model, need_gamma=True, need_alpha=True):
    if not cfg.problem:
        raise Invalid(f"{cfg.command} needs --problem")
    prob = io.problem_from_dict(model, io.read_json(cfg.problem), where=cfg.problem)
    if need_gamma and prob.gamma is None:
        raise Invalid(f"{cfg.problem}: missing field 'gamma'")
    if prob.d is None:
        raise Invalid(f"{cfg.problem}: missing field 'degree_system'")
    if need_alpha and prob.alpha is None:
        raise Invalid(f"{cfg.problem}: degree_system needs 'alphas' for {cfg.command}")
    return prob


def _region(cfg: RunConfig, model, prob):
    if not cfg.region:
        raise Invalid(f"{cfg.command} needs --region")
    return io.region_from_dict(model, io.read_json(cfg.region), prob.d, prob.r, where=cfg.region)


def _candidates(prob, region):
    if prob.has_candidates:
        return prob.candidates, None
    if not region.box:
        raise Invalid("no candidates in the problem file and no box in the region file")
    found = enumerate_candidates(prob.gamma, region.K, region.box, region.M)
    return [(f"box{k}", F) for k, F in enumerate(found)], found


# ---------------------------------------------------------------------------
# reports


def _verdict_dict(v) -> dict:
    return {"status": v.status.value, "level": v.level, "semistable": v.is_semistable,
            "destabilizers": [{"id": str(c), "order": o} for c, o in v.destabilizers],
            "skipped": [{"id": str(c), "reason": r} for c, r in v.skipped]}


def _signature_dict(sig) -> list:
    return [{"level": s, "status": st.value, "destabilizers": [f"{c}:{o}" for c, o in ds]} for s, st, ds in sig]


def _signature_summary(sig) -> str:
    return ";".join(f"s={s}:{st.value}" + (f"[{','.join(str(c) for c, _ in ds)}]" if ds else "")
                    for s, st, ds in sig)


def _wall_dict(w, wi) -> dict:
    return {"id": wi, "level": w.level, "top": w.top, "bilinear": w.is_bilinear,
            "matrix": [io.rat_list(row) for row in w.matrix],
            "sources": [{"candidate": str(c), "level": s} for c, s in w.sources]}


def _csv(header, rows) -> str:
    buf = _io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def cmd_degrees(cfg, model):
    prob = _problem(cfg, model)
    rows = [(i, frac_str(degree(prob.gamma, prob.alpha.alpha(i)))) for i in range(prob.alpha.d, prob.alpha.r - 1, -1)]
    if cfg.format == "csv":
        return _csv(["i", "degree"], rows)
    return io.dumps({"degrees": {str(i): v for i, v in rows}})


def cmd_hilbert(cfg, model):
    prob = _problem(cfg, model)
    P = hilbert_polynomial(prob.gamma, prob.alpha)
    doc = {"P": io.poly_to_dict(P)}
    try:
        p = reduced_hilbert(prob.gamma, prob.alpha)
    except ValueError as exc:
        doc["p"] = None
        doc["p_error"] = str(exc)
    else:
        doc["p"] = io.poly_to_dict(p)
        doc["truncations"] = {str(s): io.poly_to_dict(truncate(p, s)) for s in range(p.hi, p.lo - 1, -1)}
    if cfg.format == "csv":
        rows = [(k, v, doc["p"][k] if doc["p"] else "") for k, v in doc["P"].items()]
        return _csv(["degree", "P", "p"], rows)
    return io.dumps(doc)


def cmd_ss(cfg, model):
    prob = _problem(cfg, model)
    level = cfg.level if cfg.level is not None else prob.level
    v = is_semistable(prob.gamma, prob.alpha, prob.candidates, mode=prob.mode, level=level)
    if cfg.format == "csv":
        return _csv(["status", "level", "destabilizers"],
                    [(v.status.value, v.level, " ".join(f"{c}:{o}" for c, o in v.destabilizers))])
    return io.dumps({"verdict": _verdict_dict(v), "mode": prob.mode, "candidates": len(prob.candidates)})


def cmd_hn(cfg, model):
    prob = _problem(cfg, model, need_gamma=False)
    if not cfg.lattice:
        raise Invalid("hn needs --lattice")
    lat = io.lattice_from_dict(model, io.read_json(cfg.lattice), where=cfg.lattice)
    chain = hn_filtration(lat, prob.alpha)
    factors = [{"from": a, "to": b, "class": io.sheaf_to_dict(F), "p": io.poly_to_dict(p)}
               for a, b, F, p in zip(chain.nodes, chain.nodes[1:], chain.factors, chain.polys)]
    if cfg.format == "csv":
        return _csv(["from", "to", "p"], [(f["from"], f["to"], " ".join(f"{k}:{v}" for k, v in f["p"].items()))
                                          for f in factors])
    return io.dumps({"chain": list(chain.nodes), "factors": factors})


def _walls(cfg, model):
    prob = _problem(cfg, model, need_alpha=False)
    region = _region(cfg, model, prob)
    cands, enumerated = _candidates(prob, region)
    ws = wall_system(prob.gamma, region.K, cands, pruning=cfg.pruning, grid=cfg.grid, mode=prob.mode)
    return prob, region, cands, enumerated, ws


def _walls_doc(ws, cands, enumerated) -> dict:
    doc = {"walls": [_wall_dict(w, i) for i, w in enumerate(ws)], "pruning": ws.pruning,
           "null_walls": [{"candidate": str(c), "level": s} for c, s in ws.null],
           "excluded": [str(c) for c in ws.excluded], "bilinear": ws.bilinear, "candidates": len(cands)}
    if enumerated is not None:
        doc["enumerated"] = [{"id": f"box{k}", **io.sheaf_to_dict(F)} for k, F in enumerate(enumerated)]
    return doc


def cmd_walls(cfg, model):
    _, _, cands, enumerated, ws = _walls(cfg, model)
    if cfg.format == "csv":
        return _csv(["id", "level", "matrix", "sources"],
                    [(i, w.level, " ".join(",".join(io.rat_list(r)) for r in w.matrix),
                      " ".join(str(c) for c, _ in w.sources)) for i, w in enumerate(ws)])
    return io.dumps(_walls_doc(ws, cands, enumerated))


def cmd_chambers(cfg, model):
    prob, region, cands, enumerated, ws = _walls(cfg, model)
    walls = list(ws)
    n = max(cfg.samples, 1)
    chambers = sample_chambers(walls, region.K, n, cfg.seed)
    space = region.space
    usable = [c for c in cands if str(c[0]) not in set(map(str, ws.excluded))]
    sigs = [verdict_signature(prob.gamma, space, ch.point, usable, prob.mode) for ch in chambers]
    report = verdict_constancy_check(prob.gamma, walls, region.K, cands, n, cfg.seed, prob.mode)
    if cfg.svg:
        Path(cfg.svg).write_text(render(space, region.K.bounds(), walls, chambers))
    if cfg.format == "csv":
        rows = [(sign_string(ch.signs), " ".join(f"{j}:" + ",".join(io.rat_list(ch.point[j])) for j in space.codims),
                 _signature_summary(sig)) for ch, sig in zip(chambers, sigs)]
        text = _csv(["signs", "point", "verdict"], rows)
    else:
        text = io.dumps({
            **_walls_doc(ws, cands, enumerated),
            "chambers": [{"signs": sign_string(ch.signs), "hits": ch.hits,
                          "point": io.point_to_dict(space, ch.point), "chart": {str(j): io.rat_list(ch.point[j])
                                                                                for j in space.codims},
                          "verdicts": _signature_dict(sig)} for ch, sig in zip(chambers, sigs)],
            "constancy": {"samples": report.samples, "seed": cfg.seed, "on_wall": report.on_wall,
                          "chambers": report.chambers, "pairs_checked": report.pairs_checked,
                          "violations": [{"signs": sv, "a": io.point_to_dict(space, a), "b": io.point_to_dict(space, b)}
                                         for sv, a, b, _, _ in report.violations],
                          "ok": report.ok,
                          "note": ("some wall is bilinear: sign cells may be coarser than connected chambers"
                                   if report.bilinear else "")},
        })
    if not report.ok:
        for sv, *_ in report.violations:
            log.error("verdict changes inside sign cell %s", sv)
        return text, EXIT_INVALID
    return text


def cmd_cross(cfg, model):
    prob, region, cands, enumerated, ws = _walls(cfg, model)
    if region.segment is None:
        raise Invalid(f"{cfg.region}: cross needs a 'segment'")
    usable = [c for c in cands if str(c[0]) not in set(map(str, ws.excluded))]
    events = wall_crossing_report(prob.gamma, region.segment, list(ws), region.space, usable, prob.mode)
    if cfg.format == "csv":
        return _csv(["wall", "t", "multiplicity", "before", "after"],
                    [(e.wall, str(e.t), e.multiplicity, _signature_summary(e.before), _signature_summary(e.after))
                     for e in events])
    return io.dumps({
        "walls": [_wall_dict(w, i) for i, w in enumerate(ws)],
        "events": [{"wall": e.wall, "t": str(e.t), "rational": e.t.is_rational, "t_approx": f"{float(e.t):.12g}",
                    "multiplicity": e.multiplicity, "before": _signature_dict(e.before),
                    "after": _signature_dict(e.after)} for e in events]})


def cmd_dump_model(cfg, model):
    return io.dumps(io.variety_to_dict(model))


HANDLERS = {"degrees": cmd_degrees, "hilbert": cmd_hilbert, "ss": cmd_ss, "hn": cmd_hn, "walls": cmd_walls,
            "chambers": cmd_chambers, "cross": cmd_cross, "dump-model": cmd_dump_model}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    opts = {k: v for k, v in vars(args).items() if k != "verbose"}
    try:
        cfg = RunConfig(**opts)
        result = HANDLERS[cfg.command](cfg, _model(cfg))
    except AmbiguousMDS as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_AMBIGUOUS
    except (Invalid, io.InputError, ModelError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    if cfg.output:
        Path(cfg.output).write_text(result)
    else:
        stdout.write(result)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
