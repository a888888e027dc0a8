"""JSON readers and writers.  Rationals travel as "num/den" strings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .hn import SubobjectLattice
from .numring import GradedClass, SheafClass, VarietyModel, frac_str
from .stability import DegreeSystem, HilbertPoly
from .walls import BoxCoord, CompactRegion, ParameterSpace, SectionFrame, default_ell


class InputError(ValueError):
    """Malformed input file; the message carries the file and field path."""


def read_json(path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _rat(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{where}: expected a rational string 'p/q' or integer, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot parse rational {x!r}") from None


def _vec(xs, where: str, length: int | None = None) -> list[Fraction]:
    if not isinstance(xs, list):
        raise InputError(f"{where}: expected an array")
    if length is not None and len(xs) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(xs)}")
    return [_rat(x, f"{where}[{i}]") for i, x in enumerate(xs)]


def _req(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    return doc[key]


def rat_list(xs) -> list[str]:
    return [frac_str(x) for x in xs]


# ---------------------------------------------------------------------------
# varieties


def variety_from_dict(doc: dict, where: str = "variety") -> VarietyModel:
    n = int(_req(doc, "dimension", where))
    ranks = [int(r) for r in _req(doc, "ranks", where)]
    if len(ranks) != n + 1:
        raise InputError(f"{where}.ranks: expected {n + 1} entries")
    products = {}
    for k, e in enumerate(_req(doc, "products", where)):
        w = f"{where}.products[{k}]"
        p, q, i, j = (int(_req(e, key, w)) for key in ("p", "q", "i", "j"))
        if p + q > n:
            raise InputError(f"{w}: product lands above codimension {n}")
        products[(p, q, i, j)] = _vec(_req(e, "coeffs", w), f"{w}.coeffs", ranks[p + q])
    todd_doc = _req(doc, "todd", where)
    todd = [_vec(todd_doc.get(str(p), ["0"] * ranks[p]), f"{where}.todd.{p}", ranks[p]) for p in range(n + 1)]
    facets = _req(doc, "nef_facets", where)
    if len(facets) != n + 1:
        raise InputError(f"{where}.nef_facets: expected one list per codimension 0..{n}")
    nef = [[_vec(f, f"{where}.nef_facets[{p}][{k}]", ranks[p]) for k, f in enumerate(fs)]
           for p, fs in enumerate(facets)]
    pol = doc.get("polarization")
    try:
        return VarietyModel(
            name=str(_req(doc, "name", where)), n=n, ranks=ranks, basis=_req(doc, "basis", where),
            products=products, integration=_vec(_req(doc, "integration", where), f"{where}.integration"),
            todd=todd, euler_char=_rat(_req(doc, "euler_char", where), f"{where}.euler_char"), nef_facets=nef,
            polarization=None if pol is None else _vec(pol, f"{where}.polarization", ranks[1]))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def variety_to_dict(model: VarietyModel) -> dict:
    products = []
    for (p, q, i, j), vec in sorted(model.products.items()):
        if p == 0 or q == 0 or (p, i) > (q, j):
            continue
        products.append({"p": p, "q": q, "i": i, "j": j, "coeffs": rat_list(vec)})
    doc = {
        "name": model.name,
        "dimension": model.n,
        "ranks": list(model.ranks),
        "basis": [list(b) for b in model.basis],
        "products": products,
        "integration": rat_list(model.integration),
        "todd": {str(p): rat_list(c) for p, c in enumerate(model.todd.components)},
        "euler_char": frac_str(model.euler_char),
        "nef_facets": [[rat_list(f) for f in fs] for fs in model.nef_facets],
    }
    if model.polarization is not None:
        doc["polarization"] = rat_list(model.polarization)
    return doc


# ---------------------------------------------------------------------------
# classes and problems


def graded_from_dict(model: VarietyModel, doc: dict, where: str) -> GradedClass:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object codim -> array")
    parts = {}
    for key, xs in doc.items():
        try:
            p = int(key)
        except ValueError:
            raise InputError(f"{where}: codimension key {key!r} is not an integer") from None
        if not 0 <= p <= model.n:
            raise InputError(f"{where}: codimension {p} outside 0..{model.n}")
        parts[p] = _vec(xs, f"{where}.{key}", model.ranks[p])
    return model.graded(parts)


def graded_to_dict(cls: GradedClass) -> dict:
    return {str(p): rat_list(c) for p, c in enumerate(cls.components) if any(c)}


def sheaf_from_dict(model: VarietyModel, doc: dict, where: str) -> SheafClass:
    ch = graded_from_dict(model, _req(doc, "ch", where), f"{where}.ch")
    dim = _req(doc, "dim", where)
    try:
        return SheafClass(ch, int(dim))
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def sheaf_to_dict(cls: SheafClass) -> dict:
    return {"ch": graded_to_dict(cls.ch), "dim": cls.dim}


def poly_to_dict(p: HilbertPoly) -> dict:
    return {str(i): frac_str(c) for i, c in sorted(p.as_map().items(), reverse=True)}


@dataclass
class Problem:
    gamma: SheafClass | None
    d: int | None
    r: int | None
    alpha: DegreeSystem | None
    candidates: list = field(default_factory=list)
    has_candidates: bool = False
    mode: str = "sub"
    level: int | None = None


def problem_from_dict(model: VarietyModel, doc: dict, where: str = "problem") -> Problem:
    gamma = sheaf_from_dict(model, doc["gamma"], f"{where}.gamma") if "gamma" in doc else None
    d = r = alpha = None
    if "degree_system" in doc:
        ds = doc["degree_system"]
        w = f"{where}.degree_system"
        d, r = int(_req(ds, "d", w)), int(_req(ds, "r", w))
        if "alphas" in ds:
            alphas = _req(ds, "alphas", w)
            classes = []
            for i in range(d, r - 1, -1):
                if str(i) not in alphas:
                    raise InputError(f"{w}.alphas: missing codimension {i}")
                classes.append(model.pure(i, _vec(alphas[str(i)], f"{w}.alphas.{i}", model.ranks[i])))
            try:
                alpha = DegreeSystem(d, r, tuple(classes))
            except ValueError as exc:
                raise InputError(f"{w}: {exc}") from None
    cands = []
    for k, c in enumerate(doc.get("candidates", [])):
        cands.append((str(c.get("id", f"c{k}")), sheaf_from_dict(model, c, f"{where}.candidates[{k}]")))
    mode = doc.get("mode", "sub")
    if mode not in ("sub", "quotient"):
        raise InputError(f"{where}.mode: must be 'sub' or 'quotient'")
    level = doc.get("level")
    return Problem(gamma, d, r, alpha, cands, "candidates" in doc, mode, None if level is None else int(level))


def lattice_from_dict(model: VarietyModel, doc: dict, where: str = "lattice") -> SubobjectLattice:
    nodes = {}
    for k, nd in enumerate(_req(doc, "nodes", where)):
        w = f"{where}.nodes[{k}]"
        nid = str(_req(nd, "id", w))
        if nid in nodes:
            raise InputError(f"{w}: duplicate node id {nid!r}")
        nodes[nid] = sheaf_from_dict(model, nd, w)
    edges = [(str(a), str(b)) for a, b in _req(doc, "edges", where)]
    try:
        return SubobjectLattice(nodes, edges, str(_req(doc, "root", where)), str(_req(doc, "zero", where)))
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


# ---------------------------------------------------------------------------
# regions


@dataclass
class Region:
    space: ParameterSpace
    K: CompactRegion
    box: list
    segment: tuple | None = None
    slice: dict | None = None
    M: Fraction | None = None


def region_from_dict(model: VarietyModel, doc: dict, d: int, r: int, where: str = "region") -> Region:
    frames = {}
    for k, sec in enumerate(doc.get("sections", [])):
        w = f"{where}.sections[{k}]"
        j = int(_req(sec, "codim", w))
        ell = _vec(_req(sec, "ell", w), f"{w}.ell", model.ranks[j])
        try:
            if "origin" in sec:
                dirs = [_vec(v, f"{w}.directions[{i}]", model.ranks[j]) for i, v in enumerate(sec.get("directions", []))]
                frames[j] = SectionFrame(model, j, ell, _vec(sec["origin"], f"{w}.origin", model.ranks[j]), dirs)
            else:
                frames[j] = SectionFrame.standard(model, j, ell)
        except ValueError as exc:
            raise InputError(f"{w}: {exc}") from None
    for j in range(r, d + 1):
        if j not in frames:
            frames[j] = SectionFrame.standard(model, j, default_ell(model, j))
    space = ParameterSpace(model, d, r, frames)
    verts = {}
    for k, fac in enumerate(doc.get("K", [])):
        w = f"{where}.K[{k}]"
        j = int(_req(fac, "codim", w))
        verts[j] = [_vec(v, f"{w}.vertices[{i}]", model.ranks[j]) for i, v in enumerate(_req(fac, "vertices", w))]
    try:
        K = CompactRegion.from_ambient(space, verts)
    except ValueError as exc:
        raise InputError(f"{where}.K: {exc}") from None
    box = []
    for k, c in enumerate(doc.get("box", {}).get("coords", [])):
        w = f"{where}.box.coords[{k}]"
        box.append(BoxCoord(int(_req(c, "codim", w)), int(_req(c, "index", w)), _rat(_req(c, "min", w), f"{w}.min"),
                            _rat(_req(c, "max", w), f"{w}.max"), _rat(c.get("step", 1), f"{w}.step")))
    segment = None
    if "segment" in doc:
        seg = doc["segment"]
        if len(seg) != 2:
            raise InputError(f"{where}.segment: need exactly two endpoints")
        pts = []
        for e, end in enumerate(seg):
            amb = {j: _vec(end[str(j)], f"{where}.segment[{e}].{j}", model.ranks[j]) if str(j) in end
                   else list(space.frames[j].origin) for j in space.codims}
            try:
                pts.append(space.point_from_ambient(amb))
            except ValueError as exc:
                raise InputError(f"{where}.segment[{e}]: {exc}") from None
        segment = tuple(pts)
    M = _rat(doc["M"], f"{where}.M") if "M" in doc else None
    return Region(space, K, box, segment, doc.get("slice"), M)


def point_to_dict(space: ParameterSpace, point) -> dict:
    """Ambient coordinates per codimension, for reports."""
    return {str(j): rat_list(space.frames[j].to_ambient(point[j])) for j in space.codims}


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
