"""JSON / CSV / directory formats. All writers emit sorted keys and a trailing newline."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .complex import SimplicialComplex, SimplicialMap, complex_from_maximal, label_str
from .context import ChuSpace
from .errors import MalformedInputError
from .geometry import PointCloud
from .incidence import ChainElement, IncidenceElement
from .linalg import Q, format_scalar, get_field, parse_scalar
from .poset import Poset
from .refinement import RefinementRelation, check_refinement_relation


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def read_bytes(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def parse_json(data: bytes | str, what: str = "input") -> Any:
    try:
        return json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInputError(f"malformed JSON in {what}: {exc}") from exc


def _require_keys(doc, keys, what):
    if not isinstance(doc, dict):
        raise MalformedInputError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise MalformedInputError(f"{what} is missing key(s) {missing}")


def _names(seq, what) -> list:
    if not isinstance(seq, list) or not all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in seq):
        raise MalformedInputError(f"{what} must be a list of names")
    return [label_str(x) for x in seq]


def _pairs(seq, what) -> list:
    if not isinstance(seq, list) or not all(isinstance(p, list) and len(p) == 2 for p in seq):
        raise MalformedInputError(f"{what} must be a list of 2-element lists")
    return [(label_str(a), label_str(b)) for a, b in seq]


# complexes

def complex_to_json(k: SimplicialComplex) -> dict:
    return {"vertices": [label_str(v) for v in k.vertices],
            "maximal": [[label_str(v) for v in s] for s in k.maximal_simplices()]}


def complex_from_json(doc) -> SimplicialComplex:
    """Vertex ranks follow the order of the ``vertices`` list."""
    _require_keys(doc, ("vertices", "maximal"), "complex file")
    verts = _names(doc["vertices"], "vertices")
    if not isinstance(doc["maximal"], list):
        raise MalformedInputError("maximal must be a list of simplices")
    maximal = [_names(s, "simplex") for s in doc["maximal"]]
    return complex_from_maximal(maximal, vertices=verts, order=verts)


def betti_report(betti: Iterable[int], field) -> dict:
    return {"field": str(get_field(field)), "betti": list(betti)}


def map_to_json(f: SimplicialMap) -> dict:
    return {"pairs": [[label_str(v), label_str(f.vertex_map[v])] for v in f.source.vertices]}


# contexts

def context_to_json(p: ChuSpace) -> dict:
    return {"objects": [label_str(x) for x in p.objects],
            "attributes": [label_str(a) for a in p.attributes],
            "pairs": [[label_str(x), label_str(a)] for x, a in p.pairs()]}


def context_from_json(doc) -> ChuSpace:
    _require_keys(doc, ("objects", "attributes", "pairs"), "context file")
    return ChuSpace.from_pairs(_names(doc["objects"], "objects"), _names(doc["attributes"], "attributes"),
                               _pairs(doc["pairs"], "pairs"))


# posets

def poset_from_json(doc) -> Poset:
    """Transitive closure is applied; antisymmetry failures surface as semantic errors."""
    _require_keys(doc, ("elements", "le"), "poset file")
    return Poset.from_relation(_names(doc["elements"], "elements"), _pairs(doc["le"], "le"))


def poset_to_json(k: Poset) -> dict:
    return k.to_json()


# refinement relations

def refinement_to_json(rel: RefinementRelation) -> dict:
    p, q = rel.source, rel.target
    pairs = sorted(rel.pairs, key=lambda ab: (p._ai(ab[0]), q._ai(ab[1])))
    return {"carrier": [[label_str(x), label_str(rel.carrier[x])] for x in p.objects],
            "pairs": [[label_str(a), label_str(b)] for a, b in pairs]}


def refinement_from_json(doc, p: ChuSpace, q: ChuSpace) -> RefinementRelation:
    _require_keys(doc, ("carrier", "pairs"), "refinement file")
    carrier = dict(_pairs(doc["carrier"], "carrier"))
    return check_refinement_relation(_pairs(doc["pairs"], "pairs"), carrier, p, q)


# algebra elements

def _terms_sorted(u) -> list:
    return sorted(u.terms.items(), key=lambda kv: [label_str(x) for x in kv[0]])


def chain_element_to_json(u: ChainElement) -> list:
    return [{"coeff": format_scalar(c), "chain": [label_str(x) for x in k]} for k, c in _terms_sorted(u)]


def chain_element_from_json(doc, poset: Poset, field=Q) -> ChainElement:
    field = get_field(field)
    if not isinstance(doc, list):
        raise MalformedInputError("chain element must be a list of terms")
    terms: dict = {}
    for t in doc:
        _require_keys(t, ("coeff", "chain"), "chain term")
        c = tuple(_names(t["chain"], "chain"))
        terms[c] = terms.get(c, field.zero) + parse_scalar(t["coeff"], field)
    return ChainElement(poset, terms, field)


def incidence_element_to_json(u: IncidenceElement) -> list:
    return [{"coeff": format_scalar(c), "interval": [label_str(p), label_str(q)]} for (p, q), c in _terms_sorted(u)]


def incidence_element_from_json(doc, poset: Poset, field=Q) -> IncidenceElement:
    field = get_field(field)
    if not isinstance(doc, list):
        raise MalformedInputError("incidence element must be a list of terms")
    terms: dict = {}
    for t in doc:
        _require_keys(t, ("coeff", "interval"), "incidence term")
        p, q = _pairs([t["interval"]], "interval")[0]
        terms[(p, q)] = terms.get((p, q), field.zero) + parse_scalar(t["coeff"], field)
    return IncidenceElement(poset, terms, field)


def matrix_to_json(rows) -> list:
    return [[format_scalar(x) for x in row] for row in rows]


# towers

def write_tower(tower, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for j, k in enumerate(tower.complexes):
        path = out / f"level-{j}.complex.json"
        path.write_text(dumps(complex_to_json(k)))
        written.append(path)
    for j, f in enumerate(tower.bonds):
        path = out / f"bond-{j}.map.json"
        path.write_text(dumps(map_to_json(f)))
        written.append(path)
    return written


def read_tower(in_dir):
    from .complex import check_simplicial_map
    from .fractafold import Tower

    d = Path(in_dir)
    complexes = []
    while (d / f"level-{len(complexes)}.complex.json").exists():
        path = d / f"level-{len(complexes)}.complex.json"
        complexes.append(complex_from_json(parse_json(read_bytes(path), str(path))))
    if not complexes:
        raise MalformedInputError(f"no level-0.complex.json in {d}")
    bonds = []
    for j in range(len(complexes) - 1):
        path = d / f"bond-{j}.map.json"
        doc = parse_json(read_bytes(path), str(path))
        _require_keys(doc, ("pairs",), str(path))
        bonds.append(check_simplicial_map(dict(_pairs(doc["pairs"], "pairs")), complexes[j + 1], complexes[j]))
    return Tower(tuple(range(len(complexes))), tuple(complexes), tuple(bonds))


# point clouds

def cloud_to_csv(cloud: PointCloud) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for p in cloud.points:
        w.writerow([repr(float(x)) for x in p])
    return buf.getvalue()


def cloud_from_csv(text: str) -> PointCloud:
    rows = []
    for n, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            rows.append([float(c) for c in row])
        except ValueError:
            raise MalformedInputError(f"line {n}: non-numeric coordinate") from None
    if rows and len({len(r) for r in rows}) != 1:
        raise MalformedInputError("rows have differing numbers of coordinates")
    return PointCloud(np.array(rows, dtype=float) if rows else np.empty((0, 0)))


def load(path, reader, what: str):
    """Read and parse a JSON input file, returning (object, digest)."""
    data = read_bytes(path)
    return reader(parse_json(data, what)), digest(data)
