"""JSON instance files, assignments and certificates.

Instance file::

    {"elements": ["a", "b", ...],
     "matroids": [{"type": "uniform", "rank": 1, "role": "finitary"}, ...]}

Matroid objects by ``type`` (any of them may also carry ``"elements"``,
which fixes its ground set and order):

- ``uniform``: ``"rank"``
- ``free``, ``zero``: nothing else
- ``graphic``: ``"vertices"``, ``"edges": {"<elt>": [u, v]}``
- ``partition``: ``"blocks": [{"elements": [...], "capacity": c}]``
- ``linear_gf2``: ``"columns": {"<elt>": [0, 1, ...]}`` over GF(2)
- ``dual``: ``"inner"``
- ``minor``: ``"inner"`` on the ground set plus ``"contract"`` and ``"delete"``
- ``looped``: ``"inner"``, ``"loops"``
- ``direct_sum``: ``"parts"``, each part listing its ``"elements"``
- ``parallel_clone``: ``"inner"``, ``"original"``, ``"clone"``

Element identifiers are JSON strings. Output is key-sorted with elements in
ground order, so equal results serialise to identical bytes.
"""

from __future__ import annotations

import json
from typing import Callable

from . import matroids as mt
from .assignment import MODES, Assignment
from .errors import InputError
from .family import MatroidFamily, Role
from .feasible import Unpackable
from .matroids import Matroid
from .union import Uncoverable


class ParseError(InputError):
    """Malformed instance or assignment; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "), ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(f"{source}:{ex.lineno}:{ex.colno}", ex.msg) from None


def load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        raise ParseError(path, ex.strerror or str(ex)) from None
    return loads(text, path)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _expect(cond: bool, where: str, message: str) -> None:
    if not cond:
        raise ParseError(where, message)


def _field(obj: dict, key: str, where: str):
    _expect(key in obj, where, f'missing field "{key}"')
    return obj[key]


def _id_list(value, where: str) -> list:
    _expect(isinstance(value, list), where, "expected a list of element ids")
    for t, e in enumerate(value):
        _expect(isinstance(e, str), f"{where}[{t}]", "element ids must be strings")
    _expect(len(set(value)) == len(value), where, "duplicate element id")
    return list(value)


def parse_matroid(obj, ground: list | None, where: str = "matroid") -> Matroid:
    """Build a matroid; ``ground`` is the ground set implied by the context, if any."""
    _expect(isinstance(obj, dict), where, "expected an object")
    kind = _field(obj, "type", where)
    if "elements" in obj:
        ground = _id_list(obj["elements"], f"{where}.elements")
    try:
        return _build(kind, obj, ground, where)
    except ParseError:
        raise
    except InputError as ex:
        raise ParseError(where, str(ex)) from None


def _need_ground(ground, where: str, kind: str) -> list:
    _expect(ground is not None, where, f'{kind} needs an "elements" list here')
    return ground


def _build(kind, obj: dict, ground, where: str) -> Matroid:
    if kind == "uniform":
        r = _field(obj, "rank", where)
        _expect(isinstance(r, int) and not isinstance(r, bool) and r >= 0, f"{where}.rank",
                "rank must be a non-negative integer")
        return mt.uniform(_need_ground(ground, where, kind), r)
    if kind == "free":
        return mt.free(_need_ground(ground, where, kind))
    if kind == "zero":
        return mt.zero(_need_ground(ground, where, kind))
    if kind == "graphic":
        vertices = _field(obj, "vertices", where)
        _expect(isinstance(vertices, list), f"{where}.vertices", "expected a list")
        edges = _field(obj, "edges", where)
        _expect(isinstance(edges, dict), f"{where}.edges", "expected an object")
        ends = {}
        for e, pair in edges.items():
            _expect(isinstance(pair, list) and len(pair) == 2, f"{where}.edges.{e}",
                    "an edge needs exactly two endpoints")
            ends[e] = tuple(pair)
        return mt.graphic(vertices, ends, ground=ground)
    if kind == "partition":
        blocks = _field(obj, "blocks", where)
        _expect(isinstance(blocks, list), f"{where}.blocks", "expected a list")
        parsed = []
        for b, block in enumerate(blocks):
            at = f"{where}.blocks[{b}]"
            _expect(isinstance(block, dict), at, "expected an object")
            cap = _field(block, "capacity", at)
            _expect(isinstance(cap, int) and not isinstance(cap, bool), f"{at}.capacity",
                    "capacity must be an integer")
            parsed.append((_id_list(_field(block, "elements", at), f"{at}.elements"), cap))
        return mt.partition(parsed, ground=ground)
    if kind == "linear_gf2":
        columns = _field(obj, "columns", where)
        _expect(isinstance(columns, dict), f"{where}.columns", "expected an object")
        for e, col in columns.items():
            _expect(isinstance(col, list), f"{where}.columns.{e}", "expected a list of bits")
        return mt.linear_gf2(columns, ground=ground)
    if kind == "dual":
        return mt.dual(parse_matroid(_field(obj, "inner", where), ground, f"{where}.inner"))
    if kind == "looped":
        inner = parse_matroid(_field(obj, "inner", where), ground, f"{where}.inner")
        return mt.declare_loops(inner, _id_list(obj.get("loops", []), f"{where}.loops"))
    if kind == "minor":
        contract = _id_list(obj.get("contract", []), f"{where}.contract")
        delete = _id_list(obj.get("delete", []), f"{where}.delete")
        inner_ground = None if ground is None else ground + contract + delete
        inner = parse_matroid(_field(obj, "inner", where), inner_ground, f"{where}.inner")
        return mt.minor(inner, contract, delete)
    if kind == "direct_sum":
        parts = _field(obj, "parts", where)
        _expect(isinstance(parts, list), f"{where}.parts", "expected a list")
        built = [parse_matroid(p, None, f"{where}.parts[{t}]") for t, p in enumerate(parts)]
        out = mt.direct_sum(built)
        if ground is not None:
            _expect(out.ground.full == frozenset(ground), where,
                    "direct sum parts do not make up the ground set")
        return out
    if kind == "parallel_clone":
        original = _field(obj, "original", where)
        clone = _field(obj, "clone", where)
        inner_ground = None if ground is None else [e for e in ground if e != clone]
        inner = parse_matroid(_field(obj, "inner", where), inner_ground, f"{where}.inner")
        return mt.parallel_clone(inner, original, clone)
    raise ParseError(f"{where}.type", f"unknown matroid type {kind!r}")


def parse_instance(obj, source: str = "instance") -> MatroidFamily:
    _expect(isinstance(obj, dict), source, "expected an object")
    elements = _id_list(_field(obj, "elements", source), f"{source}.elements")
    matroids = _field(obj, "matroids", source)
    _expect(isinstance(matroids, list), f"{source}.matroids", "expected a list")
    members, roles = [], []
    for i, m in enumerate(matroids):
        where = f"{source}.matroids[{i}]"
        member = parse_matroid(m, elements, where)
        _expect(member.ground.full == frozenset(elements), where,
                "ground set differs from the instance elements")
        role = m.get("role", "finitary")
        _expect(role in ("finitary", "cofinitary"), f"{where}.role",
                'role must be "finitary" or "cofinitary"')
        members.append(member)
        roles.append(Role(role))
    return MatroidFamily.of(members, roles, ground=elements)


def parse_assignment(obj, family: MatroidFamily, source: str = "assignment") -> Assignment:
    _expect(isinstance(obj, dict), source, "expected an object")
    mode = obj.get("mode", "partitioning")
    _expect(mode in MODES, f"{source}.mode", f"mode must be one of {', '.join(MODES)}")
    parts = _field(obj, "parts", source)
    _expect(isinstance(parts, list), f"{source}.parts", "expected a list")
    out = []
    for t, part in enumerate(parts):
        ids = _id_list(part, f"{source}.parts[{t}]")
        stray = [e for e in ids if e not in family.ground]
        _expect(not stray, f"{source}.parts[{t}]", f"unknown elements {stray}")
        out.append(frozenset(ids))
    return Assignment(tuple(out), mode)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def _ids(m: Matroid, subset, namer) -> list:
    return [namer(e) for e in m.ground.sort(subset)]


def matroid_to_json(m: Matroid, namer: Callable = str) -> dict:
    """JSON object for ``m``; ``namer`` turns each element into its string id."""
    ground = [namer(e) for e in m.ground]
    if isinstance(m, mt.Uniform):
        return {"type": "uniform", "rank": m.r, "elements": ground}
    if isinstance(m, mt.Free):
        return {"type": "free", "elements": ground}
    if isinstance(m, mt.Zero):
        return {"type": "zero", "elements": ground}
    if isinstance(m, mt.Graphic):
        return {
            "type": "graphic",
            "elements": ground,
            "vertices": list(m.vertices),
            "edges": {namer(e): list(m.edges[e]) for e in m.ground},
        }
    if isinstance(m, mt.Partition):
        return {
            "type": "partition",
            "elements": ground,
            "blocks": [
                {"elements": [namer(e) for e in block], "capacity": cap} for block, cap in m.blocks
            ],
        }
    if isinstance(m, mt.LinearGF2):
        return {
            "type": "linear_gf2",
            "elements": ground,
            "columns": {namer(e): list(m.columns[e]) for e in m.ground},
        }
    if isinstance(m, mt.Dual):
        return {"type": "dual", "inner": matroid_to_json(m.inner, namer)}
    if isinstance(m, mt.Looped):
        return {
            "type": "looped",
            "inner": matroid_to_json(m.inner, namer),
            "loops": _ids(m, m.loops, namer),
        }
    if isinstance(m, mt.Minor):
        inner = m.inner
        return {
            "type": "minor",
            "elements": ground,
            "inner": matroid_to_json(inner, namer),
            "contract": _ids(inner, m.contracted, namer),
            "delete": _ids(inner, m.deleted, namer),
        }
    if isinstance(m, mt.DirectSum):
        return {"type": "direct_sum", "parts": [matroid_to_json(p, namer) for p in m.parts]}
    if isinstance(m, mt.ParallelClone):
        return {
            "type": "parallel_clone",
            "elements": ground,
            "inner": matroid_to_json(m.inner, namer),
            "original": namer(m.original),
            "clone": namer(m.clone),
        }
    if isinstance(m, mt.Relabeled):
        mapping = m.mapping
        return matroid_to_json(m.inner, lambda e: namer(mapping[e]))
    raise InputError(f"cannot serialise matroid kind {m.kind!r}")


def instance_to_json(family: MatroidFamily, namer: Callable = str) -> dict:
    matroids = []
    for m, role in zip(family.members, family.roles):
        obj = matroid_to_json(m, namer)
        obj["role"] = role.value
        matroids.append(obj)
    return {"elements": [namer(e) for e in family.elements], "matroids": matroids}


def assignment_to_json(a: Assignment, family: MatroidFamily, namer: Callable = str) -> dict:
    return {"mode": a.mode, "parts": [[namer(e) for e in family.ground.sort(p)] for p in a.parts]}


def _element_to_json(e):
    """Elements of derived families are tuples such as ``(e, i)``; keep them readable."""
    if isinstance(e, tuple):
        return [_element_to_json(x) for x in e]
    return e if isinstance(e, (str, int)) else repr(e)


def certificate_to_json(cert, family: MatroidFamily | None = None) -> dict:
    if isinstance(cert, Uncoverable):
        order = family.ground.sort(cert.X) if family is not None else sorted(cert.X, key=repr)
        return {
            "kind": "uncoverable",
            "X": [_element_to_json(e) for e in order],
            "element": _element_to_json(cert.element),
        }
    if isinstance(cert, Unpackable):
        inner = certificate_to_json(cert.certificate, cert.family)
        inner["kind"] = "unpackable"
        inner["route"] = cert.route
        return inner
    raise InputError(f"unknown certificate {cert!r}")
