"""JSON encoding of elements, horofunction specs, maps and reports.

Element JSON is ``{"space": [[p, q], ...], "blocks": [block, ...]}`` with
each block a row-major list of rows of ``[re, im]`` pairs.  Floats are
written with 17 significant digits, and infinities as the strings "inf" and
"-inf", so documents are valid JSON and round-trip exactly.
"""

import json
import math

import numpy as np

from .boundary import HorofunctionSpec
from .maps import FunctionMap, LinearTripleMap, compose, mobius_map
from .triple import Element, TripleSpace


class MalformedInput(ValueError):
    """Input document does not have the expected shape."""


# --- writing ------------------------------------------------------------------------


def _format_float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = format(x, ".17g")
    return text if any(c in text for c in ".en") else text + ".0"


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent=2):
    """Deterministic JSON text with 17-significant-digit floats."""
    return _encode(obj, indent, 0) + "\n"


def _decode_float(v):
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            raise MalformedInput(f"not a number: {v!r}") from None
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return float(v)
    raise MalformedInput(f"not a number: {v!r}")


# --- elements -----------------------------------------------------------------------


def space_to_json(space):
    return [list(f) for f in space.factors]


def space_from_json(data):
    try:
        return TripleSpace.of(*(tuple(int(n) for n in f) for f in data))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"bad space description: {exc}") from None


def element_to_json(x):
    return {
        "space": space_to_json(x.space),
        "blocks": [[[[float(z.real), float(z.imag)] for z in row] for row in b] for b in x.blocks],
    }


def element_from_json(data, space=None):
    if not isinstance(data, dict) or "blocks" not in data:
        raise MalformedInput("element JSON needs 'space' and 'blocks'")
    declared = space_from_json(data["space"]) if "space" in data else space
    if declared is None:
        raise MalformedInput("element JSON needs 'space'")
    if space is not None and declared != space:
        raise MalformedInput(f"element lives in {declared}, expected {space}")
    blocks = data["blocks"]
    if not isinstance(blocks, list) or len(blocks) != len(declared.factors):
        raise MalformedInput("one block per factor is required")
    out = []
    for b, (p, q) in zip(blocks, declared.factors):
        try:
            arr = np.array([[complex(_decode_float(e[0]), _decode_float(e[1])) for e in row] for row in b])
        except (TypeError, IndexError):
            raise MalformedInput("block entries must be [re, im] pairs") from None
        if arr.shape != (p, q):
            raise MalformedInput(f"block of shape {arr.shape}, expected {(p, q)}")
        out.append(arr)
    return Element(declared, out)


# --- horofunction specs ------------------------------------------------------------------


def spec_to_json(spec):
    return {
        "space": space_to_json(spec.space),
        "tripotents": [element_to_json(e)["blocks"] for e in spec.tripotents],
        "lambdas": [float(v) for v in spec.lambdas],
    }


def spec_from_json(data):
    """``{"space", "tripotents": [blocks, ...], "lambdas"}``; a bare Element is a singleton."""
    if isinstance(data, dict) and "blocks" in data:
        return HorofunctionSpec.singleton(element_from_json(data))
    if not isinstance(data, dict) or "tripotents" not in data:
        raise MalformedInput("spec JSON needs 'space', 'tripotents' and 'lambdas'")
    space = space_from_json(data.get("space"))
    tripotents = [
        element_from_json(t if isinstance(t, dict) else {"blocks": t}, space) for t in data["tripotents"]
    ]
    lambdas = [_decode_float(v) for v in data.get("lambdas", [1.0] * len(tripotents))]
    try:
        return HorofunctionSpec(tripotents, lambdas).validate()
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


# --- maps ---------------------------------------------------------------------------------


def _matrix_from_json(rows):
    try:
        return np.array([[complex(_decode_float(e[0]), _decode_float(e[1])) for e in row] for row in rows])
    except (TypeError, IndexError):
        raise MalformedInput("matrix entries must be [re, im] pairs") from None


def map_to_json(phi):
    if not isinstance(phi, LinearTripleMap):
        raise TypeError("only LinearTripleMap has a JSON form")
    return {
        "kind": "conjugate_linear" if phi.conjugate_linear else "linear",
        "domain": space_to_json(phi.domain),
        "codomain": space_to_json(phi.codomain),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in phi.matrix],
        "pre": [],
        "post": [],
    }


def _primitive_from_json(data, domain=None):
    try:
        return _primitive(data, domain)
    except (KeyError, AttributeError) as exc:
        raise MalformedInput(f"map primitive is missing {exc}") from None


def _primitive(data, domain):
    kind = data.get("kind")
    if kind == "mobius":
        a = element_from_json(data["a"] if "a" in data else data, domain)
        return mobius_map(a.space, a)
    if kind in ("linear", "conjugate_linear"):
        dom = space_from_json(data["domain"])
        cod = space_from_json(data.get("codomain", data["domain"]))
        try:
            return LinearTripleMap(dom, cod, _matrix_from_json(data["matrix"]), kind == "conjugate_linear", kind)
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None
    raise MalformedInput(f"unknown map kind {kind!r}")


def map_from_json(data):
    """Linear, conjugate-linear or composite maps.

    A ``moebius_composite`` applies the maps in ``pre`` in order, then its own
    linear part (if ``matrix`` is given), then the maps in ``post``.  The
    primitives are linear/conjugate-linear maps and ``{"kind": "mobius",
    "a": Element}``.
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInput("map JSON needs a 'kind'")
    kind = data["kind"]
    if kind in ("linear", "conjugate_linear") and not data.get("pre") and not data.get("post"):
        return _primitive_from_json(data)
    if kind not in ("linear", "conjugate_linear", "moebius_composite"):
        raise MalformedInput(f"unknown map kind {kind!r}")
    chain = [_primitive_from_json(p) for p in data.get("pre", [])]
    if "matrix" in data:
        core = dict(data)
        core["kind"] = "conjugate_linear" if kind == "conjugate_linear" or data.get("conjugate") else "linear"
        chain.append(_primitive_from_json(core))
    chain += [_primitive_from_json(p) for p in data.get("post", [])]
    if not chain:
        raise MalformedInput("composite map has no parts")
    out = chain[0]
    for nxt in chain[1:]:
        try:
            out = compose(nxt, out)
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None
    if len(chain) == 1 and isinstance(out, LinearTripleMap):
        return out
    return out if isinstance(out, FunctionMap) else FunctionMap(out.domain, out.codomain, out, kind)
