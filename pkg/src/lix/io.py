"""JSON encodings. Rationals are strings such as ``"-1/2"``.

With ``unshifted=True`` inputs are read in the unshifted convention: every
degree drops by one and an operation on ``(x_1, ..., x_n)`` picks up the
sign ``(-1)^(sum_i (n-i)|x_i|)`` with unshifted degrees.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .ainfty import AInftyAlgebra, build_ainfty
from .errors import SchemaError
from .graded import INF, Element, GradedSpace, build_space, to_fraction
from .linfty import CurvedAlgebra
from .solver import MCCertificate, Step


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _get(obj, key, kind=None, default=...):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        if default is ...:
            raise SchemaError(f"missing field {key!r}")
        return default
    val = obj[key]
    if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise SchemaError(f"field {key!r} has the wrong type")
    return val


def space_to_json(space: GradedSpace) -> dict:
    return {"basis": [{"id": b.id, "degree": b.degree, "weight": b.weight} for b in space.basis]}


def space_from_json(obj, unshifted: bool = False) -> GradedSpace:
    shift = 1 if unshifted else 0
    vecs = []
    for b in _get(obj, "basis", list):
        vecs.append((_get(b, "id", str), _get(b, "degree", int) - shift, _get(b, "weight", int, 1)))
    return build_space(vecs)


def fraction_str(v: Fraction) -> str:
    return str(v)


def element_to_json(x: Element) -> dict:
    return {k: fraction_str(v) for k, v in x.sorted_items()}


def element_from_json(space: GradedSpace, obj) -> Element:
    if not isinstance(obj, dict):
        raise SchemaError("an element is an object mapping ids to rationals")
    return space.element({k: to_fraction(v) for k, v in obj.items()})


def weight_to_json(w):
    return "inf" if w == INF else int(w)


def weight_from_json(w):
    if w == "inf":
        return INF
    if isinstance(w, int) and not isinstance(w, bool):
        return w
    raise SchemaError(f"bad filtration weight {w!r}")


def _decalage_sign(space: GradedSpace, args, unshifted: bool) -> int:
    if not unshifted:
        return 1
    n = len(args)
    s = sum((n - i) * (space[a].degree + 1) for i, a in enumerate(args, start=1))
    return -1 if s % 2 else 1


def _ops(obj, space, unshifted):
    out = []
    for item in obj:
        arity = _get(item, "arity", int)
        args = _get(item, "args", list)
        if len(args) != arity:
            raise SchemaError(f"arity {arity} does not match {len(args)} arguments")
        for a in args:
            if not isinstance(a, str) or a not in space:
                raise SchemaError(f"unknown basis id {a!r}")
        val = element_from_json(space, _get(item, "value", dict))
        out.append((tuple(args), _decalage_sign(space, args, unshifted) * val))
    return out


def algebra_to_json(alg: CurvedAlgebra) -> dict:
    brackets = []
    for n in sorted(alg.entries):
        for key, val in alg.entries[n].items():
            brackets.append({"arity": n, "args": list(key), "value": element_to_json(val)})
    return {"space": space_to_json(alg.space), "maxArity": alg.max_arity, "brackets": brackets}


def algebra_from_json(obj, unshifted: bool = False) -> CurvedAlgebra:
    space = space_from_json(_get(obj, "space", dict), unshifted)
    pairs = _ops(_get(obj, "brackets", list), space, unshifted)
    max_arity = _get(obj, "maxArity", int, None)
    return CurvedAlgebra.from_brackets(space, pairs, max_arity)


def ainfty_to_json(alg: AInftyAlgebra) -> dict:
    idx = alg.space.index
    ops = [
        {"arity": len(w), "args": list(w), "value": element_to_json(v)}
        for w, v in sorted(alg.ops.items(), key=lambda kv: (len(kv[0]), [idx[a] for a in kv[0]]))
    ]
    return {"space": space_to_json(alg.space), "ops": ops, "weightCap": alg.weight_cap}


def ainfty_from_json(obj, unshifted: bool = False) -> AInftyAlgebra:
    space = space_from_json(_get(obj, "space", dict), unshifted)
    ops = {}
    for word, val in _ops(_get(obj, "ops", list), space, unshifted):
        if word in ops:
            raise SchemaError(f"operation on {word} given twice")
        ops[word] = val
    return build_ainfty(space, ops, _get(obj, "weightCap", int))


def certificate_to_json(cert: MCCertificate) -> dict:
    return {
        "alpha": element_to_json(cert.alpha),
        "r": cert.r,
        "steps": [
            {"k": s.k, "twist": element_to_json(s.twist), "before": weight_to_json(s.before), "after": weight_to_json(s.after)}
            for s in cert.steps
        ],
    }


def certificate_from_json(space: GradedSpace, obj) -> MCCertificate:
    steps = [
        Step(
            _get(s, "k", int),
            element_from_json(space, _get(s, "twist", dict)),
            weight_from_json(_get(s, "before")),
            weight_from_json(_get(s, "after")),
        )
        for s in _get(obj, "steps", list)
    ]
    return MCCertificate(element_from_json(space, _get(obj, "alpha", dict)), _get(obj, "r", int), steps)


def page_table_to_json(r: int, entries) -> dict:
    return {"r": r, "entries": [{"p": e.p, "q": e.q, "dim": e.dim} for e in entries]}


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
