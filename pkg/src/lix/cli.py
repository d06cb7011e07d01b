"""``lix`` command line: JSON in, deterministic JSON out.

Exit status: 0 on success, 1 for a mathematical negative (failed check,
obstruction, invalid certificate), 2 for usage and schema errors.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io
from .ainfty import def_complex, intrinsic_formality_check
from .errors import HypothesisFailed, LixError, PageBeyondCurvatureBound, RelationCheckFailed, StasheffViolation
from .graded import GradedSpace
from .linfty import check_filtration_compatibility, check_relations, curvature_filtration
from .oracle import check_master_equation, polarization_samples, polarize
from .solver import solve_mc, verify_certificate
from .specseq import occupied, page

DEFAULT_MAX_DIM = 64


class UsageError(LixError):
    pass


def _max_dim() -> int:
    raw = os.environ.get("LIX_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"LIX_MAX_DIM must be an integer, got {raw!r}")


def _guard(space: GradedSpace):
    cap = _max_dim()
    if len(space) > cap:
        raise UsageError(f"space has {len(space)} basis vectors; LIX_MAX_DIM is {cap}")


def _load_algebra(path, unshifted):
    alg = io.algebra_from_json(io.load(path), unshifted)
    _guard(alg.space)
    return alg


def _load_ainfty(path, unshifted):
    obj = io.load(path)
    space = io.space_from_json(obj.get("space", {}) if isinstance(obj, dict) else {}, unshifted)
    _guard(space)
    return io.ainfty_from_json(obj, unshifted)


def _relation_arity(alg):
    return max(0, min(alg.space.nilpotency_bound - 1, 2 * alg.max_arity - 1))


def _violations(rep):
    return [{"arity": n, "args": list(ids), "defect": io.element_to_json(d)} for n, ids, d in rep.violations]


def cmd_validate(args):
    obj = io.load(args.file)
    if isinstance(obj, dict) and "ops" in obj:
        try:
            alg = _load_ainfty(args.file, args.unshifted)
        except StasheffViolation as exc:
            out = {"kind": "ainfty", "stasheff": {"ok": False, "word": list(exc.word), "weight": exc.weight,
                                                  "defect": io.element_to_json(exc.defect)}}
            return out, 1
        return {"kind": "ainfty", "stasheff": {"ok": True, "note": alg.report.describe()}}, 0
    alg = _load_algebra(args.file, args.unshifted)
    filt = check_filtration_compatibility(alg)
    rel = check_relations(alg, _relation_arity(alg))
    out = {
        "kind": "linfty",
        "dimension": len(alg.space),
        "nilpotencyBound": alg.space.nilpotency_bound,
        "curvatureFiltration": io.weight_to_json(curvature_filtration(alg)),
        "filtration": {
            "ok": filt.ok,
            "violations": [{"arity": n, "args": list(k), "weight": io.weight_to_json(g), "required": w}
                           for n, k, g, w in filt.violations],
        },
        "relations": {"ok": rel.ok, "checkedArity": rel.max_relation_arity, "complete": rel.complete,
                      "violations": _violations(rel)},
    }
    return out, 0 if filt.ok and rel.ok else 1


def cmd_oracle(args):
    alg = _load_algebra(args.file, args.unshifted)
    arity = _relation_arity(alg)
    mismatches = []
    for n in range(1, alg.max_arity + 1):
        for key in alg.entries.get(n, {}):
            vecs = [alg.space.vector(k) for k in key]
            if polarize(alg, n, vecs) != alg.entries[n][key]:
                mismatches.append(list(key))
    master = check_master_equation(alg, polarization_samples(alg, arity))
    rel = check_relations(alg, arity)
    out = {
        "polarization": {"ok": not mismatches, "mismatches": mismatches},
        "masterEquation": {"ok": master.ok, "samples": master.samples, "failures": len(master.failures)},
        "relations": {"ok": rel.ok, "checkedArity": arity},
        "agree": master.ok == rel.ok,
    }
    return out, 0 if master.ok and not mismatches and master.ok == rel.ok else 1


def cmd_specseq(args):
    alg = _load_algebra(args.file, args.unshifted)
    try:
        cells = [c for c in occupied(alg) if args.total_degree is None or sum(c) == args.total_degree]
        entries = [page(alg, args.page, p, q) for p, q in cells]
    except PageBeyondCurvatureBound as exc:
        return {"error": "PageBeyondCurvatureBound", "message": str(exc)}, 1
    out = io.page_table_to_json(args.page, entries)
    if args.total_degree is not None:
        out["totalDegree"] = args.total_degree
        out["vanishes"] = all(e.dim == 0 for e in entries)
        return out, 0 if out["vanishes"] else 1
    return out, 0


def cmd_solve(args):
    alg = _load_algebra(args.file, args.unshifted)
    try:
        cert = solve_mc(alg, args.r)
    except RelationCheckFailed as exc:
        return {"error": "RelationCheckFailed", "violations": _violations(exc.report)}, 1
    except HypothesisFailed as exc:
        out = {"error": "HypothesisFailed", "reason": exc.reason, "k": io.weight_to_json(exc.k)}
        if exc.obstruction is not None:
            out["obstruction"] = io.element_to_json(exc.obstruction)
        return out, 1
    return io.certificate_to_json(cert), 0


def cmd_verify(args):
    alg = _load_algebra(args.algebra, args.unshifted)
    cert = io.certificate_from_json(alg.space, io.load(args.certificate))
    ok = verify_certificate(alg, cert)
    return {"valid": ok}, 0 if ok else 1


def _layers(dc):
    return [{"weight": w, "degree": d, "dim": n} for (w, d), n in sorted(dc.weight_layer_dims().items())]


def cmd_defcomplex(args):
    A = _load_ainfty(args.source, args.unshifted)
    B = _load_ainfty(args.target, args.unshifted)
    dc = def_complex(A, B, args.weight_cap)
    out = {"dimension": len(dc.space), "layers": _layers(dc), "algebra": io.algebra_to_json(dc.algebra)}
    return out, 0


def _components(dc, x):
    out = []
    for w, val in dc.components(x).items():
        out.append({"weight": len(w) - 1, "word": list(w), "value": io.element_to_json(val)})
    return out


def cmd_formality(args):
    H = _load_ainfty(args.strict, args.unshifted)
    T = _load_ainfty(args.transferred, args.unshifted)
    res = intrinsic_formality_check(H, T, args.weight_cap)
    out = {
        "verdict": res.verdict,
        "curvatureFiltration": io.weight_to_json(res.curvature_weight),
        "vanishingTotalDegree1": res.vanishing,
    }
    if res.certificate is not None:
        out["certificate"] = io.certificate_to_json(res.certificate)
        out["morphism"] = _components(res.complex, res.morphism)
    if res.obstruction is not None:
        out["obstruction"] = {"weight": res.obstruction_weight, "components": _components(res.complex, res.obstruction)}
    return out, 0 if res.formal else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lix", description="Curved filtered L-infinity toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--unshifted", action="store_true", help="read degrees in the unshifted convention")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check degrees, filtration and relations").add_argument("file")
    add("oracle", cmd_oracle, "cross-check brackets against the power-series master equation").add_argument("file")
    p = add("specseq", cmd_specseq, "page dimensions")
    p.add_argument("--page", type=int, required=True)
    p.add_argument("--total-degree", type=int)
    p.add_argument("file")
    p = add("solve-mc", cmd_solve, "solve the Maurer-Cartan equation")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("file")
    p = add("verify", cmd_verify, "replay a Maurer-Cartan certificate")
    p.add_argument("algebra")
    p.add_argument("certificate")
    p = add("defcomplex", cmd_defcomplex, "materialize a deformation complex")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--weight-cap", type=int, required=True)
    p = add("formality", cmd_formality, "intrinsic formality check")
    p.add_argument("strict")
    p.add_argument("transferred")
    p.add_argument("--weight-cap", type=int, required=True)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except (LixError, OSError) as exc:
        sys.stderr.write(f"lix: {type(exc).__name__}: {exc}\n")
        return 2
    sys.stdout.write(io.dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
