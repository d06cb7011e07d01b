"""Curved, filtered, shifted L-infinity algebras.

Every bracket ``mu_n`` has degree +1 and is graded symmetric in the
degrees of the space. Brackets are stored on sorted tuples of basis ids
(sorted by basis position); ``mu_0`` lives under the empty tuple.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial, prod

from .errors import ArityMismatch, SchemaError, WrongDegree
from .graded import INF, Element, GradedSpace, LinearMap, filtration_weight
from .koszul import koszul_sign, sort_sign, unshuffles


def _add_into(acc: dict, coef: Fraction, vec: Element):
    for k, v in vec.coeffs.items():
        s = acc.get(k, 0) + coef * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class CurvedAlgebra:
    """Structure maps ``mu_0 .. mu_maxArity`` on a filtered graded space."""

    def __init__(self, space: GradedSpace, entries: dict, max_arity: int | None = None, strict_degrees: bool = True):
        self.space = space
        self.degrees_ok = True
        self.entries: dict[int, dict[tuple, Element]] = {}
        idx = space.index
        for n, table in entries.items():
            clean = {}
            for key, val in table.items():
                key = tuple(key)
                if len(key) != n:
                    raise ArityMismatch(f"key {key} stored under arity {n}")
                if any(k not in idx for k in key):
                    raise SchemaError(f"unknown basis id in {key}")
                if list(key) != sorted(key, key=idx.__getitem__):
                    raise SchemaError(f"bracket key {key} is not sorted")
                if val.space != space:
                    raise SchemaError("bracket value outside the space")
                if not val:
                    continue
                want = sum(space[k].degree for k in key) + 1
                if val.degrees() != {want}:
                    if strict_degrees:
                        raise WrongDegree(f"mu_{n}{key} must have degree {want}")
                    self.degrees_ok = False
                if any(key.count(k) > 1 and space[k].degree % 2 for k in set(key)):
                    raise SchemaError(f"mu_{n}{key} repeats an odd argument and must vanish")
                clean[key] = val
            if clean:
                self.entries[n] = clean
        top = max(self.entries, default=0)
        self.max_arity = top if max_arity is None else max(max_arity, top)

    @classmethod
    def from_brackets(cls, space: GradedSpace, brackets, max_arity=None, strict_degrees=True):
        """Build from ``(args, value)`` pairs with args in any order."""
        entries: dict[int, dict] = {}
        idx = space.index
        for args, value in brackets:
            args = tuple(args)
            for a in args:
                if a not in idx:
                    raise SchemaError(f"unknown basis id {a!r}")
            if not isinstance(value, Element):
                value = space.element(value)
            order, sign = sort_sign([idx[a] for a in args], [space[a].degree for a in args])
            key = tuple(args[i - 1] for i in order)
            table = entries.setdefault(len(args), {})
            if key in table:
                raise SchemaError(f"bracket on {key} given twice")
            table[key] = sign * value
        return cls(space, entries, max_arity, strict_degrees)

    def __eq__(self, other):
        return (
            isinstance(other, CurvedAlgebra)
            and self.space == other.space
            and self.max_arity == other.max_arity
            and self.entries == other.entries
        )

    def __repr__(self):
        n = sum(len(t) for t in self.entries.values())
        return f"CurvedAlgebra(dim={len(self.space)}, max_arity={self.max_arity}, entries={n})"

    @property
    def curvature(self) -> Element:
        return self.entries.get(0, {}).get((), self.space.zero())

    def differential(self) -> LinearMap:
        """``mu_1`` as a degree +1 linear map."""
        cols = {k[0]: v for k, v in self.entries.get(1, {}).items()}
        return LinearMap(self.space, self.space, cols, 1)

    def lookup(self, ids) -> Element:
        """``mu_n`` on basis vectors in any order."""
        table = self.entries.get(len(ids))
        if not table:
            return self.space.zero()
        sp = self.space
        order, sign = sort_sign([sp.index[i] for i in ids], [sp[i].degree for i in ids])
        val = table.get(tuple(ids[i - 1] for i in order))
        if val is None:
            return sp.zero()
        return val if sign == 1 else -val

    def with_entries(self, entries) -> "CurvedAlgebra":
        return CurvedAlgebra(self.space, entries, self.max_arity, self.degrees_ok)


def eval_bracket(alg: CurvedAlgebra, n: int, args) -> Element:
    """``mu_n(args)`` by multilinear expansion; zero beyond the top arity."""
    if len(args) != n:
        raise ArityMismatch(f"mu_{n} takes {n} arguments, got {len(args)}")
    sp = alg.space
    for a in args:
        if a.space != sp:
            raise SchemaError("argument outside the algebra's space")
    if n not in alg.entries:
        return sp.zero()
    acc: dict = {}
    for combo in product(*(a.coeffs.items() for a in args)):
        ids = [c[0] for c in combo]
        val = alg.lookup(ids)
        if val:
            _add_into(acc, prod((c[1] for c in combo), start=Fraction(1)), val)
    return Element(sp, acc)


@dataclass
class RelationReport:
    violations: list = field(default_factory=list)  # (arity, basis tuple, defect)
    max_relation_arity: int = 0
    complete_arity: int = 0
    vacuous_weight: float = INF
    pruned_by_weight: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def complete(self) -> bool:
        """Whether every relation that can be nonzero was examined."""
        return self.max_relation_arity >= self.complete_arity

    def __bool__(self):
        return self.ok


def relation_defect(alg: CurvedAlgebra, ids: tuple) -> Element:
    """Left-hand side of the arity-``len(ids)`` relation on basis vectors."""
    sp = alg.space
    n = len(ids)
    xs = [sp.vector(i) for i in ids]
    degs = [sp[i].degree for i in ids]
    acc: dict = {}
    for i in range(n + 1):
        j = n - i
        if i not in alg.entries or j + 1 not in alg.entries:
            continue
        for sigma in unshuffles(i, j):
            inner = alg.lookup([ids[s - 1] for s in sigma[:i]])
            if not inner:
                continue
            outer = eval_bracket(alg, j + 1, [inner] + [xs[s - 1] for s in sigma[i:]])
            if outer:
                _add_into(acc, Fraction(koszul_sign(sigma, degs)), outer)
    return Element(sp, acc)


def check_relations(alg: CurvedAlgebra, max_relation_arity: int) -> RelationReport:
    """Evaluate the curved relations on sorted basis tuples up to the given arity.

    Graded symmetry makes sorted tuples sufficient. When brackets respect
    the filtration, tuples of total weight at least the nilpotency bound are
    skipped: every term there lies in ``F_N = 0``.
    """
    sp = alg.space
    N = sp.nilpotency_bound
    prune = check_filtration_compatibility(alg).ok
    degrees = set(sp.degrees())
    report = RelationReport(
        max_relation_arity=max_relation_arity,
        complete_arity=max(0, min(N - 1, 2 * alg.max_arity - 1)),
        vacuous_weight=N if prune else INF,
        pruned_by_weight=prune,
    )
    basis = sp.basis
    for n in range(max_relation_arity + 1):
        for combo in combinations_with_replacement(range(len(basis)), n):
            if alg.degrees_ok and sum(basis[c].degree for c in combo) + 2 not in degrees:
                continue
            if prune and sum(basis[c].weight for c in combo) >= N:
                continue
            ids = tuple(basis[c].id for c in combo)
            defect = relation_defect(alg, ids)
            if defect:
                report.violations.append((n, ids, defect))
    return report


@dataclass
class FiltrationReport:
    violations: list = field(default_factory=list)  # (arity, key, weight found, weight required)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_filtration_compatibility(alg: CurvedAlgebra) -> FiltrationReport:
    """Every bracket must land in the sum of its arguments' weights."""
    sp = alg.space
    rep = FiltrationReport()
    for n, table in sorted(alg.entries.items()):
        for key, val in table.items():
            need = sum(sp[k].weight for k in key)
            got = filtration_weight(val)
            if got < need:
                rep.violations.append((n, key, got, need))
    return rep


def _require_degree_zero(x: Element):
    if x.degrees() - {0}:
        raise WrongDegree("expected an element of degree 0")


def mc_defect(alg: CurvedAlgebra, x: Element) -> Element:
    """``sum_k mu_k(x, ..., x) / k!`` for ``x`` of degree 0."""
    if x.space != alg.space:
        raise SchemaError("element outside the algebra's space")
    _require_degree_zero(x)
    acc: dict = {}
    xc = x.coeffs
    for n, table in alg.entries.items():
        for key, val in table.items():
            if not all(k in xc for k in key):
                continue
            coef = Fraction(1)
            for k in set(key):
                m = key.count(k)
                coef *= xc[k] ** m / factorial(m)
            _add_into(acc, coef, val)
    return Element(alg.space, acc)


def _sub_multisets(key: tuple, allowed):
    """Yield (taken, rest, multiplicities taken) for sub-multisets ``taken`` of ``key`` drawn from ``allowed``."""
    distinct = []
    for k in key:
        if not distinct or distinct[-1][0] != k:
            distinct.append([k, 0])
        distinct[-1][1] += 1
    ranges = [range(m + 1) if k in allowed else range(1) for k, m in distinct]
    for counts in product(*ranges):
        rest = []
        taken = {}
        for (k, m), c in zip(distinct, counts):
            rest.extend([k] * (m - c))
            if c:
                taken[k] = c
        yield taken, tuple(rest)


def twist(alg: CurvedAlgebra, beta: Element) -> CurvedAlgebra:
    """Twisted brackets ``mu^beta_n(v) = sum_k mu_{k+n}(beta^k, v) / k!`` for degree-0 ``beta``."""
    if beta.space != alg.space:
        raise SchemaError("element outside the algebra's space")
    _require_degree_zero(beta)
    bc = beta.coeffs
    new: dict[int, dict[tuple, dict]] = {}
    for m, table in alg.entries.items():
        for key, val in table.items():
            for taken, rest in _sub_multisets(key, bc):
                coef = Fraction(1)
                for k, c in taken.items():
                    coef *= bc[k] ** c / factorial(c)
                _add_into(new.setdefault(len(rest), {}).setdefault(rest, {}), coef, val)
    entries = {n: {k: Element(alg.space, v) for k, v in t.items() if v} for n, t in new.items()}
    return CurvedAlgebra(alg.space, entries, alg.max_arity, alg.degrees_ok)


def curvature_filtration(alg: CurvedAlgebra):
    """Filtration weight of ``mu_0``; ``INF`` when flat."""
    return filtration_weight(alg.curvature)
