"""Graded vector spaces with a basis-aligned weight filtration.

Scalars are exact rationals. A basis vector of weight ``w`` lies in
``F_1, ..., F_w``; the filtration is complete and finite, so ``F_p = 0``
once ``p`` reaches the nilpotency bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .errors import DuplicateId, MixedSpaces, NonPositiveWeight, NotADifferential, SchemaError, WrongDegree

INF = math.inf


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and strings like ``"-1/2"`` (a unicode minus is accepted)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SchemaError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"not a rational: {value!r}") from exc
    raise SchemaError(f"not a rational: {value!r}")


@dataclass(frozen=True)
class BasisVector:
    id: str
    degree: int
    weight: int


@dataclass(frozen=True, eq=False)
class GradedSpace:
    basis: tuple[BasisVector, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {b.id: i for i, b in enumerate(self.basis)})

    def __eq__(self, other):
        return self is other or (isinstance(other, GradedSpace) and self.basis == other.basis)

    def __hash__(self):
        return hash(self.basis)

    def __len__(self):
        return len(self.basis)

    def __contains__(self, bid):
        return bid in self.index

    def __getitem__(self, bid) -> BasisVector:
        return self.basis[self.index[bid]]

    @property
    def ids(self):
        return [b.id for b in self.basis]

    @property
    def nilpotency_bound(self) -> int:
        return max((b.weight for b in self.basis), default=0) + 1

    def degrees(self) -> list[int]:
        return sorted({b.degree for b in self.basis})

    def layer(self, degree: int, min_weight: int = 1, max_weight: float = INF) -> list[str]:
        """Ids of degree ``degree`` with ``min_weight <= weight < max_weight``."""
        return [b.id for b in self.basis if b.degree == degree and min_weight <= b.weight < max_weight]

    def zero(self) -> "Element":
        return Element(self, {})

    def vector(self, bid: str) -> "Element":
        return Element(self, {bid: Fraction(1)})

    def element(self, coeffs: Mapping) -> "Element":
        out = {}
        for k, v in coeffs.items():
            if k not in self.index:
                raise SchemaError(f"unknown basis id {k!r}")
            v = to_fraction(v)
            if v:
                out[k] = v
        return Element(self, out)


def build_space(vectors: Iterable) -> GradedSpace:
    """Build a space from ``(id, degree, weight)`` triples or BasisVectors."""
    basis = []
    seen = set()
    for v in vectors:
        b = v if isinstance(v, BasisVector) else BasisVector(*v)
        if b.id in seen:
            raise DuplicateId(b.id)
        if b.weight < 1:
            raise NonPositiveWeight(f"{b.id} has weight {b.weight}")
        seen.add(b.id)
        basis.append(BasisVector(str(b.id), int(b.degree), int(b.weight)))
    return GradedSpace(tuple(basis))


class Element:
    """A sparse vector; stored coefficients are always nonzero."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: GradedSpace, coeffs: dict):
        self.space = space
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.space is not self.space and other.space != self.space:
            raise MixedSpaces("elements live in different spaces")
        return True

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Element(self.space, out)

    def __neg__(self):
        return Element(self.space, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return Element(self.space, {})
        return Element(self.space, {k: scalar * v for k, v in self.coeffs.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (other.space is self.space or other.space == self.space) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{k}" for k, v in self.sorted_items())

    def coeff(self, bid: str) -> Fraction:
        return self.coeffs.get(bid, Fraction(0))

    def sorted_items(self):
        idx = self.space.index
        return sorted(self.coeffs.items(), key=lambda kv: idx[kv[0]])

    @property
    def support(self):
        return [k for k, _ in self.sorted_items()]

    def degrees(self) -> set[int]:
        return {self.space[k].degree for k in self.coeffs}

    def degree(self):
        """The degree of a nonzero homogeneous element; None for 0; raises if mixed."""
        ds = self.degrees()
        if len(ds) > 1:
            raise WrongDegree(f"element is not homogeneous: degrees {sorted(ds)}")
        return next(iter(ds), None)

    def to_dense(self, ids: list[str]) -> list[Fraction]:
        return [self.coeffs.get(i, Fraction(0)) for i in ids]


def from_dense(space: GradedSpace, ids: list[str], values) -> Element:
    return Element(space, {i: Fraction(v) for i, v in zip(ids, values) if v})


def proj_F(x: Element, p: int) -> Element:
    """Component of ``x`` in ``F_p``."""
    sp = x.space
    return Element(sp, {k: v for k, v in x.coeffs.items() if sp[k].weight >= p})


def proj_deg(x: Element, n: int) -> Element:
    sp = x.space
    return Element(sp, {k: v for k, v in x.coeffs.items() if sp[k].degree == n})


def filtration_weight(x: Element):
    """Largest p with x in F_p; ``INF`` for zero."""
    return min((x.space[k].weight for k in x.coeffs), default=INF)


class LinearMap:
    """Homogeneous linear map given on basis vectors of the source."""

    def __init__(self, source: GradedSpace, target: GradedSpace, columns: Mapping[str, Element], degree_shift: int = 0):
        self.source = source
        self.target = target
        self.degree_shift = degree_shift
        self.columns = {}
        for bid, val in columns.items():
            if bid not in source.index:
                raise SchemaError(f"unknown basis id {bid!r}")
            if val.space != target:
                raise MixedSpaces("column lies outside the target space")
            if val:
                want = source[bid].degree + degree_shift
                if val.degrees() != {want}:
                    raise WrongDegree(f"image of {bid} is not of degree {want}")
                self.columns[bid] = val

    def __call__(self, x: Element) -> Element:
        if x.space != self.source:
            raise MixedSpaces("argument outside the source space")
        out = {}
        for k, c in x.coeffs.items():
            col = self.columns.get(k)
            if col is None:
                continue
            for t, v in col.coeffs.items():
                s = out.get(t, 0) + c * v
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return Element(self.target, out)

    def matrix(self, src_ids: list[str], tgt_ids: list[str]) -> list[list[Fraction]]:
        """Dense matrix (rows indexed by ``tgt_ids``) of the restricted map."""
        rows = [[Fraction(0)] * len(src_ids) for _ in tgt_ids]
        pos = {t: i for i, t in enumerate(tgt_ids)}
        for j, s in enumerate(src_ids):
            col = self.columns.get(s)
            if col is None:
                continue
            for t, v in col.coeffs.items():
                if t in pos:
                    rows[pos[t]][j] = v
        return rows

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self ∘ other``."""
        cols = {b: self(other.columns[b]) for b in other.columns}
        return LinearMap(other.source, self.target, cols, self.degree_shift + other.degree_shift)

    def is_zero(self) -> bool:
        return not self.columns


def compute_cohomology(space: GradedSpace, d: LinearMap) -> dict[int, int]:
    """Dimensions of ker d / im d per degree; ``d`` must have degree +1 and square to zero."""
    if d.source != space or d.target != space or d.degree_shift != 1:
        raise NotADifferential("a differential is a degree +1 endomorphism")
    if not d.compose(d).is_zero():
        raise NotADifferential("d∘d is nonzero")
    ranks = {}
    for n in space.degrees():
        src, tgt = space.layer(n), space.layer(n + 1)
        ranks[n] = linalg.rank(d.matrix(src, tgt), len(src)) if src and tgt else 0
    return {n: len(space.layer(n)) - ranks[n] - ranks.get(n - 1, 0) for n in space.degrees()}
