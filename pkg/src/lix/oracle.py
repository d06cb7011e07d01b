"""Maurer-Cartan defect after extending scalars to a nilpotent ring.

The ring is ``Q[eps_1..eps_m]/(eps_i^2)`` with graded generators; moving a
generator of degree ``g`` past something of degree ``d`` costs ``(-1)^(g d)``.
Elements of ``g ⊗ R`` are written ``sum x ⊗ r`` with the ring factor on
the right.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial

from .errors import SchemaError, WrongDegree
from .graded import Element
from .linfty import CurvedAlgebra, check_relations


@dataclass(frozen=True)
class EpsilonRing:
    degrees: tuple[int, ...] = ()
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"eps{i + 1}" for i in range(len(self.degrees))))

    def degree(self, mono: tuple[int, ...]) -> int:
        return sum(self.degrees[i] for i in mono)

    def multiply(self, left: tuple, right: tuple):
        """(sign, monomial) of ``left * right``, or None when it vanishes."""
        if set(left) & set(right):
            return None
        sign = 1
        for i in left:
            if self.degrees[i] % 2:
                for j in right:
                    if j < i and self.degrees[j] % 2:
                        sign = -sign
        return sign, tuple(sorted(left + right))

    def extend(self, degree: int, name: str = "eps") -> "EpsilonRing":
        """Tensor with ``Q[eps]/(eps^2)``; the new generator comes last."""
        return EpsilonRing(self.degrees + (degree,), self.names + (name,))

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(range(len(self.degrees)))


class ExtendedElement:
    """Finite sum of ``(basis vector) ⊗ (monomial)`` with rational coefficients."""

    __slots__ = ("alg", "ring", "terms")

    def __init__(self, alg: CurvedAlgebra, ring: EpsilonRing, terms: dict):
        self.alg = alg
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v}  # (basis id, monomial) -> coefficient

    @classmethod
    def embed(cls, alg, ring, x: Element, mono: tuple = ()):
        return cls(alg, ring, {(k, tuple(mono)): v for k, v in x.coeffs.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ExtendedElement(self.alg, self.ring, out)

    def __neg__(self):
        return ExtendedElement(self.alg, self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return ExtendedElement(self.alg, self.ring, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ExtendedElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{b}⊗{self.ring_label(m)}" for (b, m), v in sorted(self.terms.items()))

    def ring_label(self, mono):
        return "·".join(self.ring.names[i] for i in mono) or "1"

    def coefficient(self, mono: tuple) -> Element:
        """The ``g``-valued coefficient of a monomial."""
        mono = tuple(mono)
        return self.alg.space.element({b: v for (b, m), v in self.terms.items() if m == mono})

    def total_degrees(self) -> set[int]:
        sp = self.alg.space
        return {sp[b].degree + self.ring.degree(m) for (b, m) in self.terms}

    def monomials(self):
        return sorted({m for (_, m) in self.terms}, key=lambda m: (len(m), m))


def bracket_R(alg: CurvedAlgebra, ring: EpsilonRing, args) -> ExtendedElement:
    """``mu_n`` extended R-linearly, ``n = len(args)``."""
    n = len(args)
    out: dict = {}
    if n not in alg.entries:
        return ExtendedElement(alg, ring, out)
    sp = alg.space
    for combo in product(*(list(a.terms.items()) for a in args)):
        mono = ()
        sign = 1
        coef = Fraction(1)
        ok = True
        for pos, ((b, m), c) in enumerate(combo):
            coef *= c
            if pos:
                # gather ring factors to the right: each earlier monomial passes this vector
                if sp[b].degree % 2 and ring.degree(mono) % 2:
                    sign = -sign
            res = ring.multiply(mono, m)
            if res is None:
                ok = False
                break
            s, mono = res
            sign *= s
        if not ok:
            continue
        val = alg.lookup([c[0][0] for c in combo])
        for k, v in val.coeffs.items():
            key = (k, mono)
            out[key] = out.get(key, 0) + sign * coef * v
    return ExtendedElement(alg, ring, out)


def _require_total_degree_zero(x: ExtendedElement):
    if x.total_degrees() - {0}:
        raise WrongDegree("extended element must have total degree 0")


def eval_MR(alg: CurvedAlgebra, ring: EpsilonRing, x: ExtendedElement, check: bool = True) -> ExtendedElement:
    """``M^R(x) = sum_n mu_n(x, ..., x) / n!``."""
    if check:
        _require_total_degree_zero(x)
    out = ExtendedElement(alg, ring, {})
    for n in range(alg.max_arity + 1):
        out = out + Fraction(1, factorial(n)) * bracket_R(alg, ring, [x] * n)
    return out


def directional_derivative(alg, ring, x: ExtendedElement, v: ExtendedElement) -> ExtendedElement:
    """``DM^R(x)[v] = sum_{n>=1} mu_n(v, x, ..., x) / (n-1)!`` for ``x`` of total degree 0."""
    if alg.degrees_ok:
        _require_total_degree_zero(x)
    out = ExtendedElement(alg, ring, {})
    for n in range(1, alg.max_arity + 1):
        out = out + Fraction(1, factorial(n - 1)) * bracket_R(alg, ring, [v] + [x] * (n - 1))
    return out


def _reorder_sign(degrees) -> int:
    s = sum(degrees[i] * degrees[j] for i in range(len(degrees)) for j in range(i + 1, len(degrees)))
    return -1 if s % 2 else 1


def polarize(alg: CurvedAlgebra, n: int, args) -> Element:
    """Recover ``mu_n(args)`` from the ``eps_1...eps_n`` coefficient of ``M^R``."""
    if len(args) != n:
        raise SchemaError(f"expected {n} arguments")
    degs = []
    for a in args:
        d = a.degree()
        degs.append(0 if d is None else d)
    ring = EpsilonRing(tuple(-d for d in degs))
    x = ExtendedElement(alg, ring, {})
    for i, a in enumerate(args):
        x = x + ExtendedElement.embed(alg, ring, a, (i,))
    coeff = eval_MR(alg, ring, x).coefficient(ring.top)
    return _reorder_sign(degs) * coeff


@dataclass
class MasterReport:
    failures: list = field(default_factory=list)  # (form, sample label, defect)
    samples: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def first_form_defect(alg, ring, x):
    return directional_derivative(alg, ring, x, eval_MR(alg, ring, x))


def second_form_defect(alg, ring, x):
    """``M(x⊗1 + M(x)⊗eps) - M(x)⊗1`` over ``R ⊗ Q[eps]/eps^2`` with ``deg eps = -1``."""
    big = ring.extend(-1)
    last = len(ring.degrees)
    m = eval_MR(alg, ring, x)
    lifted = ExtendedElement(alg, big, dict(x.terms))
    shifted = ExtendedElement(alg, big, {(b, mono + (last,)): v for (b, mono), v in m.terms.items()})
    # with degree-inconsistent brackets M(x) is not of degree 1; evaluate formally anyway
    return eval_MR(alg, big, lifted + shifted, check=alg.degrees_ok) - ExtendedElement(alg, big, dict(m.terms))


def check_master_equation(alg: CurvedAlgebra, samples) -> MasterReport:
    """Both forms of the master equation on ``(ring, x)`` samples."""
    rep = MasterReport()
    for label, (ring, x) in enumerate(samples):
        rep.samples += 1
        d1 = first_form_defect(alg, ring, x)
        if d1:
            rep.failures.append(("derivative", label, d1))
        d2 = second_form_defect(alg, ring, x)
        if d2:
            rep.failures.append(("shift", label, d2))
    return rep


def plain_samples(alg: CurvedAlgebra, xs):
    """Degree-0 elements of ``g`` over the trivial ring."""
    ring = EpsilonRing()
    return [(ring, ExtendedElement.embed(alg, ring, x)) for x in xs]


def polarization_samples(alg: CurvedAlgebra, max_size: int):
    """``sum_i b_i ⊗ eps_i`` over sorted basis tuples with ``deg eps_i = -deg b_i``.

    The ``eps_1...eps_n`` coefficient of either master equation is, up to a
    global sign, the arity-n relation on ``(b_1, ..., b_n)``.
    """
    sp = alg.space
    out = [(EpsilonRing(), ExtendedElement(alg, EpsilonRing(), {}))]
    for n in range(1, max_size + 1):
        for combo in combinations_with_replacement(sp.ids, n):
            ring = EpsilonRing(tuple(-sp[b].degree for b in combo))
            x = ExtendedElement(alg, ring, {(b, (i,)): Fraction(1) for i, b in enumerate(combo)})
            out.append((ring, x))
    return out


def oracle_agrees(alg: CurvedAlgebra, max_relation_arity: int) -> tuple[bool, bool]:
    """(relations pass, master equation passes) at matching arity."""
    rel = check_relations(alg, max_relation_arity).ok
    master = check_master_equation(alg, polarization_samples(alg, max_relation_arity)).ok
    return rel, master
