"""Truncated shifted A-infinity algebras and their deformation complexes.

Operations ``m_n`` have degree +1 on the shifted space. The bar
coalgebra is spanned by words of length ``1..cap+1``; a word of length
``k+1`` has weight ``k``. ``Def(A, B)`` is spanned by the elementary maps
sending one word of ``A`` to one basis vector of ``B``; a map defined on
words of length ``k+1`` sits in filtration ``k+1``.

Brackets on ``Def(A, B)``::

    l_1(f)          = m_1^B f - (-1)^|f| f D_A
    l_m(f_1..f_m)   = sum_sigma eps(sigma) m_m^B (f_s1 ⊗ ... ⊗ f_sm) Delta^(m)

with ``D_A`` the bar coderivation, ``Delta^(m)`` deconcatenation into m
nonempty blocks and the Koszul rule ``(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)``.
For degree-0 ``f`` the Maurer-Cartan defect is the B-component of
``D_B F - F D_A``, where ``F`` is the coalgebra map with components ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from . import linalg
from .errors import (
    HypothesisFailed,
    NotAMorphism,
    NotTransferredStructure,
    PreconditionViolated,
    SchemaError,
    StasheffViolation,
    TruncationMismatch,
    WrongDegree,
)
from .graded import Element, GradedSpace, LinearMap, build_space, compute_cohomology, filtration_weight
from .koszul import koszul_sign
from .linfty import CurvedAlgebra, curvature_filtration, mc_defect, twist
from .solver import solve_mc
from .specseq import vanishing_in_total_degree

RESERVED = "|>"


def _add(acc: dict, key, val):
    s = acc.get(key, 0) + val
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def words(space: GradedSpace, max_len: int):
    """All words of length 1..max_len, shortest first, lexicographic in basis order."""
    for n in range(1, max_len + 1):
        yield from product(space.ids, repeat=n)


def compositions(n: int, m: int):
    """Cut points splitting ``n`` letters into ``m`` nonempty consecutive blocks."""
    for cuts in combinations(range(1, n), m - 1):
        yield (0,) + cuts + (n,)


class AInftyAlgebra:
    def __init__(self, space: GradedSpace, ops: dict, weight_cap: int):
        self.space = space
        self.ops = ops  # word tuple -> Element
        self.weight_cap = weight_cap
        self._deg = {b.id: b.degree for b in space.basis}

    def __repr__(self):
        return f"AInftyAlgebra(dim={len(self.space)}, ops={len(self.ops)}, weight_cap={self.weight_cap})"

    def arities(self):
        return sorted({len(w) for w in self.ops})

    def degree(self, word) -> int:
        return sum(self._deg[a] for a in word)

    def op(self, word) -> Element:
        return self.ops.get(tuple(word), self.space.zero())

    def coderivation(self, tensor: dict, arities=None) -> dict:
        """Bar coderivation on a linear combination of words."""
        out: dict = {}
        for word, c in tensor.items():
            prefix_deg = 0
            for i in range(len(word)):
                for j in range(1, len(word) - i + 1):
                    if arities is not None and j not in arities:
                        continue
                    m = self.ops.get(word[i:i + j])
                    if m is None:
                        continue
                    sign = -c if prefix_deg % 2 else c
                    for b, v in m.coeffs.items():
                        _add(out, word[:i] + (b,) + word[i + j:], sign * v)
                prefix_deg += self._deg[word[i]]
        return out

    def stasheff_defect(self, word) -> Element:
        """B-component of ``D^2`` on a word."""
        acc: dict = {}
        for u, c in self.coderivation({tuple(word): Fraction(1)}).items():
            m = self.ops.get(u)
            if m is not None:
                for b, v in m.coeffs.items():
                    _add(acc, b, c * v)
        return Element(self.space, acc)


@dataclass
class StasheffReport:
    weight_cap: int
    checked_words: int
    unchecked_beyond_length: int

    def describe(self):
        return (
            f"Stasheff identities hold on all {self.checked_words} words up to length "
            f"{self.unchecked_beyond_length - 1}; longer words are cut off by the truncation"
        )


def build_ainfty(space: GradedSpace, ops, weight_cap: int) -> AInftyAlgebra:
    """Validate degrees and the Stasheff identities through the truncation.

    ``ops`` maps words (tuples of ids) to Elements or coefficient dicts.
    """
    if weight_cap < 0:
        raise SchemaError("weight cap must be nonnegative")
    for b in space.basis:
        if any(ch in b.id for ch in RESERVED):
            raise SchemaError(f"basis id {b.id!r} uses a reserved character")
    clean = {}
    for word, val in dict(ops).items():
        word = tuple(word)
        if not word or any(a not in space for a in word):
            raise SchemaError(f"bad operation word {word!r}")
        if len(word) > weight_cap + 1:
            raise TruncationMismatch(f"m_{len(word)} exceeds weight cap {weight_cap}")
        if not isinstance(val, Element):
            val = space.element(val)
        if not val:
            continue
        want = sum(space[a].degree for a in word) + 1
        if val.degrees() != {want}:
            raise WrongDegree(f"m{word} must have degree {want}")
        clean[word] = val
    alg = AInftyAlgebra(space, clean, weight_cap)
    alg.report = validate_stasheff(alg)
    return alg


def validate_stasheff(alg: AInftyAlgebra) -> StasheffReport:
    count = 0
    for w in words(alg.space, alg.weight_cap + 1):
        count += 1
        defect = alg.stasheff_defect(w)
        if defect:
            raise StasheffViolation(w, len(w) - 1, defect)
    return StasheffReport(alg.weight_cap, count, alg.weight_cap + 2)


def word_id(word) -> str:
    return "|".join(word)


def bar_space(alg: AInftyAlgebra, weight_cap: int | None = None) -> GradedSpace:
    """Words as a graded space; a word of weight ``k`` gets filtration weight ``k+1``."""
    cap = alg.weight_cap if weight_cap is None else weight_cap
    return build_space((word_id(w), alg.degree(w), len(w)) for w in words(alg.space, cap + 1))


def _bar_map(alg, sp, arities):
    cols = {}
    for w in words(alg.space, alg.weight_cap + 1):
        img = alg.coderivation({w: Fraction(1)}, arities)
        cols[word_id(w)] = sp.element({word_id(u): c for u, c in img.items()})
    return LinearMap(sp, sp, cols, 1)


def bar_differential(alg: AInftyAlgebra) -> LinearMap:
    sp = bar_space(alg)
    return _bar_map(alg, sp, None)


def bar_differential_parts(alg: AInftyAlgebra) -> tuple[LinearMap, LinearMap]:
    """``(d1, d2)``: the weight-preserving part from ``m_1`` and the rest.

    The cooperad contributes nothing to ``d1`` for associative algebras.
    """
    sp = bar_space(alg)
    higher = set(range(2, alg.weight_cap + 2))
    return _bar_map(alg, sp, {1}), _bar_map(alg, sp, higher)


class DeformationComplex:
    """``Def(A, B)`` truncated at a weight cap, with its brackets materialized."""

    def __init__(self, source: AInftyAlgebra, target: AInftyAlgebra, weight_cap: int):
        self.source = source
        self.target = target
        self.weight_cap = weight_cap
        basis = []
        self.key_of: dict[str, tuple] = {}
        self.id_of: dict[tuple, str] = {}
        for w in words(source.space, weight_cap + 1):
            for b in target.space.basis:
                bid = f"{word_id(w)}>{b.id}"
                basis.append((bid, b.degree - source.degree(w), len(w)))
                self.key_of[bid] = (w, b.id)
                self.id_of[(w, b.id)] = bid
        self.space = build_space(basis)
        self.algebra = CurvedAlgebra(self.space, self._brackets(), max(target.arities() + [1]))

    def _brackets(self):
        A, B, sp = self.source, self.target, self.space
        cap = self.weight_cap
        entries: dict[int, dict[tuple, dict]] = {}
        # l_1, second term: sum over u of D_A(u)[w] * delta_{u,b}
        pre: dict[tuple, list] = {}
        for u in words(A.space, cap + 1):
            for w, c in A.coderivation({u: Fraction(1)}).items():
                pre.setdefault(w, []).append((u, c))
        m1 = {w[0]: v for w, v in B.ops.items() if len(w) == 1}
        ones = entries.setdefault(1, {})
        for bid, (w, b) in self.key_of.items():
            acc: dict = {}
            for c, v in m1.get(b, Element(B.space, {})).coeffs.items():
                _add(acc, self.id_of[(w, c)], v)
            sign = 1 if sp[bid].degree % 2 else -1
            for u, c in pre.get(w, ()):
                _add(acc, self.id_of[(u, b)], sign * c)
            if acc:
                ones[(bid,)] = acc
        # l_m, m >= 2
        index = sp.index
        for bword, val in B.ops.items():
            m = len(bword)
            if m < 2:
                continue
            for v in words(A.space, cap + 1):
                if len(v) < m:
                    continue
                for cuts in compositions(len(v), m):
                    blocks = [v[cuts[i]:cuts[i + 1]] for i in range(m)]
                    es = [self.id_of[(blk, b)] for blk, b in zip(blocks, bword)]
                    edeg = [sp[e].degree for e in es]
                    wdeg = [A.degree(blk) for blk in blocks]
                    t = sum(edeg[j] * wdeg[i] for i in range(m) for j in range(i + 1, m))
                    sign_t = -1 if t % 2 else 1
                    key = tuple(sorted(es, key=index.__getitem__))
                    kdeg = [sp[e].degree for e in key]
                    eps = 0
                    for perm in permutations(range(m)):
                        if all(key[perm[i]] == es[i] for i in range(m)):
                            eps += koszul_sign(tuple(p + 1 for p in perm), kdeg)
                    if not eps:
                        continue
                    tab = entries.setdefault(m, {}).setdefault(key, {})
                    for c, coef in val.coeffs.items():
                        _add(tab, self.id_of[(v, c)], eps * sign_t * coef)
        return {n: {k: Element(sp, v) for k, v in t.items() if v} for n, t in entries.items()}

    def element(self, components: dict) -> Element:
        """Element from ``{word: Element of B or coefficient dict}``."""
        acc = {}
        for w, val in components.items():
            w = tuple(w)
            if not isinstance(val, Element):
                val = self.target.space.element(val)
            for b, c in val.coeffs.items():
                if (w, b) not in self.id_of:
                    raise TruncationMismatch(f"word {w} lies beyond the truncation")
                acc[self.id_of[(w, b)]] = c
        return Element(self.space, acc)

    def components(self, x: Element) -> dict:
        """``{word: Element of B}`` for an element of the complex."""
        out: dict = {}
        for bid, c in x.sorted_items():
            w, b = self.key_of[bid]
            out.setdefault(w, {})[b] = c
        return {w: Element(self.target.space, v) for w, v in out.items()}

    def by_weight(self, x: Element) -> dict:
        """Components grouped by word weight (length minus one)."""
        out: dict = {}
        for w, val in self.components(x).items():
            out.setdefault(len(w) - 1, {})[w] = val
        return out

    def identity(self) -> Element:
        if self.source.space != self.target.space:
            raise SchemaError("identity needs equal spaces")
        return self.element({(a,): {a: 1} for a in self.source.space.ids})

    def weight_layer_dims(self) -> dict:
        """``{(weight, degree): dimension}``."""
        out: dict = {}
        for b in self.space.basis:
            key = (b.weight - 1, b.degree)
            out[key] = out.get(key, 0) + 1
        return out


def def_complex(A: AInftyAlgebra, B: AInftyAlgebra, weight_cap: int) -> DeformationComplex:
    if weight_cap > A.weight_cap or weight_cap > B.weight_cap:
        raise TruncationMismatch(
            f"requested weight cap {weight_cap} exceeds the data (source {A.weight_cap}, target {B.weight_cap})"
        )
    return DeformationComplex(A, B, weight_cap)


def hom_from_linear(dc: DeformationComplex, f: LinearMap) -> Element:
    """The weight-0 element of ``Def(A, B)`` given by a linear map."""
    if f.degree_shift != 0:
        raise WrongDegree("a linear map of degree 0 is required")
    if f.source != dc.source.space or f.target != dc.target.space:
        raise SchemaError("map does not go from the source to the target")
    return dc.element({(a,): f(dc.source.space.vector(a)) for a in dc.source.space.ids})


def twist_by_map(A: AInftyAlgebra, B: AInftyAlgebra, f: LinearMap, weight_cap: int):
    """``(Def(A, B), Def(A, B) twisted by f)``."""
    dc = def_complex(A, B, weight_cap)
    return dc, twist(dc.algebra, hom_from_linear(dc, f))


def _tensor_of(dc: DeformationComplex, comps: dict, word) -> dict:
    """``F(word)`` for the coalgebra map with degree-0 components ``comps``."""
    out: dict = {}
    n = len(word)
    for m in range(1, n + 1):
        for cuts in compositions(n, m):
            parts = []
            for i in range(m):
                val = comps.get(word[cuts[i]:cuts[i + 1]])
                if val is None:
                    break
                parts.append(list(val.coeffs.items()))
            else:
                for combo in product(*parts):
                    c = Fraction(1)
                    for _, v in combo:
                        c *= v
                    _add(out, tuple(b for b, _ in combo), c)
    return out


@dataclass
class MorphismReport:
    mc: bool
    commutes: bool
    defect: Element
    failing_word: tuple | None = None

    @property
    def ok(self):
        return self.mc and self.commutes

    def __bool__(self):
        return self.ok


def check_morphism(dc: DeformationComplex, F: Element) -> MorphismReport:
    """Maurer-Cartan test and direct commutation test, computed independently."""
    if F.space != dc.space:
        raise SchemaError("element outside the deformation complex")
    if F.degrees() - {0}:
        raise WrongDegree("an infinity-morphism has degree 0")
    defect = mc_defect(dc.algebra, F)
    comps = dc.components(F)
    failing = None
    for w in words(dc.source.space, dc.weight_cap + 1):
        lhs = dc.target.coderivation(_tensor_of(dc, comps, w))
        rhs: dict = {}
        for u, c in dc.source.coderivation({w: Fraction(1)}).items():
            for t, v in _tensor_of(dc, comps, u).items():
                _add(rhs, t, c * v)
        if lhs != rhs:
            failing = w
            break
    return MorphismReport(not defect, failing is None, defect, failing)


def is_infinity_morphism(A: AInftyAlgebra, B: AInftyAlgebra, F: Element, weight_cap: int, dc=None) -> bool:
    dc = dc or def_complex(A, B, weight_cap)
    rep = check_morphism(dc, F)
    if rep.mc != rep.commutes:
        raise AssertionError("Maurer-Cartan and commutation tests disagree")
    return rep.ok


def weight_zero_map(dc: DeformationComplex, F: Element) -> LinearMap:
    comps = dc.components(F)
    cols = {a: comps.get((a,), Element(dc.target.space, {})) for a in dc.source.space.ids}
    return LinearMap(dc.source.space, dc.target.space, cols, 0)


def differential_of(alg: AInftyAlgebra) -> LinearMap:
    cols = {w[0]: v for w, v in alg.ops.items() if len(w) == 1}
    return LinearMap(alg.space, alg.space, cols, 1)


def induces_isomorphism(f: LinearMap, dA: LinearMap, dB: LinearMap) -> bool:
    """Whether a chain map induces an isomorphism on cohomology."""
    A, B = f.source, f.target
    hA = compute_cohomology(A, dA)
    hB = compute_cohomology(B, dB)
    for n in sorted(set(hA) | set(hB)):
        if hA.get(n, 0) != hB.get(n, 0):
            return False
        src = A.layer(n)
        tgt = B.layer(n)
        if not src:
            continue
        zA = linalg.nullspace(dA.matrix(src, A.layer(n + 1)), len(src)) if A.layer(n + 1) else linalg.nullspace([], len(src))
        img = [[sum((row[j] * z[j] for j in range(len(src))), Fraction(0)) for row in f.matrix(src, tgt)] for z in zA]
        prev = B.layer(n - 1)
        bnd = []
        if prev:
            mat = dB.matrix(prev, tgt)
            bnd = [[mat[i][j] for i in range(len(tgt))] for j in range(len(prev))]
        rk = linalg.rank(img + bnd, len(tgt)) - (linalg.rank(bnd, len(tgt)) if bnd else 0)
        if rk != hB.get(n, 0):
            return False
    return True


def is_infinity_quasi_iso(A: AInftyAlgebra, B: AInftyAlgebra, F: Element, weight_cap: int, dc=None) -> bool:
    dc = dc or def_complex(A, B, weight_cap)
    if not is_infinity_morphism(A, B, F, weight_cap, dc):
        raise NotAMorphism("the element is not an infinity-morphism")
    f0 = weight_zero_map(dc, F)
    if not f0.compose(differential_of(A)).columns == differential_of(B).compose(f0).columns:
        raise NotAMorphism("the weight-0 component is not a chain map")
    return induces_isomorphism(f0, differential_of(A), differential_of(B))


@dataclass
class FormalityResult:
    formal: bool
    vanishing: bool
    curvature_weight: float
    complex: DeformationComplex = field(repr=False)
    twisted: CurvedAlgebra = field(repr=False)
    certificate: object = None
    morphism: Element | None = None
    obstruction: Element | None = None
    obstruction_weight: int | None = None

    @property
    def verdict(self):
        return "formal" if self.formal else "obstructed"


def intrinsic_formality_check(H: AInftyAlgebra, transferred: AInftyAlgebra, weight_cap: int, r: int = 1,
                              check_relations: bool = False) -> FormalityResult:
    """Try to build an infinity-quasi-isomorphism ``transferred -> H`` with identity weight-0 part.

    ``H`` is the strict algebra (only ``m_2``); ``transferred`` is a minimal
    structure on the same space with the same ``m_2``.
    """
    if H.space != transferred.space:
        raise NotTransferredStructure("the transferred structure must live on the same space")
    if any(len(w) != 2 for w in H.ops):
        raise NotTransferredStructure("the reference algebra must have only a binary product")
    if any(len(w) == 1 for w in transferred.ops):
        raise NotTransferredStructure("a transferred structure on cohomology has m_1 = 0")
    m2 = {w: v for w, v in transferred.ops.items() if len(w) == 2}
    if m2 != H.ops:
        raise NotTransferredStructure("binary products differ")
    dc = def_complex(transferred, H, weight_cap)
    D = twist(dc.algebra, dc.identity())
    cw = curvature_filtration(D)
    if cw < 3:
        raise PreconditionViolated(f"twisted curvature has filtration {cw}, expected at least 3")
    mu1 = D.differential()
    for b in D.space.basis:
        if filtration_weight(mu1(D.space.vector(b.id))) <= b.weight:
            raise PreconditionViolated(f"twisted differential does not raise the filtration of {b.id}")
    vanishing = vanishing_in_total_degree(D, r, 1)
    res = FormalityResult(False, vanishing, cw, dc, D)
    try:
        cert = solve_mc(D, r, check=check_relations)
    except HypothesisFailed as exc:
        res.obstruction = exc.obstruction
        if exc.obstruction is not None:
            res.obstruction_weight = int(filtration_weight(exc.obstruction)) - 1
        return res
    res.certificate = cert
    res.morphism = dc.identity() + cert.alpha
    res.formal = is_infinity_quasi_iso(transferred, H, res.morphism, weight_cap, dc)
    return res


def gauge_transport(H: AInftyAlgebra, h: dict, weight_cap: int | None = None) -> AInftyAlgebra:
    """Structure ``G^{-1} D G`` for the coalgebra automorphism ``G = (id, h)``.

    ``h`` maps length-2 words to Elements (or dicts) of degree 0. The result
    is infinity-isomorphic to ``H`` through ``G``; its ``m_3`` is the
    coboundary of ``h``.
    """
    cap = H.weight_cap if weight_cap is None else weight_cap
    sp = H.space
    comps = {(a,): sp.vector(a) for a in sp.ids}
    for w, val in h.items():
        w = tuple(w)
        if len(w) != 2:
            raise SchemaError("gauge components live on words of length 2")
        val = val if isinstance(val, Element) else sp.element(val)
        if val and val.degrees() != {H.degree(w)}:
            raise WrongDegree(f"h{w} must have degree {H.degree(w)}")
        comps[w] = val

    def G(word):
        out: dict = {}
        n = len(word)
        for m in range(1, n + 1):
            for cuts in compositions(n, m):
                parts = []
                for i in range(m):
                    val = comps.get(word[cuts[i]:cuts[i + 1]])
                    if val is None or not val:
                        break
                    parts.append(list(val.coeffs.items()))
                else:
                    for combo in product(*parts):
                        c = Fraction(1)
                        for _, v in combo:
                            c *= v
                        _add(out, tuple(b for b, _ in combo), c)
        return out

    inverse: dict = {}

    def G_inv(word):
        # G(v) = v + shorter words, so invert by recursion on length
        if word not in inverse:
            out = {word: Fraction(1)}
            for u, c in G(word).items():
                if u != word:
                    for t, v in G_inv(u).items():
                        _add(out, t, -c * v)
            inverse[word] = out
        return inverse[word]

    ops = {}
    for w in words(sp, cap + 1):
        acc: dict = {}
        for u, c in H.coderivation(G(w)).items():
            for t, v in G_inv(u).items():
                if len(t) == 1:
                    _add(acc, t[0], c * v)
        if acc:
            ops[w] = Element(sp, acc)
    return build_ainfty(sp, ops, cap)
