"""Pages of the spectral sequence of a curved filtered algebra.

``E_r^{p,q}`` consists of elements ``z`` in ``F_p`` of total degree ``p+q``
with ``mu_1 z`` in ``F_{p+r}``, modulo those already in ``F_{p+1}`` with the
same property and the part of ``mu_1(F_{p-r+1})`` that lies in ``F_p``.
With curvature in ``F_{2r+1}`` this is a genuine spectral sequence up to
page ``r+1``; beyond that pages are refused.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import PageBeyondCurvatureBound, PreconditionViolated
from .graded import INF, Element, filtration_weight, from_dense
from .linfty import CurvedAlgebra, curvature_filtration


def page_bound(alg: CurvedAlgebra):
    """Largest ``r`` with curvature in ``F_{2r+1}``; None when flat."""
    cw = curvature_filtration(alg)
    if cw == INF:
        return None
    return (int(cw) - 1) // 2


def _require_page(alg, r):
    if r < 0:
        raise ValueError("pages start at r = 0")
    rmax = page_bound(alg)
    if rmax is not None and r > rmax + 1:
        raise PageBeyondCurvatureBound(f"page {r} needs curvature in F_{2 * r - 1}; largest page is {rmax + 1}")


class _Layers:
    """Dense coordinates for ``mu_1`` between consecutive degrees."""

    def __init__(self, alg: CurvedAlgebra):
        self.alg = alg
        self.space = alg.space
        self.mu1 = alg.differential()
        self._ids: dict[int, list[str]] = {}

    def ids(self, n):
        if n not in self._ids:
            self._ids[n] = self.space.layer(n)
        return self._ids[n]

    def weights(self, n):
        return [self.space[i].weight for i in self.ids(n)]

    def apply(self, n, vec):
        """``mu_1`` of a dense vector in degree ``n``, as a dense vector in degree ``n+1``."""
        x = from_dense(self.space, self.ids(n), vec)
        return self.mu1(x).to_dense(self.ids(n + 1))

    def cycles_mod(self, n, p, s):
        """Basis of ``{z in F_p V^n : mu_1 z in F_{p+s}}`` in degree-n coordinates."""
        src = [i for i, w in enumerate(self.weights(n)) if w >= p]
        if not src:
            return []
        tgt_ids = [t for t in self.ids(n + 1) if self.space[t].weight < p + s]
        src_ids = [self.ids(n)[i] for i in src]
        rows = self.mu1.matrix(src_ids, tgt_ids)
        sols = linalg.nullspace(rows, len(src)) if tgt_ids else linalg.nullspace([], len(src))
        dim = len(self.ids(n))
        out = []
        for sol in sols:
            v = [Fraction(0)] * dim
            for k, i in enumerate(src):
                v[i] = sol[k]
            out.append(v)
        return out

    def boundaries_in(self, n, p, low):
        """Basis of ``mu_1(F_low V^{n-1}) ∩ F_p`` in degree-n coordinates."""
        pre = self.cycles_mod(n - 1, low, p - low)
        imgs = [self.apply(n - 1, y) for y in pre]
        return linalg.span_basis(imgs, len(self.ids(n)))


@dataclass
class PageEntry:
    r: int
    p: int
    q: int
    dim: int
    representatives: list = field(default_factory=list)
    # internal coordinates
    ids: list = field(default_factory=list, repr=False)
    numerator: list = field(default_factory=list, repr=False)
    denominator: list = field(default_factory=list, repr=False)
    rep_vectors: list = field(default_factory=list, repr=False)
    contained: bool = field(default=True, repr=False)

    @property
    def degree(self):
        return self.p + self.q

    def classify(self, vec):
        """Class coordinates of a numerator vector, or None if outside the numerator."""
        dim = len(self.ids)
        basis = self.rep_vectors + self.denominator
        if not basis:
            return [] if not any(vec) else None
        coords = linalg.coordinates(vec, basis, dim)
        if coords is None:
            return None
        return coords[: len(self.rep_vectors)]


def _entry(layers: _Layers, r: int, p: int, q: int) -> PageEntry:
    n = p + q
    dim = len(layers.ids(n))
    num = linalg.span_basis(layers.cycles_mod(n, p, r), dim)
    den = layers.cycles_mod(n, p + 1, r - 1) + layers.boundaries_in(n, p, p - r + 1)
    den = linalg.span_basis(den, dim)
    inside = linalg.intersection(num, den, dim)
    contained = len(inside) == len(den)
    reps = linalg.complement(num, inside, dim)
    sp = layers.space
    return PageEntry(
        r=r,
        p=p,
        q=q,
        dim=len(reps),
        representatives=[from_dense(sp, layers.ids(n), v) for v in reps],
        ids=layers.ids(n),
        numerator=num,
        denominator=inside,
        rep_vectors=reps,
        contained=contained,
    )


def page(alg: CurvedAlgebra, r: int, p: int, q: int) -> PageEntry:
    _require_page(alg, r)
    return _entry(_Layers(alg), r, p, q)


@dataclass
class PageMap:
    """``d_r`` between two page entries; ``matrix[i][j]`` is the i-th target coordinate of the j-th source class."""

    source: PageEntry
    target: PageEntry
    matrix: list

    def __call__(self, coords):
        return [sum((row[j] * coords[j] for j in range(len(coords))), Fraction(0)) for row in self.matrix]

    def rank(self):
        return linalg.rank(self.matrix, len(self.source.rep_vectors)) if self.matrix and self.source.dim else 0


def _differential(layers: _Layers, s: int, p: int, q: int, src=None, tgt=None) -> PageMap:
    src = src or _entry(layers, s, p, q)
    tgt = tgt or _entry(layers, s, p + s, q - s + 1)
    cols = []
    for v in src.rep_vectors:
        w = layers.apply(p + q, v)
        c = tgt.classify(w)
        if c is None:
            raise PreconditionViolated(f"mu_1 leaves the page at (p, q) = ({p + s}, {q - s + 1})")
        cols.append(c)
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(tgt.dim)]
    return PageMap(src, tgt, matrix)


def page_differential(alg: CurvedAlgebra, s: int, p: int, q: int) -> PageMap:
    """``d_s : E_s^{p,q} -> E_s^{p+s, q-s+1}``; the zero map on the last available page."""
    _require_page(alg, s)
    layers = _Layers(alg)
    rmax = page_bound(alg)
    if rmax is not None and s == rmax + 1:
        src, tgt = _entry(layers, s, p, q), _entry(layers, s, p + s, q - s + 1)
        return PageMap(src, tgt, [[Fraction(0)] * src.dim for _ in range(tgt.dim)])
    return _differential(layers, s, p, q)


@dataclass
class PageReport:
    checked_up_to: int = 0
    violations: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.errors

    def __bool__(self):
        return self.ok


def occupied(alg: CurvedAlgebra):
    """(p, q) pairs where a page can be nonzero."""
    sp = alg.space
    return [(p, n - p) for p in range(1, sp.nilpotency_bound) for n in sp.degrees()]


def verify_page_structure(alg: CurvedAlgebra, up_to: int) -> PageReport:
    """Check containment, well-definedness, ``d_s^2 = 0`` and ``E_{s+1} = H(E_s)``."""
    rep = PageReport()
    rmax = page_bound(alg)
    top = up_to
    if rmax is not None and up_to > rmax + 1:
        rep.errors.append(
            PageBeyondCurvatureBound(f"requested page {up_to}; curvature allows pages up to {rmax + 1}")
        )
        top = rmax + 1
    rep.checked_up_to = top
    layers = _Layers(alg)
    cells = occupied(alg)
    entries = {}

    def get(s, p, q):
        if (s, p, q) not in entries:
            entries[(s, p, q)] = _entry(layers, s, p, q)
        return entries[(s, p, q)]

    for s in range(top + 1):
        for p, q in cells:
            if not get(s, p, q).contained:
                rep.violations.append(("denominator", s, p, q))
    for s in range(top):
        maps = {}
        for p, q in cells:
            try:
                maps[(p, q)] = _differential(layers, s, p, q, get(s, p, q), get(s, p + s, q - s + 1))
            except PreconditionViolated:
                rep.violations.append(("well-defined", s, p, q))
                continue
            tgt = get(s, p + s, q - s + 1)
            for v in get(s, p, q).denominator:
                c = tgt.classify(layers.apply(p + q, v))
                if c is None or any(c):
                    rep.violations.append(("denominator-image", s, p, q))
                    break
        for (p, q), d in maps.items():
            nxt = maps.get((p + s, q - s + 1))
            if nxt is not None and d.matrix and nxt.matrix:
                if any(any(x) for x in linalg.matmul(nxt.matrix, d.matrix)):
                    rep.violations.append(("square", s, p, q))
        for p, q in cells:
            d_out = maps.get((p, q))
            if d_out is None:
                continue
            d_in = maps.get((p - s, q + s - 1))
            if d_in is None:
                d_in = _differential(layers, s, p - s, q + s - 1, get(s, p - s, q + s - 1), get(s, p, q))
            kernel = get(s, p, q).dim - d_out.rank()
            if get(s + 1, p, q).dim != kernel - d_in.rank():
                rep.violations.append(("homology", s, p, q))
    return rep


def vanishing_in_total_degree(alg: CurvedAlgebra, r: int, n: int) -> bool:
    """Whether ``E_{r+1}^{p, n-p}`` vanishes for every ``p``."""
    _require_page(alg, r + 1)
    layers = _Layers(alg)
    return all(_entry(layers, r + 1, p, n - p).dim == 0 for p in range(1, alg.space.nilpotency_bound))


def nonvanishing_entries(alg: CurvedAlgebra, r: int, n: int) -> list[PageEntry]:
    _require_page(alg, r + 1)
    layers = _Layers(alg)
    found = (_entry(layers, r + 1, p, n - p) for p in range(1, alg.space.nilpotency_bound))
    return [e for e in found if e.dim]


def lift_obstruction(alg: CurvedAlgebra, x: Element, p: int, r: int):
    """Find ``y`` in ``F_{p-r}`` with ``mu_1 y`` in ``F_p`` and ``x - mu_1 y`` in ``F_{p+1}``.

    ``x`` must be homogeneous, lie in ``F_p`` and have ``mu_1 x`` in
    ``F_{p+r+1}``. Returns None when no such ``y`` exists. The linear system
    is solved once, eliminating in basis order with free coordinates set to
    zero, so the answer is deterministic.
    """
    sp = alg.space
    if not x:
        return sp.zero()
    n = x.degree()
    mu1 = alg.differential()
    if filtration_weight(x) < p:
        raise PreconditionViolated(f"element is not in F_{p}")
    if filtration_weight(mu1(x)) < p + r + 1:
        raise PreconditionViolated(f"mu_1 of the element is not in F_{p + r + 1}")
    unknowns = sp.layer(n - 1, min_weight=p - r)
    eq_ids = sp.layer(n, max_weight=p + 1)
    rows = mu1.matrix(unknowns, eq_ids)
    rhs = [x.coeff(t) for t in eq_ids]
    if not unknowns:
        return None if any(rhs) else sp.zero()
    sol = linalg.solve(rows, rhs, len(unknowns))
    if sol is None:
        return None
    y = from_dense(sp, unknowns, sol)
    assert filtration_weight(mu1(y)) >= p and filtration_weight(x - mu1(y)) >= p + 1
    return y
