"""Random filtered algebras for property tests and experiments."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from .graded import Element, GradedSpace, build_space
from .linfty import CurvedAlgebra, check_relations

COEFFS = [Fraction(c) for c in (-2, -1, 1, 2)] + [Fraction(1, 2), Fraction(-3, 2)]


def random_space(rng: random.Random, dim: int, degrees=(-1, 0, 1, 2), max_weight: int = 3) -> GradedSpace:
    return build_space((f"v{i}", rng.choice(degrees), rng.randint(1, max_weight)) for i in range(dim))


def _random_value(rng, sp: GradedSpace, degree: int, min_weight: int):
    cands = [b.id for b in sp.basis if b.degree == degree and b.weight >= min_weight]
    if not cands:
        return None
    k = rng.randint(1, len(cands))
    return sp.element({c: rng.choice(COEFFS) for c in rng.sample(cands, k)})


def random_algebra(rng: random.Random, dim: int = 4, max_arity: int = 3, density: float = 0.5, **space_kw) -> CurvedAlgebra:
    """Weight-additive brackets with random entries; relations are not enforced."""
    sp = random_space(rng, dim, **space_kw)
    basis = sp.basis
    entries: dict = {}
    for n in range(max_arity + 1):
        for combo in combinations_with_replacement(range(len(basis)), n):
            if any(combo.count(c) > 1 and basis[c].degree % 2 for c in combo):
                continue
            if rng.random() > density:
                continue
            deg = sum(basis[c].degree for c in combo) + 1
            wt = max(1, sum(basis[c].weight for c in combo))
            val = _random_value(rng, sp, deg, wt)
            if val:
                entries.setdefault(n, {})[tuple(basis[c].id for c in combo)] = val
    return CurvedAlgebra(sp, entries, max_arity)


def repair(alg: CurvedAlgebra, rng: random.Random, max_relation_arity: int = 3) -> CurvedAlgebra:
    """Delete bracket entries implicated in failing relations until none fail."""
    entries = {n: dict(t) for n, t in alg.entries.items()}
    while True:
        cur = CurvedAlgebra(alg.space, entries, alg.max_arity)
        rep = check_relations(cur, max_relation_arity)
        if rep.ok:
            return cur
        _, ids, _ = rep.violations[0]
        involved = set(ids)
        for n, table in cur.entries.items():
            for key, val in table.items():
                if set(key) <= set(ids):
                    involved |= set(val.coeffs)
        cands = [(n, k) for n, t in entries.items() for k in t if n == 0 or set(k) & involved]
        if not cands:
            cands = [(n, k) for n, t in entries.items() for k in t]
        n, k = rng.choice(sorted(cands))
        del entries[n][k]


def random_valid_algebra(rng: random.Random, **kw) -> CurvedAlgebra:
    return repair(random_algebra(rng, **kw), rng)


def random_element(rng: random.Random, sp: GradedSpace, degree: int = 0, density: float = 0.6) -> Element:
    return sp.element({b.id: rng.choice(COEFFS) for b in sp.basis if b.degree == degree and rng.random() < density})


def solvable_instance(rng: random.Random, r: int = 1, pairs: int = 3, max_arity: int = 3) -> CurvedAlgebra:
    """An algebra meeting the solver's hypotheses by construction.

    Degree-0 vectors ``a_i`` pair with degree-1 vectors ``c_i``: ``mu_1(a_i)`` is
    ``c_i`` plus higher-weight terms and ``c_i`` sits at most ``r`` weights above
    ``a_i``, so every degree-1 class lifts with filtration loss at most ``r``.
    All relations land in degree 2, which is empty.
    """
    top = 2 * r + 3
    specs = []
    for i in range(pairs):
        wc = rng.randint(r + 1, top)
        wa = max(1, wc - rng.randint(0, r))
        specs.append((i, wa, wc))
    basis = [(f"a{i}", 0, wa) for i, wa, _ in specs] + [(f"c{i}", 1, wc) for i, _, wc in specs]
    sp = build_space(basis)
    entries: dict = {1: {}}
    for i, _, wc in specs:
        val = {f"c{i}": Fraction(1)}
        for j, _, wj in specs:
            if wj > wc and rng.random() < 0.5:
                val[f"c{j}"] = rng.choice(COEFFS)
        entries[1][(f"a{i}",)] = sp.element(val)
    curv = _random_value(rng, sp, 1, 2 * r + 1)
    if curv is not None:
        entries[0] = {(): curv}
    avec = [b for b in sp.basis if b.degree == 0]
    for n in range(2, max_arity + 1):
        for combo in combinations_with_replacement(avec, n):
            if rng.random() < 0.5:
                val = _random_value(rng, sp, 1, sum(b.weight for b in combo))
                if val is not None:
                    entries.setdefault(n, {})[tuple(b.id for b in combo)] = val
    return CurvedAlgebra(sp, entries, max_arity)


def random_filtered_complex(rng: random.Random, dim: int = 6, degrees=(0, 1, 2), max_weight: int = 4) -> CurvedAlgebra:
    """A flat algebra with only ``mu_1``, built as ``P J P^{-1}``.

    ``J`` matches some vectors with vectors one degree up and no lower in
    weight; ``P`` adds later basis vectors of equal degree and no lower weight,
    so all three maps respect the filtration and ``mu_1^2 = 0``.
    """
    sp = random_space(rng, dim, degrees=degrees, max_weight=max_weight)
    basis = sp.basis
    free = set(range(dim))
    match = {}
    for i in rng.sample(range(dim), dim):
        if i not in free:
            continue
        cands = [j for j in free if j != i and basis[j].degree == basis[i].degree + 1 and basis[j].weight >= basis[i].weight]
        if cands and rng.random() < 0.8:
            j = rng.choice(sorted(cands))
            match[i] = j
            free -= {i, j}

    def p_col(i):
        col = {i: Fraction(1)}
        for j in range(i + 1, dim):
            if basis[j].degree == basis[i].degree and basis[j].weight >= basis[i].weight and rng.random() < 0.5:
                col[j] = rng.choice(COEFFS)
        return col

    P = [p_col(i) for i in range(dim)]

    def apply(cols, vec):
        out: dict = {}
        for i, c in vec.items():
            for j, v in cols[i].items():
                out[j] = out.get(j, 0) + c * v
        return {k: v for k, v in out.items() if v}

    # P^{-1} column by column, by back substitution (P is unitriangular in basis order)
    Pinv = []
    for i in range(dim):
        x: dict = {}
        for k in range(i, dim):
            target = Fraction(1 if k == i else 0)
            s = sum((P[j].get(k, 0) * x.get(j, 0) for j in range(i, k)), Fraction(0))
            if target - s:
                x[k] = target - s
        Pinv.append(x)
    J = [{match[i]: Fraction(1)} if i in match else {} for i in range(dim)]
    cols = {}
    for i in range(dim):
        img = apply(P, apply(J, Pinv[i]))
        if img:
            cols[(basis[i].id,)] = Element(sp, {basis[j].id: v for j, v in img.items()})
    return CurvedAlgebra(sp, {1: cols} if cols else {}, 1)
