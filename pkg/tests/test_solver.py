import random
from dataclasses import replace
from math import factorial

import pytest
import sympy
from hypothesis import given

from lix.errors import HypothesisFailed, Obstructed, RelationCheckFailed
from lix.fixtures import a1, a1_broken, a2, a3, flat_pair, low_curvature
from lix.generate import solvable_instance
from lix.graded import INF, build_space, filtration_weight
from lix.linfty import CurvedAlgebra, curvature_filtration, mc_defect
from lix.solver import MCCertificate, curvature_step, solve_mc, verify_certificate
from strategies import solvable


def test_curvature_step_examples():
    A1 = a1()
    alpha, t = curvature_step(A1, 1, 3)
    assert alpha == A1.space.vector("e0") and not t.curvature
    A2 = a2()
    alpha, t = curvature_step(A2, 1, 3)
    assert alpha == A2.space.vector("b")
    assert t.curvature == A2.space.vector("d") and curvature_filtration(t) == 4
    with pytest.raises(Obstructed) as exc:
        curvature_step(a3(), 1, 3)
    assert exc.value.obstruction == a3().space.vector("c")


def test_solve_fixtures():
    cert = solve_mc(flat_pair(), 1)
    assert not cert.alpha and cert.steps == []
    A1 = a1()
    cert = solve_mc(A1, 1)
    assert cert.alpha == -A1.space.vector("e0") and cert.trace == [3, INF]
    A2 = a2()
    cert = solve_mc(A2, 1)
    assert cert.alpha == -A2.space.vector("b") - A2.space.vector("e")
    assert cert.trace == [3, 4, INF]
    with pytest.raises(HypothesisFailed) as exc:
        solve_mc(a3(), 1)
    assert exc.value.reason == "Obstructed" and exc.value.k == 3
    assert exc.value.obstruction == a3().space.vector("c")


def test_solver_preconditions():
    with pytest.raises(RelationCheckFailed):
        solve_mc(a1_broken(), 1)
    with pytest.raises(HypothesisFailed) as exc:
        solve_mc(low_curvature(), 1)
    assert exc.value.reason == "CurvatureTooLow"


def test_certificates():
    A2 = a2()
    cert = solve_mc(A2, 1)
    assert verify_certificate(A2, cert)
    bad = replace(cert, alpha=cert.alpha + A2.space.vector("e"))
    assert mc_defect(A2, bad.alpha) == A2.space.vector("d")
    assert not verify_certificate(A2, bad)
    assert not verify_certificate(A2, replace(cert, steps=cert.steps[:1]))
    flat = flat_pair()
    assert verify_certificate(flat, MCCertificate(flat.space.zero(), 1, []))


@given(solvable())
def test_solver_on_generated_instances(data):
    A, r = data
    cert = solve_mc(A, r)
    assert not mc_defect(A, cert.alpha)
    assert filtration_weight(cert.alpha) >= r + 1
    for st in cert.steps:
        assert filtration_weight(st.twist) >= st.k - r
        assert st.after > st.before
    assert verify_certificate(A, cert)


def _sympy_defect(A: CurvedAlgebra, coords: dict):
    """Maurer-Cartan polynomials written directly from the bracket table."""
    syms = {b: sympy.Symbol(b) for b in coords}
    out = {b.id: sympy.Integer(0) for b in A.space.basis if b.degree == 1}
    for n, table in A.entries.items():
        for key, val in table.items():
            if not all(k in syms for k in key):
                continue
            term = sympy.Integer(1)
            for k in set(key):
                term *= syms[k] ** key.count(k) / factorial(key.count(k))
            for t, c in val.coeffs.items():
                out[t] += sympy.Rational(c.numerator, c.denominator) * term
    return syms, out


def test_solver_lands_on_the_mc_variety():
    rng = random.Random(8)
    checked = 0
    for _ in range(30):
        A = solvable_instance(rng, r=1, pairs=rng.randint(1, 2))
        degree0 = [b.id for b in A.space.basis if b.degree == 0]
        syms, polys = _sympy_defect(A, {b: 0 for b in degree0})
        cert = solve_mc(A, 1)
        point = {syms[b]: sympy.Rational(cert.alpha.coeff(b).numerator, cert.alpha.coeff(b).denominator) for b in degree0}
        assert all(sympy.simplify(p.subs(point)) == 0 for p in polys.values())
        nonzero = [p for p in polys.values() if p != 0]
        if nonzero:
            assert sympy.solve(nonzero, list(syms.values()), dict=True)
        checked += 1
    assert checked == 30


def test_obstruction_without_mc_element():
    # mu_0 + mu_1(t a) + mu_2(t a, t a)/2 = (1 + t + t^2) c has no rational root
    syms, polys = _sympy_defect(a3(), {"a": 0})
    sols = sympy.solve(list(polys.values()), list(syms.values()), dict=True)
    assert sols and all(not s[syms["a"]].is_rational for s in sols)


def test_zero_curvature_beyond_weights():
    sp = build_space([("a", 0, 1)])
    cert = solve_mc(CurvedAlgebra(sp, {}), 0)
    assert cert.trace == [INF]
