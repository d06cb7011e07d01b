"""Small worked algebras used by tests, scripts and the CLI goldens."""
from __future__ import annotations

from .graded import build_space
from .linfty import CurvedAlgebra


def s1():
    return build_space([("e0", 0, 2), ("e1", 1, 3)])


def a1():
    """Curvature ``e1`` killed by the Maurer-Cartan element ``-e0``."""
    sp = s1()
    return CurvedAlgebra.from_brackets(sp, [((), {"e1": 1}), (("e0",), {"e1": 1})])


def a1_broken():
    """Adds a degree-inconsistent ``mu_1(e1) = e1`` so the arity-0 relation fails."""
    sp = s1()
    return CurvedAlgebra.from_brackets(
        sp, [((), {"e1": 1}), (("e0",), {"e1": 1}), (("e1",), {"e1": 1})],
        strict_degrees=False,
    )


def a2():
    """Needs two solver steps: the quadratic term reappears one weight up."""
    sp = build_space([("b", 0, 2), ("e", 0, 3), ("c", 1, 3), ("d", 1, 4)])
    return CurvedAlgebra.from_brackets(
        sp,
        [((), {"c": 1}), (("b",), {"c": 1}), (("e",), {"d": 1}), (("b", "b"), {"d": 2})],
    )


def a3():
    """Curvature that survives to the second page; no Maurer-Cartan element exists."""
    sp = build_space([("a", 0, 1), ("c", 1, 3)])
    return CurvedAlgebra.from_brackets(sp, [((), {"c": 1}), (("a",), {"c": 1}), (("a", "a"), {"c": 2})])


def low_curvature():
    """Curvature only in ``F_1``, so no page beyond the first is defined."""
    sp = build_space([("u", 0, 1), ("v", 1, 1)])
    return CurvedAlgebra.from_brackets(sp, [((), {"v": 1})])


def flat_pair():
    sp = build_space([("u", 0, 1), ("v", 1, 2)])
    return CurvedAlgebra.from_brackets(sp, [(("u",), {"v": 1})])


# associative examples; degrees are shifted (an ungraded algebra sits in degree -1)

def dual_numbers(cap: int = 3):
    """Unital ``k[x]/x^2``."""
    from .ainfty import build_ainfty

    sp = build_space([("one", -1, 1), ("x", -1, 1)])
    ops = {("one", "one"): {"one": 1}, ("one", "x"): {"x": 1}, ("x", "one"): {"x": 1}}
    return build_ainfty(sp, ops, cap)


def truncated_poly(cap: int = 3):
    """``k[x]/x^4`` without unit, ``x`` in unshifted degree 1."""
    from .ainfty import build_ainfty

    sp = build_space([("x", 0, 1), ("y", 1, 1), ("z", 2, 1)])
    ops = {("x", "x"): {"y": -1}, ("x", "y"): {"z": -1}, ("y", "x"): {"z": 1}}
    return build_ainfty(sp, ops, cap)


EXACT_GAUGE = {("x", "x"): {"x": 1}}


def exact_m3(cap: int = 3):
    """``truncated_poly`` with its bar differential conjugated by ``(id, h)``; ``m_3`` is exact."""
    from .ainfty import gauge_transport

    return gauge_transport(truncated_poly(cap), EXACT_GAUGE)


def trivial_products(cap: int = 3):
    from .ainfty import build_ainfty

    return build_ainfty(build_space([("x", 0, 1), ("y", 1, 1), ("w", 0, 1)]), {}, cap)


def massey_m3(cap: int = 3):
    """Only ``m_3(x, x, x) = y``; ``m_3 ∘ m_3`` lives beyond weight cap 3."""
    from .ainfty import build_ainfty

    return build_ainfty(trivial_products(cap).space, {("x", "x", "x"): {"y": 1}}, cap)


def contractible_pair(cap: int = 3):
    """``m_1(u) = v`` plus a cycle ``x``; cohomology is spanned by ``x``."""
    from .ainfty import build_ainfty

    sp = build_space([("x", 0, 1), ("u", -1, 1), ("v", 0, 1)])
    return build_ainfty(sp, {("u",): {"v": 1}}, cap)
