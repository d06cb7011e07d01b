"""Independent sympy computations used as oracles."""
import sympy


def gr_homology(A, p, n):
    """Homology at (p, n) of the associated graded, via sympy."""
    sp = A.space
    d = A.differential()
    layer = lambda k: [b.id for b in sp.basis if b.degree == k and b.weight == p]
    src, tgt, prev = layer(n), layer(n + 1), layer(n - 1)
    r_out = sympy.Matrix(d.matrix(src, tgt)).rank() if src and tgt else 0
    r_in = sympy.Matrix(d.matrix(prev, src)).rank() if prev and src else 0
    return len(src) - r_out - r_in


def graded_cohomology(A, p, n):
    """dim F_p H^n / F_{p+1} H^n, via sympy."""
    sp = A.space
    d = A.differential()

    def filtered(pp):
        src = [b.id for b in sp.basis if b.degree == n and b.weight >= pp]
        tgt = sp.layer(n + 1)
        z = len(src) - (sympy.Matrix(d.matrix(src, tgt)).rank() if src and tgt else 0)
        prev, here = sp.layer(n - 1), sp.layer(n)
        if not prev or not here:
            return z
        img = sympy.Matrix(d.matrix(prev, here))
        low = [i for i, b in enumerate(here) if sp[b].weight < pp]
        bdim = img.rank()
        b_in = bdim - (img.extract(low, list(range(len(prev)))).rank() if low else 0)
        return z - b_in

    return filtered(p) - filtered(p + 1)


def layer_cohomology(alg, weight, degree):
    """Cohomology of a weight-raising differential at one (weight, degree), via sympy."""
    sp = alg.space
    d = alg.differential()
    lay = lambda w, n: [b.id for b in sp.basis if b.weight == w and b.degree == n]
    here, up, down = lay(weight, degree), lay(weight + 1, degree + 1), lay(weight - 1, degree - 1)
    r_out = sympy.Matrix(d.matrix(here, up)).rank() if here and up else 0
    r_in = sympy.Matrix(d.matrix(down, here)).rank() if down and here else 0
    return len(here) - r_out - r_in
