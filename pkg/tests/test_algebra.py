from fractions import Fraction

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given, settings

from pbl.algebra import (
    BinaryForm,
    MultiPoly,
    RatMatrix,
    as_rational,
    binary_forms_common_root,
    det,
    inverse,
    kernel_basis,
    mat_rank,
    poly_gcd,
    rational_str,
    resultant_monic,
    solve,
    sparse_rank,
)
from pbl.errors import AllFormsZero, BadInput

small = st.integers(-4, 4)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols, elems=small):
    return st.lists(st.lists(elems, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n, fracs)))
@settings(max_examples=60, deadline=None)
def test_det_matches_sympy(rows):
    assert det(RatMatrix(rows)) == Fraction(str(sympy.Matrix(rows).det()))


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(rows):
    assert mat_rank(RatMatrix(rows)) == sympy.Matrix(rows).rank()


@given(matrices(3, 5))
@settings(max_examples=60, deadline=None)
def test_kernel_is_kernel_and_has_right_size(rows):
    M = RatMatrix(rows)
    ker = kernel_basis(M)
    assert len(ker) == 5 - mat_rank(M)
    for v in ker:
        assert all(c == 0 for c in M.apply(v))


@given(matrices(4, 4, fracs))
@settings(max_examples=60, deadline=None)
def test_inverse_round_trip(rows):
    M = RatMatrix(rows)
    if det(M) == 0:
        return
    I = M @ inverse(M)
    assert I == RatMatrix.identity(4)


def test_solve_returns_none_when_inconsistent():
    M = RatMatrix([[1, 1], [2, 2]])
    assert solve(M, [1, 3]) is None
    x = solve(M, [1, 2])
    assert M.apply(x) == (1, 2)


@given(st.lists(st.dictionaries(st.integers(0, 7), st.integers(-3, 3), max_size=4), min_size=1, max_size=8))
@settings(max_examples=80, deadline=None)
def test_sparse_rank_matches_dense(rows):
    dense = [[r.get(j, 0) for j in range(8)] for r in rows]
    assert sparse_rank(rows) == sympy.Matrix(dense).rank()


def test_rational_parsing():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(-2) == -2
    assert rational_str(Fraction(-4, 6)) == "-2/3"
    with pytest.raises((ValueError, BadInput)):
        as_rational("x")


def _sym(p: MultiPoly, names):
    expr = 0
    for e, c in p.terms.items():
        mono = sympy.Rational(c.numerator, c.denominator)
        for v, k in zip(names, e):
            mono *= v ** k
        expr += mono
    return sympy.expand(expr)


def test_resultant_matches_sympy():
    blocks = (("x", 2), ("y", 1))
    x0 = MultiPoly.variable(blocks, "x", 0)
    x1 = MultiPoly.variable(blocks, "x", 1)
    y = MultiPoly.variable(blocks, "y", 0)
    f = y ** 3 - x0 * x1 + MultiPoly.constant(blocks, 2)
    g = y ** 2 * x0 + y * x1 - x0 * x1 + MultiPoly.constant(blocks, 5)
    names = sympy.symbols("x0 x1 y")
    expected = sympy.resultant(_sym(f, names), _sym(g, names), names[2])
    got = resultant_monic(f, g, 2)
    assert sympy.expand(_sym(got, names) - expected) == 0


def test_resultant_rejects_non_monic():
    blocks = (("y", 1),)
    y = MultiPoly.variable(blocks, "y", 0)
    with pytest.raises(BadInput):
        resultant_monic(y * 2, y, 0)


@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=3))
@settings(max_examples=80, deadline=None)
def test_poly_gcd_matches_sympy(a, b, c):
    u = sympy.symbols("u")
    pa = [Fraction(x) for x in a]
    pb = [Fraction(x) for x in b]
    pc = [Fraction(x) for x in c]

    def mul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(q):
                out[i + j] += x * y
        return out

    A, B = mul(pa, pc), mul(pb, pc)
    got = poly_gcd(A, B)
    sa = sum(x * u ** i for i, x in enumerate(A))
    sb = sum(x * u ** i for i, x in enumerate(B))
    want = sympy.Poly(sympy.gcd(sa, sb), u)
    if not got:
        assert sa == 0 and sb == 0
        return
    assert len(got) - 1 == want.degree()


@given(st.lists(st.tuples(small, small), min_size=1, max_size=3), st.tuples(small, small))
@settings(max_examples=80, deadline=None)
def test_common_root_detected(extra, root):
    # every form vanishes at [p:q] after multiplying by (q u - p v)
    p, q = root
    if p == 0 and q == 0:
        return
    lin = BinaryForm.linear(q, -p)
    forms = [lin * BinaryForm.linear(a, b) for a, b in extra]
    if all(f.is_zero() for f in forms):
        return
    assert binary_forms_common_root(forms)
    for f in forms:
        assert f.evaluate(p, q) == 0


def test_coprime_forms_have_no_common_root():
    assert not binary_forms_common_root([BinaryForm.linear(1, 0), BinaryForm.linear(0, 1)])
    with pytest.raises(AllFormsZero):
        binary_forms_common_root([BinaryForm.constant(0)])


def test_multipoly_json_round_trip_and_evaluate():
    blocks = (("a", 2), ("y", 2))
    p = MultiPoly(blocks, {(1, 0, 2, 0): Fraction(1, 3), (0, 1, 0, 1): -2})
    q = MultiPoly.from_json(p.to_json())
    assert q.terms == p.terms
    assert p.evaluate({"a": [3, 1], "y": [1, 4]}) == Fraction(1) - 8
    assert not p.is_multihomogeneous()
    assert MultiPoly(blocks, {(1, 0, 1, 1): 1, (0, 1, 2, 0): 5}).is_multihomogeneous()
