from itertools import product

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given

from pbl.cohomology import bott_h, h0_line, h0_tangent_twist


def brute_h0_line(n, k):
    if k < 0:
        return 0
    return sum(1 for e in product(range(k + 1), repeat=n + 1) if sum(e) == k)


def chi_line(n, m):
    # Hilbert polynomial of P^n, valid for every integer m
    x = sympy.Integer(m)
    return sympy.prod([(x + i) for i in range(1, n + 1)]) / sympy.factorial(n)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(0, 5) for k in range(-3, 5)])
def test_h0_line_by_counting_monomials(n, k):
    assert h0_line(n, k) == brute_h0_line(n, k)


def test_h0_line_examples():
    assert (h0_line(2, 2), h0_line(3, 0), h0_line(2, -1)) == (6, 1, 0)
    with pytest.raises(ValueError):
        h0_line(-1, 0)


@given(st.integers(1, 4), st.data(), st.integers(-6, 6))
def test_bott_euler_characteristic(n, data, k):
    # Koszul: chi(Omega^p(k)) = sum_j (-1)^j C(n+1, p-j) chi(O(k-p+j))
    p = data.draw(st.integers(0, n))
    chi = sum((-1) ** j * sympy.binomial(n + 1, p - j) * chi_line(n, k - p + j) for j in range(p + 1))
    assert sum((-1) ** q * bott_h(n, p, q, k) for q in range(n + 1)) == chi


@given(st.integers(1, 4), st.integers(-4, 6))
def test_bott_at_p0_is_h0_line(n, k):
    assert bott_h(n, 0, 0, k) == h0_line(n, k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tangent_anchors(n):
    assert h0_tangent_twist(n, -1) == n + 1
    assert all(h0_tangent_twist(n, i) == 0 for i in range(-5, -1))


@pytest.mark.parametrize("n", [3, 4])
def test_omega_anchors(n):
    assert bott_h(n, 1, 0, 2) == (n * n + n) // 2
    assert all(bott_h(n, 1, 0, i) == 0 for i in range(-3, 2))


def test_tangent_twist_via_omega_dual():
    # T = Omega^{n-1} tensor O(n+1)
    for n in (2, 3, 4):
        for i in range(-3, 4):
            assert h0_tangent_twist(n, i) == bott_h(n, n - 1, 0, n + 1 + i)


def test_examples():
    assert h0_tangent_twist(2, 0) == 8
    assert bott_h(2, 1, 1, 0) == 1
    with pytest.raises(ValueError):
        bott_h(2, 3, 0, 0)
