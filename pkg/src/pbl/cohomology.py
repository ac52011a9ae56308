"""Closed-form cohomology of line bundles, twisted forms and twisted tangent bundles on P^n."""

from math import comb


def h0_line(n: int, k: int) -> int:
    """h^0(P^n, O(k)) = C(n+k, n) for k >= 0, else 0.

    At n = 0 the same closed form is kept, matching Bott's formula there.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return comb(n + k, n) if k >= 0 else 0


def bott_h(n: int, p: int, q: int, k: int) -> int:
    """h^q(P^n, Omega^p(k)) by Bott's formula.

    >>> bott_h(3, 1, 0, 2)
    6
    >>> bott_h(2, 1, 1, 0)
    1
    """
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValueError("need 0 <= p, q <= n")
    if q == 0:
        if k == 0 and p == 0:
            return 1
        if k > p:
            return comb(k + n - p, k) * comb(k - 1, p)
        return 0
    if q == n:
        if k == 0 and p == n:
            return 1
        if k < p - n:
            return comb(-k + p, -k) * comb(-k - 1, n - p)
        return 0
    return 1 if (k == 0 and p == q) else 0


def h0_tangent_twist(n: int, i: int) -> int:
    """h^0(P^n, T(i)) from the Euler sequence."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if i < -1:
        return 0
    return (n + 1) * h0_line(n, i + 1) - h0_line(n, i)
