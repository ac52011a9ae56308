"""Points, hypersurfaces, linear subspaces and determinantal loci in projective space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from .algebra import MultiPoly, RatMatrix, as_rational, mat_rank
from .errors import BadInput, BadParams, BadT, NotOnHypersurface


class ProjPoint:
    """A point of P^N given by a nonzero rational vector, compared up to scale."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        c = tuple(as_rational(x) for x in coords)
        if not any(c):
            raise BadInput("the zero vector is not a projective point")
        self.coords = c

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def normalized(self) -> tuple[Fraction, ...]:
        lead = next(x for x in self.coords if x)
        return tuple(x / lead for x in self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash(self.normalized())

    def __repr__(self) -> str:
        from .algebra import rational_str

        return "[" + ":".join(rational_str(x) for x in self.coords) + "]"


def _xblocks(N: int) -> tuple[tuple[str, int], ...]:
    return (("x", N + 1),)


@dataclass(frozen=True)
class Hypersurface:
    ambient: int
    poly: MultiPoly

    def __post_init__(self):
        if self.poly.is_zero():
            raise BadInput("zero polynomial does not define a hypersurface")
        if self.poly.blocks != _xblocks(self.ambient):
            raise BadInput("polynomial ring does not match the ambient space")
        if not self.poly.is_multihomogeneous():
            raise BadInput("defining polynomial must be homogeneous")

    def value(self, p: ProjPoint) -> Fraction:
        return self.poly.evaluate({"x": p.coords})

    def contains(self, p: ProjPoint) -> bool:
        self._check(p)
        return self.value(p) == 0

    def gradient(self, p: ProjPoint) -> tuple[Fraction, ...]:
        self._check(p)
        return tuple(self.poly.partial(i).evaluate({"x": p.coords}) for i in range(self.ambient + 1))

    def _check(self, p: ProjPoint) -> None:
        if p.dim != self.ambient:
            raise BadInput(f"point lives in P^{p.dim}, hypersurface in P^{self.ambient}")


def vnd_hypersurface(n: int, d: int) -> Hypersurface:
    """x0^(d-1) x1 + x2^(d-1) x3 + ... + x_{2n}^(d-1) x_{2n+1} in P^(2n+1)."""
    if n < 2 or d < 2:
        raise BadParams(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    N = 2 * n + 1
    terms = {}
    for i in range(n + 1):
        e = [0] * (N + 1)
        e[2 * i] = d - 1
        e[2 * i + 1] = 1
        terms[tuple(e)] = 1
    return Hypersurface(N, MultiPoly(_xblocks(N), terms))


def cone_over(h: Hypersurface, extra: int) -> Hypersurface:
    """Same equation in P^(N+extra); the new coordinates do not appear."""
    if extra < 0:
        raise BadParams("extra must be nonnegative")
    if extra == 0:
        return h
    N = h.ambient + extra
    return Hypersurface(N, h.poly.with_blocks(_xblocks(N)))


def smooth_at(h: Hypersurface, p: ProjPoint) -> bool:
    if not h.contains(p):
        raise NotOnHypersurface(f"{p} is not on the hypersurface")
    return any(h.gradient(p))


@dataclass(frozen=True)
class LinearSubspace:
    ambient: int
    equations: RatMatrix

    def __post_init__(self):
        if self.equations.ncols != self.ambient + 1:
            raise BadInput("equation width must be ambient dimension + 1")
        if mat_rank(self.equations) != self.equations.nrows:
            raise BadInput("equations must have full row rank")

    @property
    def dim(self) -> int:
        return self.ambient - self.equations.nrows

    def contains(self, p: ProjPoint) -> bool:
        return not any(self.equations.apply(p.coords))


def l0_subspace(n: int, extra: int = 0) -> LinearSubspace:
    """x0 = x2 = ... = x_{2n} = 0 inside P^(2n+1+extra)."""
    N = 2 * n + 1 + extra
    rows = [[int(j == 2 * i) for j in range(N + 1)] for i in range(n + 1)]
    return LinearSubspace(N, RatMatrix(rows, ncols=N + 1))


def hyperplane_contains(form: Sequence, sub: LinearSubspace) -> bool:
    """True iff the linear form vanishes on all of ``sub`` (row-space membership)."""
    f = [as_rational(x) for x in form]
    if len(f) != sub.ambient + 1:
        raise BadInput("linear form has the wrong length")
    if not any(f):
        return True
    stacked = RatMatrix(list(sub.equations.rows) + [f], ncols=sub.ambient + 1)
    return mat_rank(stacked) == mat_rank(sub.equations)


# expected dimensions of the three loci, keyed by t
LOCUS_DIMENSION = {2: 1, 3: 2, 4: 3}
LOCUS_NAME = {
    2: "twisted cubic in P^3",
    3: "Z(X0X3 - X1X2, X1X4 - X2X3, X0X4 - X2^2) in P^4",
    4: "Segre embedding of P^1 x P^2 in P^5",
}


@dataclass(frozen=True)
class DeterminantalLocus:
    t: int
    quadrics: tuple[MultiPoly, MultiPoly, MultiPoly]

    @property
    def ambient(self) -> int:
        return self.t + 1

    @property
    def expected_dim(self) -> int:
        return LOCUS_DIMENSION[self.t]

    @property
    def name(self) -> str:
        return LOCUS_NAME[self.t]

    def contains(self, p: ProjPoint) -> bool:
        if p.dim != self.ambient:
            raise BadInput(f"point must lie in P^{self.ambient}")
        return all(q.evaluate({"x": p.coords}) == 0 for q in self.quadrics)

    def jacobian_rank(self, p: ProjPoint) -> int:
        rows = [[q.partial(i).evaluate({"x": p.coords}) for i in range(self.ambient + 1)] for q in self.quadrics]
        return mat_rank(RatMatrix(rows))

    def smooth_at(self, p: ProjPoint) -> bool:
        if not self.contains(p):
            raise NotOnHypersurface(f"{p} is not on the locus")
        return self.jacobian_rank(p) == self.ambient - self.expected_dim


def determinantal_locus(t: int) -> DeterminantalLocus:
    """2x2 minors of [[X0 X1 X2], [X_{t-1} X_t X_{t+1}]]."""
    if t not in (2, 3, 4):
        raise BadT(f"t must be 2, 3 or 4, got {t}")
    bl = _xblocks(t + 1)

    def X(i: int) -> MultiPoly:
        return MultiPoly.variable(bl, "x", i)

    Q0 = X(1) * X(t + 1) - X(2) * X(t)
    Q1 = X(2) * X(t - 1) - X(0) * X(t + 1)
    Q2 = X(0) * X(t) - X(1) * X(t - 1)
    return DeterminantalLocus(t, (Q0, Q1, Q2))


def locus_point(t: int, params: Sequence) -> ProjPoint:
    """A point of the t-locus from free parameters (two per factor)."""
    a0, a1, b0, b1, b2 = (as_rational(x) for x in (list(params) + [0] * 5)[:5])
    if t == 2:
        # [s^3 : s^2 u : s u^2 : u^3]
        s, u = a0, a1
        return ProjPoint([s ** 3, s * s * u, s * u * u, u ** 3])
    if t == 3:
        # rows (b0, b1, m b0) and m * row
        m = a1 / a0 if a0 else Fraction(0)
        return ProjPoint([b0, b1, m * b0, m * b1, m * m * b0])
    if t == 4:
        return ProjPoint([a0 * b0, a0 * b1, a0 * b2, a1 * b0, a1 * b1, a1 * b2])
    raise BadT(f"t must be 2, 3 or 4, got {t}")


def projective_grid(dim: int, radius: int = 3) -> Iterator[ProjPoint]:
    """Integer points of P^dim with coordinates in [-radius, radius], one per scale class.

    Representatives are primitive with first nonzero coordinate positive; the
    order is lexicographic and therefore reproducible.
    """
    if radius < 1:
        raise BadInput("radius must be at least 1")
    rng = range(-radius, radius + 1)
    for v in product(rng, repeat=dim + 1):
        lead = next((x for x in v if x), 0)
        if lead <= 0:
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            continue
        yield ProjPoint(v)


def smooth_scan(n: int, d: int, radius: int = 2) -> dict:
    """Scan grid points of V(n, d); compare singular points with L0 ∩ V."""
    V = vnd_hypersurface(n, d)
    L0 = l0_subspace(n)
    on_v = singular = on_l0 = 0
    mismatches: list[str] = []
    for p in projective_grid(V.ambient, radius):
        if not V.contains(p):
            continue
        on_v += 1
        sing = not smooth_at(V, p)
        in_l0 = L0.contains(p)
        singular += sing
        on_l0 += in_l0
        expected = in_l0 if d >= 3 else False
        if sing != expected:
            mismatches.append(repr(p))
    return {
        "n": n,
        "d": d,
        "radius": radius,
        "points_on_V": on_v,
        "singular_points": singular,
        "points_on_L0": on_l0,
        "mismatches": mismatches,
    }
