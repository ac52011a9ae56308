"""Dimensions of H^0(P(E), a xi - b H) = H^0(P^n, Sym^a(E)(-b)).

Ring model: variables alpha_0..alpha_n and one symbol y_j per summand of W.
A monomial alpha^nu y^m has *level* |nu| - sum_j m_j d_j; level c, y-degree a
spans H^0(Sym^a W (c)). Relation k becomes R_k = sum_j f_j(alpha) y_j, of
level -tau_k, and the graded piece of the quotient ring is

    S(a, c) = M(a, c) / I(a, c).

For b <= 0 the answer is dim S(a, -b). For b > 0 there are no monomials of
negative level, so a section s is recorded through G = s * alpha_0^b in S(a, 0):
G comes from a section exactly when, for every i, alpha_i^b G lies in
alpha_0^b S(a, 0) inside S(a, b). Hence

    h^0 = dim{G in M(a,0) : alpha_i^b G in alpha_0^b M(a,0) + I(a,b) for all i} - dim I(a,0).

All systems are split by a torus grading under which every relation is
homogeneous, which keeps each exact rank computation small. The result equals
h^0 when the quotient ring agrees with sections in these bidegrees; that
assumption is reported with every result.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import RatMatrix, kernel_basis, sparse_rank
from .bundles import BundlePresentation, alpha_monomials
from .cohomology import h0_line

EXACTNESS_FLAG = "exactness assumed: quotient-ring dimension reported as h0"


@dataclass(frozen=True)
class SectionSpace:
    a: int
    b: int
    dimension: int
    basis: tuple[str, ...]
    exactness_assumed: bool

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "dimension": self.dimension,
            "basis": list(self.basis),
            "exactness_assumed": self.exactness_assumed,
        }


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    return alpha_monomials(parts - 1, total) if parts > 0 else ([()] if total == 0 else [])


def split_section_dim(n: int, twists, a: int, b: int) -> int:
    """sum over |m| = a of h0(O(sum m_j l_j - b)) for a split bundle."""
    return sum(h0_line(n, sum(k * l for k, l in zip(m, twists)) - b) for m in _compositions(a, len(twists)))


class _Ring:
    """Monomials of the section ring and their torus weights."""

    def __init__(self, bp: BundlePresentation):
        self.bp = bp
        self.n = bp.n
        self.k = len(bp.twists)
        self.nv = self.n + 1 + self.k
        # (y-degree, level, terms) per generator of the relation ideal
        self.relations = []
        for rel in bp.relations:
            terms: dict[tuple[int, ...], Fraction] = {}
            for j, f in enumerate(rel.column):
                for e, c in f.terms.items():
                    key = tuple(e) + tuple(int(i == j) for i in range(self.k))
                    terms[key] = terms.get(key, Fraction(0)) + c
            self.relations.append((1, -rel.twist, {e: c for e, c in terms.items() if c}))
        for f in bp.extra_relations:
            levels = {self._level(e) for e in f.terms}
            ydegs = {sum(e[self.n + 1:]) for e in f.terms}
            if len(levels) != 1 or len(ydegs) != 1:
                raise ValueError("extra relation is not homogeneous")
            self.relations.append((ydegs.pop(), levels.pop(), dict(f.terms)))
        self.weights = self._grading()

    def _grading(self) -> list[tuple[Fraction, ...]]:
        """Per-variable weight vectors spanning all gradings that make relations homogeneous."""
        diffs = []
        for _, _, terms in self.relations:
            exps = list(terms)
            for e in exps[1:]:
                diffs.append([x - y for x, y in zip(e, exps[0])])
        if not diffs:
            K = [tuple(Fraction(int(i == j)) for i in range(self.nv)) for j in range(self.nv)]
        else:
            K = kernel_basis(RatMatrix(diffs, ncols=self.nv))
        return [tuple(vec[v] for vec in K) for v in range(self.nv)]

    def weight(self, e: tuple[int, ...]) -> tuple[Fraction, ...]:
        if not self.weights or not self.weights[0]:
            return ()
        dims = len(self.weights[0])
        return tuple(sum((e[v] * self.weights[v][c] for v in range(self.nv) if e[v]), Fraction(0)) for c in range(dims))

    def _level(self, e: tuple[int, ...]) -> int:
        return sum(e[: self.n + 1]) - self.level_offset(e[self.n + 1:])

    def level_offset(self, m: tuple[int, ...]) -> int:
        return sum(k * d for k, d in zip(m, self.bp.twists))

    def monomials(self, a: int, c: int) -> list[tuple[int, ...]]:
        out = []
        for m in _compositions(a, self.k):
            for nu in alpha_monomials(self.n, self.level_offset(m) + c):
                out.append(nu + m)
        return out

    def generators(self, a: int, c: int) -> list[dict[tuple[int, ...], Fraction]]:
        """Spanning set of I(a, c): monomial multiples of relations."""
        out = []
        for ydeg, lvl, terms in self.relations:
            if a < ydeg:
                continue
            for m in _compositions(a - ydeg, self.k):
                for nu in alpha_monomials(self.n, self.level_offset(m) + c - lvl):
                    mult = nu + m
                    out.append({tuple(x + y for x, y in zip(e, mult)): v for e, v in terms.items()})
        return out


def _group(items, key):
    out = defaultdict(list)
    for it in items:
        out[key(it)].append(it)
    return out


def _shift(e: tuple[int, ...], var: int, k: int) -> tuple[int, ...]:
    lst = list(e)
    lst[var] += k
    return tuple(lst)


class SectionCalculator:
    """Cached section-space dimensions for one presentation."""

    def __init__(self, bp: BundlePresentation):
        self.bp = bp
        self.ring = None if bp.split else _Ring(bp)

    @lru_cache(maxsize=None)
    def dimension(self, a: int, b: int) -> int:
        if a < 0:
            raise ValueError("a must be >= 0")
        bp = self.bp
        if bp.split:
            return split_section_dim(bp.n, bp.twists, a, b)
        if b <= 0:
            return self._quotient_dim(a, -b)
        return self._negative_twist_dim(a, b)

    def _rel_rank_by_weight(self, a: int, c: int):
        R = self.ring
        gens = R.generators(a, c)
        by_w = _group(gens, lambda g: R.weight(next(iter(g))))
        return by_w

    def _quotient_dim(self, a: int, c: int) -> int:
        R = self.ring
        monos = R.monomials(a, c)
        gens = self._rel_rank_by_weight(a, c)
        total = len(monos)
        for w, rows in gens.items():
            total -= sparse_rank(rows)
        return total

    def _negative_twist_dim(self, a: int, b: int) -> int:
        R = self.ring
        n = R.n
        base = R.monomials(a, 0)
        base_by_w = _group(base, R.weight)
        top_gens = _group(R.generators(a, b), lambda g: R.weight(next(iter(g))))
        zero_gens = _group(R.generators(a, 0), lambda g: R.weight(next(iter(g))))
        a0 = R.weight(_shift((0,) * R.nv, 0, b))
        total = 0
        for w, monos in base_by_w.items():
            blocks = []
            u_rank = 0
            rows: list[dict[tuple[int, tuple[int, ...]], int]] = []
            for i in range(1, n + 1):
                ai = R.weight(_shift((0,) * R.nv, i, b))
                target = tuple(x + y for x, y in zip(w, ai))
                src = tuple(x - y for x, y in zip(target, a0))
                u_rows = [{(i, _shift(m, 0, b)): 1} for m in base_by_w.get(src, [])]
                u_rows += [{(i, e): v for e, v in g.items()} for g in top_gens.get(target, [])]
                u_rank += sparse_rank(_index_rows(u_rows))
                blocks.append((i, u_rows))
            for m in monos:
                rows.append({(i, _shift(m, i, b)): 1 for i in range(1, n + 1)})
            for _, u_rows in blocks:
                rows.extend(u_rows)
            composite = sparse_rank(_index_rows(rows)) - u_rank
            d_w = len(monos) - composite
            i_w = sparse_rank(_index_rows([{(0, e): v for e, v in g.items()} for g in zero_gens.get(w, [])]))
            total += d_w - i_w
        return total


def torsion_dim(bp: BundlePresentation, a: int, c: int) -> int:
    """dim of {G in S(a, c) : alpha_i G = 0 in S(a, c+1) for all i}.

    Nonzero torsion means the relation ideal is not saturated in this bidegree,
    so quotient-ring dimensions could overcount sections.
    """
    if bp.split:
        return 0
    R = calculator(bp).ring
    n = R.n
    monos = _group(R.monomials(a, c), R.weight)
    low = _group(R.generators(a, c), lambda g: R.weight(next(iter(g))))
    high = _group(R.generators(a, c + 1), lambda g: R.weight(next(iter(g))))
    total = 0
    for w, ms in monos.items():
        rows = [{(i, _shift(m, i, 1)): 1 for i in range(n + 1)} for m in ms]
        u_rank = 0
        for i in range(n + 1):
            target = tuple(x + y for x, y in zip(w, R.weight(_shift((0,) * R.nv, i, 1))))
            u_rows = [{(i, e): v for e, v in g.items()} for g in high.get(target, [])]
            u_rank += sparse_rank(u_rows)
            rows.extend(u_rows)
        kernel = len(ms) - (sparse_rank(rows) - u_rank)
        total += kernel - sparse_rank(low.get(w, []))
    return total


def _index_rows(rows):
    """Replace arbitrary hashable column labels by integers, ordered deterministically."""
    labels = sorted({c for r in rows for c in r})
    idx = {c: k for k, c in enumerate(labels)}
    return [{idx[c]: v for c, v in r.items()} for r in rows]


_CALCULATORS: dict[BundlePresentation, SectionCalculator] = {}


def calculator(bp: BundlePresentation) -> SectionCalculator:
    calc = _CALCULATORS.get(bp)
    if calc is None:
        calc = _CALCULATORS[bp] = SectionCalculator(bp)
    return calc


def section_space(bp: BundlePresentation, a: int, b: int, with_basis: bool = False) -> SectionSpace:
    dim = calculator(bp).dimension(a, b)
    basis: tuple[str, ...] = ()
    if with_basis:
        basis = tuple(_basis_strings(bp, a, b, dim))
    return SectionSpace(a, b, dim, basis, not bp.split)


def _mono_str(bp: BundlePresentation, e: tuple[int, ...]) -> str:
    n = bp.n
    names = [f"a{i}" for i in range(n + 1)] + [f"y{j}" for j in range(len(bp.twists))]
    parts = [f"{v}^{k}" if k > 1 else v for v, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def _basis_strings(bp: BundlePresentation, a: int, b: int, dim: int) -> list[str]:
    """Monomial representatives for b <= 0 (standard monomials); for b > 0 a note."""
    if bp.split:
        out = []
        k = len(bp.twists)
        for m in _compositions(a, k):
            lvl = sum(x * d for x, d in zip(m, bp.twists)) - b
            for nu in alpha_monomials(bp.n, lvl):
                out.append(_mono_str(bp, nu + m))
        return out
    if b > 0:
        return [f"s_{i} = G_{i} / a0^{b}" for i in range(dim)]
    R = calculator(bp).ring
    c = -b
    monos = R.monomials(a, c)
    # columns ordered so that the leading (smallest) index is the largest monomial
    order = sorted(monos, key=lambda e: tuple(-x for x in e[R.n + 1:]) + tuple(-x for x in e[: R.n + 1]))
    pos = {e: k for k, e in enumerate(order)}
    pivots: set[int] = set()
    for rows in calculator(bp)._rel_rank_by_weight(a, c).values():
        pivots |= _pivot_columns([{pos[e]: v for e, v in g.items()} for g in rows])
    return [_mono_str(bp, e) for e in order if pos[e] not in pivots]


def _pivot_columns(rows) -> set[int]:
    from math import gcd, lcm

    piv: dict[int, dict[int, int]] = {}
    for raw in rows:
        den = 1
        for v in raw.values():
            den = lcm(den, Fraction(v).denominator)
        row = {c: int(Fraction(v) * den) for c, v in raw.items() if v}
        while row:
            lead = min(row)
            p = piv.get(lead)
            if p is None:
                piv[lead] = row
                break
            x, y = p[lead], row[lead]
            new = {c: x * v for c, v in row.items()}
            for c, v in p.items():
                nv = new.get(c, 0) - y * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return set(piv)


def cone_slope(bp: BundlePresentation, a_max: int = 4) -> Fraction:
    """max over 1 <= a <= a_max of max{b/a : h0(a xi - b H) > 0}."""
    if a_max < 2:
        raise ValueError("a_max must be >= 2")
    calc = calculator(bp)
    best = Fraction(0)
    cap_factor = max(bp.c1, 1) + 1
    for a in range(1, a_max + 1):
        b = 0
        # positivity is monotone in b: multiplying by a linear form in alpha is injective
        while b + 1 <= cap_factor * a and calc.dimension(a, b + 1) > 0:
            b += 1
        best = max(best, Fraction(b, a))
    return best


def symmetric_power_additivity(bp: BundlePresentation, a: int, b: int) -> tuple[int, int]:
    """(h0 of Sym^a(O + E)(-b), sum_{i<=a} h0 of Sym^i(E)(-b))."""
    lhs = calculator(bp.with_trivial_summand()).dimension(a, b)
    rhs = sum(calculator(bp).dimension(i, b) for i in range(a + 1))
    return lhs, rhs
