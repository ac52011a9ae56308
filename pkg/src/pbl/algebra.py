"""Exact rational linear algebra, sparse multihomogeneous polynomials and binary forms.

Everything here works over Q with :class:`fractions.Fraction`. Ranks and kernels
use fraction-free (Bareiss) elimination on integer rows; the pivot in each column
is the first nonzero entry scanning rows top to bottom.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import AllFormsZero, BadInput

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise BadInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise BadInput(f"not a rational: {value!r}") from exc
    raise BadInput(f"not a rational: {value!r}")


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- matrices


class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise BadInput("ragged matrix")
            if ncols is not None and ncols != width:
                raise BadInput("column count mismatch")
        else:
            width = ncols or 0
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "RatMatrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RatMatrix":
        if not cols:
            return cls([[] for _ in range(nrows or 0)], ncols=0)
        return cls(list(zip(*cols)), ncols=len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_columns(self.rows, nrows=self.ncols) if self.rows else RatMatrix.zeros(self.ncols, 0)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise BadInput(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return RatMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self.rows],
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        v = [as_rational(x) for x in vec]
        if len(v) != self.ncols:
            raise BadInput("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise BadInput("shape mismatch")
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.nrows != other.nrows:
            raise BadInput("row count mismatch")
        return RatMatrix([a + b for a, b in zip(self.rows, other.rows)], ncols=self.ncols + other.ncols)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rational_str(x) for x in r) for r in self.rows)
        return f"RatMatrix({self.nrows}x{self.ncols}: [{body}])"

    def to_json(self) -> list[list[str]]:
        return [[rational_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise BadInput("matrix must be an array of arrays")
        return cls(data)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def bareiss_echelon(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Rows are first scaled to integers (harmless for rank and null space). Returns
    the nonzero echelon rows and their pivot columns.
    """
    m = [_integer_row(r) for r in rows]
    pivots: list[int] = []
    prev = 1
    top = 0
    nr = len(m)
    for col in range(ncols):
        if top >= nr:
            break
        piv = next((i for i in range(top, nr) if m[i][col] != 0), None)
        if piv is None:
            continue
        if piv != top:
            m[top], m[piv] = m[piv], m[top]
        p = m[top][col]
        prow = m[top]
        for i in range(top + 1, nr):
            row = m[i]
            c = row[col]
            if c == 0:
                row[:] = [(p * x) // prev for x in row]
                continue
            row[:] = [(p * x - c * y) // prev for x, y in zip(row, prow)]
        prev = p
        pivots.append(col)
        top += 1
    return m[:top], pivots


def mat_rank(M: RatMatrix) -> int:
    """Rank over Q via fraction-free elimination."""
    return len(bareiss_echelon(M.rows, M.ncols)[1])


def det(M: RatMatrix) -> Fraction:
    if M.nrows != M.ncols:
        raise BadInput("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in M.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def kernel_basis(M: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column (in column order)."""
    ech, pivots = bareiss_echelon(M.rows, M.ncols)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * M.ncols
        x[f] = Fraction(1)
        for row, pc in reversed(list(zip(ech, pivots))):
            s = sum((row[j] * x[j] for j in range(pc + 1, M.ncols)), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(tuple(x))
    return basis


def solve(M: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of M x = b, or None when inconsistent."""
    aug = M.hstack(RatMatrix([[as_rational(v)] for v in b], ncols=1))
    ech, pivots = bareiss_echelon(aug.rows, aug.ncols)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [Fraction(0)] * M.ncols
    for row, pc in reversed(list(zip(ech, pivots))):
        s = sum((row[j] * x[j] for j in range(pc + 1, M.ncols)), Fraction(0))
        x[pc] = (row[M.ncols] - s) / row[pc]
    return tuple(x)


def inverse(M: RatMatrix) -> RatMatrix:
    n = M.nrows
    if n != M.ncols:
        raise BadInput("inverse of a non-square matrix")
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve(M, e)
        if x is None:
            raise BadInput("matrix is singular")
        cols.append(x)
    if mat_rank(M) != n:
        raise BadInput("matrix is singular")
    return RatMatrix.from_columns(cols)


def column_space_basis(M: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Pivot columns of M (a basis of its image, chosen deterministically)."""
    _, pivots = bareiss_echelon(M.rows, M.ncols)
    return [M.column(j) for j in pivots]


def subspace_intersection(U: Sequence[Sequence], V: Sequence[Sequence], dim: int) -> list[tuple[Fraction, ...]]:
    """Basis of span(U) ∩ span(V) for lists of vectors in Q^dim."""
    if not U or not V:
        return []
    cols = [tuple(as_rational(x) for x in u) for u in U] + [tuple(-as_rational(x) for x in v) for v in V]
    K = kernel_basis(RatMatrix.from_columns(cols, nrows=dim))
    out: list[tuple[Fraction, ...]] = []
    for k in K:
        vec = tuple(sum((k[i] * as_rational(U[i][r]) for i in range(len(U))), Fraction(0)) for r in range(dim))
        out.append(vec)
    if not out:
        return []
    return column_space_basis(RatMatrix.from_columns(out, nrows=dim))


def sparse_rank(rows: Iterable[Mapping[int, Fraction | int]]) -> int:
    """Exact rank of a sparse row set ({column: value} per row).

    Incremental fraction-free elimination on integer rows; each stored pivot row
    has its leading column as key. Used for the large, very sparse section-space
    systems.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        den = 1
        for v in raw.values():
            den = lcm(den, Fraction(v).denominator)
        row = {c: int(Fraction(v) * den) for c, v in raw.items() if v != 0}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[lead] = {c: v // g for c, v in row.items()}
                break
            a, b = prow[lead], row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return len(pivots)


# ---------------------------------------------------------------- polynomials

Blocks = tuple[tuple[str, int], ...]


class MultiPoly:
    """Sparse polynomial over Q in named blocks of variables.

    Exponent vectors are flat tuples; block ``k`` occupies the slice given by
    :meth:`block_slice`. Zero coefficients are never stored.
    """

    __slots__ = ("blocks", "terms")

    def __init__(self, blocks: Blocks, terms: Mapping[tuple[int, ...], object] | None = None):
        self.blocks: Blocks = tuple((str(n), int(a)) for n, a in blocks)
        width = sum(a for _, a in self.blocks)
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != width:
                raise BadInput("exponent length mismatch")
            q = as_rational(c)
            if q:
                clean[e] = clean.get(e, Fraction(0)) + q
                if not clean[e]:
                    del clean[e]
        self.terms: dict[tuple[int, ...], Fraction] = clean

    @property
    def nvars(self) -> int:
        return sum(a for _, a in self.blocks)

    def block_slice(self, name: str) -> slice:
        start = 0
        for n, a in self.blocks:
            if n == name:
                return slice(start, start + a)
            start += a
        raise KeyError(name)

    def index(self, name: str, i: int) -> int:
        sl = self.block_slice(name)
        if not 0 <= i < sl.stop - sl.start:
            raise IndexError(i)
        return sl.start + i

    @classmethod
    def constant(cls, blocks: Blocks, c) -> "MultiPoly":
        width = sum(a for _, a in blocks)
        return cls(blocks, {(0,) * width: c})

    @classmethod
    def variable(cls, blocks: Blocks, name: str, i: int) -> "MultiPoly":
        p = cls(blocks)
        e = [0] * p.nvars
        e[p.index(name, i)] = 1
        return cls(blocks, {tuple(e): 1})

    def _check(self, other: "MultiPoly") -> None:
        if self.blocks != other.blocks:
            raise BadInput("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, Fraction(0)) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly(self.blocks, t)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.blocks, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = as_rational(other)
            return MultiPoly(self.blocks, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        t: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.blocks, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.blocks, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.blocks == other.blocks and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.blocks, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def block_degrees(self, e: Sequence[int]) -> tuple[int, ...]:
        out = []
        start = 0
        for _, a in self.blocks:
            out.append(sum(e[start:start + a]))
            start += a
        return tuple(out)

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {self.block_degrees(e) for e in self.terms}

    def is_multihomogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def evaluate(self, values: Mapping[str, Sequence]) -> Fraction:
        """Evaluate with every block assigned."""
        flat: list[Fraction] = []
        for name, a in self.blocks:
            vals = values[name]
            if len(vals) != a:
                raise BadInput(f"block {name} expects {a} values")
            flat.extend(as_rational(v) for v in vals)
        if all(v.denominator == 1 for v in flat) and all(c.denominator == 1 for c in self.terms.values()):
            # integer fast path
            ints = [v.numerator for v in flat]
            acc = 0
            for e, c in self.terms.items():
                term = c.numerator
                for x, k in zip(ints, e):
                    if k:
                        term *= x ** k
                acc += term
            return Fraction(acc)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(flat, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, values: Mapping[str, Sequence]) -> "MultiPoly":
        """Assign some blocks; their exponents become zero in the result."""
        slices = {name: self.block_slice(name) for name in values}
        assign: dict[int, Fraction] = {}
        for name, vals in values.items():
            sl = slices[name]
            if len(vals) != sl.stop - sl.start:
                raise BadInput(f"block {name} expects {sl.stop - sl.start} values")
            for i, v in enumerate(vals):
                assign[sl.start + i] = as_rational(v)
        t: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            coef = c
            ne = list(e)
            for idx, x in assign.items():
                if e[idx]:
                    coef *= x ** e[idx]
                    ne[idx] = 0
            if coef:
                key = tuple(ne)
                t[key] = t.get(key, Fraction(0)) + coef
        return MultiPoly(self.blocks, t)

    def partial(self, var: int) -> "MultiPoly":
        t = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                t[tuple(ne)] = c * e[var]
        return MultiPoly(self.blocks, t)

    def with_blocks(self, blocks: Blocks) -> "MultiPoly":
        """Re-embed into a ring whose blocks extend this one (new variables appended per block)."""
        names = [n for n, _ in self.blocks]
        if [n for n, _ in blocks[: len(names)]] != names:
            raise BadInput("block names must extend the existing ones")
        old = dict(self.blocks)
        t = {}
        for e, c in self.terms.items():
            ne: list[int] = []
            start = 0
            for name, a in blocks:
                k = old.get(name, 0)
                if a < k:
                    raise BadInput("cannot shrink a block")
                ne.extend(e[start:start + k])
                ne.extend([0] * (a - k))
                start += k
            t[tuple(ne)] = c
        return MultiPoly(blocks, t)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded-lex order per block, blocks compared in order."""
        def key(item):
            e = item[0]
            k = []
            start = 0
            for _, a in self.blocks:
                part = e[start:start + a]
                k.append(-sum(part))
                k.extend(-x for x in part)
                start += a
            return k
        return sorted(self.terms.items(), key=key)

    def to_json(self) -> dict:
        terms = []
        for e, c in self.sorted_terms():
            rec = {}
            start = 0
            for name, a in self.blocks:
                rec[name] = list(e[start:start + a])
                start += a
            terms.append({"exponents": rec, "coefficient": rational_str(c)})
        return {"blocks": [[n, a] for n, a in self.blocks], "terms": terms}

    @classmethod
    def from_json(cls, data) -> "MultiPoly":
        try:
            blocks = tuple((str(n), int(a)) for n, a in data["blocks"])
            terms = {}
            for rec in data["terms"]:
                e: list[int] = []
                for name, a in blocks:
                    part = rec["exponents"][name]
                    if len(part) != a:
                        raise BadInput("exponent block length mismatch")
                    e.extend(int(x) for x in part)
                key = tuple(e)
                terms[key] = terms.get(key, Fraction(0)) + as_rational(rec["coefficient"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"malformed polynomial JSON: {exc}") from exc
        return cls(blocks, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = []
        for n, a in self.blocks:
            names.extend(f"{n}{i}" for i in range(a))
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(names, e) if k)
            if not mono:
                parts.append(rational_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _reduce_monic(g: MultiPoly, var: int, f: MultiPoly) -> MultiPoly:
    """Remainder of g modulo f, where f is monic of degree m in ``var``."""
    m = f.degree_in(var)
    lead = [e for e in f.terms if e[var] == m]
    if len(lead) != 1 or f.terms[lead[0]] != 1 or any(k for i, k in enumerate(lead[0]) if i != var and k):
        raise BadInput("constraint is not monic in its variable")
    tail = f - MultiPoly(f.blocks, {lead[0]: 1})
    g = MultiPoly(g.blocks, dict(g.terms))
    while True:
        high = {e: c for e, c in g.terms.items() if e[var] >= m}
        if not high:
            return g
        rest = MultiPoly(g.blocks, {e: c for e, c in g.terms.items() if e[var] < m})
        replaced = MultiPoly(g.blocks)
        for e, c in high.items():
            ne = list(e)
            ne[var] -= m
            replaced = replaced - MultiPoly(g.blocks, {tuple(ne): c}) * tail
        g = rest + replaced


def _coefficients_in(g: MultiPoly, var: int, m: int) -> list[MultiPoly]:
    out = [MultiPoly(g.blocks) for _ in range(m)]
    for e, c in g.terms.items():
        ne = list(e)
        k = ne[var]
        ne[var] = 0
        out[k] = out[k] + MultiPoly(g.blocks, {tuple(ne): c})
    return out


def _poly_det(M: list[list[MultiPoly]], blocks: Blocks) -> MultiPoly:
    n = len(M)
    total = MultiPoly(blocks)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = MultiPoly.constant(blocks, -1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def resultant_monic(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Res_var(f, g) for f monic in ``var``.

    Computed as the determinant of multiplication by g on Q[..][var]/(f), which
    equals the Sylvester determinant with f placed first when f is monic.
    """
    m = f.degree_in(var)
    if m <= 0:
        raise BadInput("constraint has no positive degree in its variable")
    y = MultiPoly(f.blocks, {tuple(int(i == var) for i in range(f.nvars)): 1})
    cols = []
    power = MultiPoly.constant(f.blocks, 1)
    for _ in range(m):
        cols.append(_coefficients_in(_reduce_monic(g * power, var, f), var, m))
        power = power * y
    M = [[cols[j][i] for j in range(m)] for i in range(m)]
    return _poly_det(M, f.blocks)


def iterated_resultant(poly: MultiPoly, constraints: Sequence[tuple[int, MultiPoly]]) -> MultiPoly:
    """Eliminate each variable against its monic constraint, in the order given.

    The result is the product of ``poly`` over all simultaneous root choices.
    """
    out = poly
    for var, f in constraints:
        out = resultant_monic(f, out, var)
    return out


# ---------------------------------------------------------------- binary forms


class BinaryForm:
    """Form of degree ``d`` in (u, v); ``coeffs[i]`` multiplies u^i v^(d-i)."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Sequence):
        if len(coeffs) != degree + 1:
            raise BadInput("binary form needs degree+1 coefficients")
        self.degree = degree
        self.coeffs = tuple(as_rational(c) for c in coeffs)

    @classmethod
    def linear(cls, cu, cv) -> "BinaryForm":
        return cls(1, [cv, cu])

    @classmethod
    def constant(cls, c) -> "BinaryForm":
        return cls(0, [c])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise BadInput("adding binary forms of different degree")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        d = self.degree + other.degree
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(d, out)

    def evaluate(self, u, v) -> Fraction:
        u, v = as_rational(u), as_rational(v)
        return sum((c * u ** i * v ** (self.degree - i) for i, c in enumerate(self.coeffs)), Fraction(0))

    def __repr__(self) -> str:
        return f"BinaryForm({self.degree}, {[rational_str(c) for c in self.coeffs]})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd of univariate polynomials given low-to-high coefficient lists."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + shift] -= q * c
            r = _trim(r)
        a, b = b, r
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def binary_forms_common_root(forms: Sequence[BinaryForm]) -> bool:
    """True iff the nonzero forms share a root in P^1 (over an algebraic closure)."""
    live = [f for f in forms if not f.is_zero()]
    if not live:
        raise AllFormsZero("every form is identically zero")
    # root [1:0] <=> coefficient of u^d vanishes
    if all(f.coeffs[f.degree] == 0 for f in live):
        return True
    g = list(live[0].coeffs)
    for f in live[1:]:
        g = poly_gcd(g, f.coeffs)
        if len(g) <= 1:
            return False
    return len(_trim(list(g))) > 1
