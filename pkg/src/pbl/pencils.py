"""Regular pencils of (s+2)x3 matrices and their normal form.

A pair (A, B) is regular when uA + vB has full column rank for every nonzero
(u, v). For such pairs, t = rank[A:B] - 2 lies in {2, 3, 4} and there are
invertible P, Q with

    P A Q = [e0 e1 e2],    P B Q = [e_{t-1} e_t e_{t+1}].

The construction below is the explicit case split on t; it never leaves Q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import (
    BinaryForm,
    RatMatrix,
    binary_forms_common_root,
    column_space_basis,
    inverse,
    kernel_basis,
    mat_rank,
    solve,
    subspace_intersection,
)
from .errors import AllFormsZero, BadInput, BadT, InternalRankContradiction, IrregularPencil, TooSmall


@dataclass(frozen=True)
class PencilPair:
    A: RatMatrix
    B: RatMatrix

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise BadInput(f"A is {self.A.shape} but B is {self.B.shape}")
        if self.A.ncols != 3 or self.A.nrows < 3:
            raise BadInput("pencil matrices must be (s+2)x3 with s >= 1")

    @property
    def s(self) -> int:
        return self.A.nrows - 2

    def conjugate(self, P0: RatMatrix, Q0: RatMatrix) -> "PencilPair":
        return PencilPair(P0 @ self.A @ Q0, P0 @ self.B @ Q0)

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, data) -> "PencilPair":
        if not isinstance(data, dict) or "A" not in data or "B" not in data:
            raise BadInput("pencil JSON needs keys 'A' and 'B'")
        return cls(RatMatrix.from_json(data["A"]), RatMatrix.from_json(data["B"]))


@dataclass(frozen=True)
class PencilNormalForm:
    t: int
    P: RatMatrix
    Q: RatMatrix
    v_basis: tuple[tuple[Fraction, ...], ...]
    w_basis: tuple[tuple[Fraction, ...], ...]
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        from .algebra import rational_str

        return {
            "t": self.t,
            "r": self.t,
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "v_basis": [[rational_str(x) for x in v] for v in self.v_basis],
            "w_basis": [[rational_str(x) for x in w] for w in self.w_basis],
            "flags": list(self.flags),
        }


# The same integer is called r in the normal-form construction and t in the fiber analysis.
NAMING_FLAG = "t-vs-r naming: the normal-form integer is reported as t; it equals r only when E has no trivial summand"


def _linear_entries(A: RatMatrix, B: RatMatrix) -> list[list[BinaryForm]]:
    return [[BinaryForm.linear(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)]


def _form_det(M: list[list[BinaryForm]]) -> BinaryForm:
    n = len(M)
    if n == 1:
        return M[0][0]
    total: BinaryForm | None = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _form_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def pencil_minors(A: RatMatrix, B: RatMatrix) -> list[BinaryForm]:
    """All maximal minors of uA + vB as binary forms of degree = column count."""
    k = A.ncols
    entries = _linear_entries(A, B)
    return [_form_det([entries[i] for i in rows]) for rows in combinations(range(A.nrows), k)]


def columns_regular(A: RatMatrix, B: RatMatrix) -> bool:
    """Full column rank of uA + vB for every nonzero (u, v); any column count."""
    if A.shape != B.shape:
        raise BadInput("shape mismatch")
    if A.nrows < A.ncols:
        return False
    try:
        return not binary_forms_common_root(pencil_minors(A, B))
    except AllFormsZero:
        return False


def pencil_is_regular(p: PencilPair) -> bool:
    return columns_regular(p.A, p.B)


def pencil_t(p: PencilPair) -> int:
    if not pencil_is_regular(p):
        raise IrregularPencil("uA + vB drops rank for some [u:v]")
    return mat_rank(p.A.hstack(p.B)) - 2


def canonical_pencil(t: int, s: int) -> PencilPair:
    if t not in (2, 3, 4):
        raise BadT(f"t must be 2, 3 or 4, got {t}")
    if s < t:
        raise TooSmall(f"need s >= t, got s={s}, t={t}")
    rows = s + 2
    A = RatMatrix.from_columns([_unit(rows, i) for i in range(3)])
    B = RatMatrix.from_columns([_unit(rows, t - 1 + i) for i in range(3)])
    return PencilPair(A, B)


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(j == i)) for j in range(n))


def _extend_basis(vectors: Sequence[Sequence[Fraction]], dim: int) -> list[tuple[Fraction, ...]]:
    """Append the lowest-index standard vectors that keep independence."""
    out = [tuple(v) for v in vectors]
    for j in range(dim):
        if len(out) == dim:
            break
        cand = out + [_unit(dim, j)]
        if mat_rank(RatMatrix.from_columns(cand, nrows=dim)) == len(cand):
            out = cand
    return out


def _preimage(M: RatMatrix, W: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Basis of {v : M v in span W} for injective M."""
    n = M.ncols
    cols = M.columns() + [tuple(-x for x in w) for w in W]
    K = kernel_basis(RatMatrix.from_columns(cols, nrows=M.nrows))
    vs = [k[:n] for k in K if any(k[:n])]
    if not vs:
        return []
    return column_space_basis(RatMatrix.from_columns(vs, nrows=n))


def _case_t4(A: RatMatrix, B: RatMatrix):
    v = [_unit(3, i) for i in range(3)]
    w = list(A.columns()) + list(B.columns())
    return v, w


def _case_t3(A: RatMatrix, B: RatMatrix):
    dim = A.nrows
    inter = subspace_intersection(A.columns(), B.columns(), dim)
    if len(inter) != 1:
        raise InternalRankContradiction(f"Im A ∩ Im B has dimension {len(inter)}, expected 1")
    w2 = inter[0]
    v2 = solve(A, w2)
    v0 = solve(B, w2)
    if v2 is None or v0 is None:
        raise InternalRankContradiction("intersection vector not in both images")
    if mat_rank(RatMatrix.from_columns([v0, v2], nrows=3)) != 2:
        raise IrregularPencil("v0 and v2 are dependent, so A - aB is singular")
    v1 = None
    for j in range(3):
        e = _unit(3, j)
        if mat_rank(RatMatrix.from_columns([v0, e, v2], nrows=3)) == 3:
            v1 = e
            break
    v = [v0, v1, v2]
    w = [A.apply(v0), A.apply(v1), w2, B.apply(v1), B.apply(v2)]
    return v, w


def _case_t2(A: RatMatrix, B: RatMatrix):
    dim = A.nrows
    W = subspace_intersection(A.columns(), B.columns(), dim)
    if len(W) != 2:
        raise InternalRankContradiction(f"Im A ∩ Im B has dimension {len(W)}, expected 2")
    SA = _preimage(A, W)
    SB = _preimage(B, W)
    line = subspace_intersection(SA, SB, 3)
    if len(line) != 1:
        # A^{-1}W = B^{-1}W would force a singular member of the pencil
        raise IrregularPencil("A^{-1}W and B^{-1}W coincide")
    v1 = line[0]
    w1 = A.apply(v1)
    w2 = B.apply(v1)
    v2 = solve(A, w2)
    v0 = solve(B, w1)
    if v2 is None or v0 is None:
        raise InternalRankContradiction("w1, w2 do not span Im A ∩ Im B")
    v = [v0, v1, v2]
    w = [A.apply(v0), w1, w2, B.apply(v2)]
    return v, w


def pencil_normal_form(p: PencilPair) -> PencilNormalForm:
    """Normal form (t, P, Q) with P A Q = [e0 e1 e2], P B Q = [e_{t-1} e_t e_{t+1}]."""
    t = pencil_t(p)
    if t not in (2, 3, 4):
        raise InternalRankContradiction(f"regular pencil with t = {t}")
    A, B = p.A, p.B
    v, w = {4: _case_t4, 3: _case_t3, 2: _case_t2}[t](A, B)
    dim = A.nrows
    full = _extend_basis(w, dim)
    Wm = RatMatrix.from_columns(full, nrows=dim)
    if mat_rank(Wm) != dim:
        raise InternalRankContradiction("w vectors are not independent")
    P = inverse(Wm)
    Q = RatMatrix.from_columns(v, nrows=3)
    nf = PencilNormalForm(t, P, Q, tuple(tuple(x) for x in v), tuple(full), (NAMING_FLAG,))
    target = canonical_pencil(t, p.s)
    if P @ A @ Q != target.A or P @ B @ Q != target.B:
        raise InternalRankContradiction("normal-form identities fail")
    return nf


def verify_normal_form(p: PencilPair, nf: PencilNormalForm) -> list[tuple[str, bool]]:
    """Row-by-row verification table used by the CLI."""
    can = canonical_pencil(nf.t, p.s)
    return [
        ("P invertible", mat_rank(nf.P) == nf.P.nrows),
        ("Q invertible", mat_rank(nf.Q) == 3),
        ("P A Q = [e0 e1 e2]", nf.P @ p.A @ nf.Q == can.A),
        (f"P B Q = [e{nf.t - 1} e{nf.t} e{nf.t + 1}]", nf.P @ p.B @ nf.Q == can.B),
        ("2 <= t <= 4", 2 <= nf.t <= 4),
    ]


def load_pencil(path: str) -> PencilPair:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadInput(f"{path}: invalid JSON ({exc})") from exc
    return PencilPair.from_json(data)
