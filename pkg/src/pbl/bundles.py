"""Bundle presentations on P^n, their incidence models, fibers and images.

A presentation is E = W / (relations), W = sum of O(d_j) with d_j in {0, 1}.
Relation k is a map O(tau_k) -> W, stored as the column (f_j(alpha)) with
deg f_j = d_j - tau_k. Split bundles with other twists (the O(2) family and
custom split sums) skip relations entirely and use closed formulas.

A point of P(E) over [alpha] is a functional x on the fiber of W that kills
every relation, which gives the bihomogeneous constraints sum_j f_j(alpha) x_j = 0.
Coordinates of an O(1) summand expand to an (n+1)-block proportional to alpha.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import combinations
from functools import lru_cache
from math import comb
from typing import Any, Sequence

from .algebra import MultiPoly, RatMatrix, as_rational, iterated_resultant, kernel_basis, mat_rank, rational_str
from .errors import BadInput, BadParams, IrregularPencil, NoImageEquation, UnknownTag, UnsupportedModel
from .geometry import ProjPoint, cone_over, vnd_hypersurface
from .pencils import canonical_pencil, columns_regular

DEFAULT_SEED = 0xD8B5

TAGS = ("Type1", "Type2", "Type3", "Type4a", "Type4b", "Type5", "Type6", "SectionFstar", "DrumBundle", "Custom")


def alpha_blocks(n: int) -> tuple[tuple[str, int], ...]:
    return (("a", n + 1),)


def alpha_monomials(n: int, deg: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``deg`` in n+1 variables, graded-lex descending."""
    if deg < 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], deg, n + 1)
    return out


@dataclass(frozen=True)
class Relation:
    twist: int
    column: tuple[MultiPoly, ...]


@dataclass(frozen=True)
class BundlePresentation:
    tag: str
    n: int
    twists: tuple[int, ...]
    relations: tuple[Relation, ...] = ()
    syzygy_twists: tuple[int, ...] = ()
    split: bool = False
    coords: tuple[tuple[int, int], ...] = ()
    params: tuple[tuple[str, Any], ...] = ()
    flags: tuple[str, ...] = ()
    # further generators of the relation ideal, polynomials in (a, y) blocks
    extra_relations: tuple[MultiPoly, ...] = ()

    def __hash__(self) -> int:
        # presentations key several caches; hash the deep structure once
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(tuple(getattr(self, f.name) for f in fields(self)))
            object.__setattr__(self, "_hash", h)
        return h

    # -- derived data
    @property
    def rank(self) -> int:
        return len(self.twists) - len(self.relations) + len(self.syzygy_twists)

    @property
    def c1(self) -> int:
        return sum(self.twists) - sum(r.twist for r in self.relations) + sum(self.syzygy_twists)

    def param(self, key: str, default=None):
        return dict(self.params).get(key, default)

    @property
    def label(self) -> str:
        extra = ",".join(f"{k}={v}" for k, v in self.params if k not in ("A", "B"))
        return f"{self.tag}(n={self.n},r={self.rank}{',' + extra if extra else ''})"

    def coordinate_map(self) -> tuple[tuple[int, int], ...]:
        """(slot, alpha index or -1) for each coordinate of H^0(W)."""
        if self.coords:
            return self.coords
        out = []
        for j, d in enumerate(self.twists):
            if d == 0:
                out.append((j, -1))
            else:
                out.extend((j, i) for i in range(self.n + 1))
        return tuple(out)

    @property
    def N(self) -> int:
        return len(self.coordinate_map()) - 1

    def relation_matrix_at(self, alpha: Sequence) -> RatMatrix:
        vals = {"a": list(alpha)}
        cols = [[f.evaluate(vals) for f in rel.column] for rel in self.relations]
        return RatMatrix.from_columns(cols, nrows=len(self.twists))

    def validate(self, seed: int = DEFAULT_SEED) -> None:
        if self.n < 1:
            raise BadParams("base dimension must be >= 1")
        if self.split:
            if self.relations:
                raise BadParams("split presentations carry no relations")
            return
        if any(d not in (0, 1) for d in self.twists):
            raise BadParams("non-split presentations use summands O and O(1) only")
        for rel in self.relations:
            if len(rel.column) != len(self.twists):
                raise BadParams("relation column length must equal the number of summands")
            for f, d in zip(rel.column, self.twists):
                if f.blocks != alpha_blocks(self.n):
                    raise BadParams("relation entries must be polynomials in alpha")
                if not f.is_zero() and f.multidegrees() != {(d - rel.twist,)}:
                    raise BadParams(f"relation entry must be homogeneous of degree {d - rel.twist}")
        for f in self.extra_relations:
            if f.blocks != self.ring_blocks:
                raise BadParams("extra relations must be polynomials in the (a, y) blocks")
        rng = random.Random(seed)
        want = len(self.relations) - len(self.syzygy_twists)
        for _ in range(5):
            alpha = [rng.randint(-9, 9) for _ in range(self.n + 1)]
            if not any(alpha):
                alpha[0] = 1
            if self.relations and mat_rank(self.relation_matrix_at(alpha)) != want:
                raise BadParams("relation columns are not generically independent (modulo declared syzygies)")

    @property
    def ring_blocks(self) -> tuple[tuple[str, int], ...]:
        return (("a", self.n + 1), ("y", len(self.twists)))

    def with_trivial_summand(self) -> "BundlePresentation":
        """Presentation of O + E (new trivial slot appended)."""
        zero = MultiPoly(alpha_blocks(self.n))
        rels = tuple(Relation(r.twist, r.column + (zero,)) for r in self.relations)
        coords = self.coords + ((len(self.twists), -1),) if self.coords else ()
        ring = (("a", self.n + 1), ("y", len(self.twists) + 1))
        return BundlePresentation(
            self.tag, self.n, self.twists + (0,), rels, self.syzygy_twists, self.split, coords,
            self.params + (("plus_trivial", self.param("plus_trivial", 0) + 1),), self.flags,
            tuple(f.with_blocks(ring) for f in self.extra_relations),
        )

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "n": self.n,
            "rank": self.rank,
            "c1": self.c1,
            "twists": list(self.twists),
            "split": self.split,
            "relations": [
                {"twist": r.twist, "column": [f.to_json() for f in r.column]} for r in self.relations
            ],
            "syzygy_twists": list(self.syzygy_twists),
            "extra_relations": [f.to_json() for f in self.extra_relations],
            "coords": [list(c) for c in self.coords],
            "params": {k: _jsonable(v) for k, v in self.params},
            "flags": list(self.flags),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BundlePresentation":
        try:
            n = int(data["n"])
            rels = tuple(
                Relation(int(r["twist"]), tuple(MultiPoly.from_json(f) for f in r["column"]))
                for r in data.get("relations", [])
            )
            bp = cls(
                str(data.get("tag", "Custom")), n, tuple(int(d) for d in data["twists"]), rels,
                tuple(int(s) for s in data.get("syzygy_twists", [])), bool(data.get("split", False)),
                tuple(tuple(int(v) for v in c) for c in data.get("coords", [])),
                tuple(sorted((str(k), _freeze(v)) for k, v in data.get("params", {}).items())),
                extra_relations=tuple(MultiPoly.from_json(f) for f in data.get("extra_relations", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"malformed bundle JSON: {exc}") from exc
        bp.validate()
        return bp


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return rational_str(v)
    return v


# ---------------------------------------------------------------- catalog


def _lin(n: int, coeffs: Sequence) -> MultiPoly:
    bl = alpha_blocks(n)
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * (n + 1)
        e[i] = 1
        terms[tuple(e)] = c
    return MultiPoly(bl, terms)


def _const(n: int, c) -> MultiPoly:
    return MultiPoly.constant(alpha_blocks(n), c)


def _zero(n: int) -> MultiPoly:
    return MultiPoly(alpha_blocks(n))


def _alpha(n: int, i: int, k: int = 1) -> MultiPoly:
    e = [0] * (n + 1)
    e[i] = k
    return MultiPoly(alpha_blocks(n), {tuple(e): 1})


def catalog_bundle(tag: str, n: int, r: int | None = None, **params) -> BundlePresentation:
    """Instantiate a catalog family as an explicit presentation."""
    key = tag.lower()
    builders = {
        "type1": _type1, "type2": _type2, "type3": _type3, "type4a": _type4a, "type4b": _type4b,
        "type5": _type5, "type6": _type6, "sectionfstar": _fstar, "fstar": _fstar,
        "drumbundle": _drum_bundle,
    }
    if key not in builders:
        raise UnknownTag(f"unknown catalog tag {tag!r}")
    if n < 1:
        raise BadParams("n must be >= 1")
    bp = builders[key](n, r, **params)
    bp.validate()
    return bp


def _type1(n, r, **_):
    r = 2 if r is None else r
    if r < 1:
        raise BadParams("Type1 needs r >= 1")
    return BundlePresentation("Type1", n, (2,) + (0,) * (r - 1), split=True)


def _type2(n, r, **_):
    r = 3 if r is None else r
    if r < 2:
        raise BadParams("Type2 needs r >= 2")
    return BundlePresentation("Type2", n, (1, 1) + (0,) * (r - 2))


def _type3(n, r, section: str = "tangent", **_):
    """0 -> O -> O(1) + T(-1) + O^(r-n) -> E, with T(-1) = O^(n+1) / alpha O(-1)."""
    r = n if r is None else r
    if r < n:
        raise BadParams("Type3 needs r >= n")
    triv = r - n
    twists = (1,) + (0,) * (n + 1) + (0,) * triv
    euler = Relation(-1, (_zero(n),) + tuple(_alpha(n, i) for i in range(n + 1)) + (_zero(n),) * triv)
    if section == "tangent":
        # s = (alpha_0, e_0 mod alpha, 0): vanishes only where alpha_0 = 0 and alpha ~ e_0
        col = (_alpha(n, 0),) + (_const(n, 1),) + (_zero(n),) * n + (_zero(n),) * triv
    elif section == "trivial":
        if triv < 1:
            raise BadParams("a section into the trivial part needs r >= n+1")
        col = (_zero(n),) * (n + 2) + (_const(n, 1),) + (_zero(n),) * (triv - 1)
    else:
        raise BadParams(f"unknown Type3 section {section!r}")
    return BundlePresentation("Type3", n, twists, (euler, Relation(0, col)), params=(("section", section),))


def _wedge_pairs() -> list[tuple[int, int]]:
    return list(combinations(range(4), 2))


def _omega2_relations(extra: int) -> tuple[Relation, ...]:
    """alpha ^ e_i inside Lambda^2 k^4, which cuts Omega(2) = Lambda^2 T(-1) out of O^6."""
    n = 3
    pairs = _wedge_pairs()
    rels = []
    for i in range(4):
        col = []
        for (k, l) in pairs:
            if l == i:
                col.append(_alpha(n, k))
            elif k == i:
                col.append(_alpha(n, l) * -1)
            else:
                col.append(_zero(n))
        rels.append(Relation(-1, tuple(col) + (_zero(n),) * extra))
    return tuple(rels)


def _pfaffian(extra: int, extra_rel_slots: int = 0) -> MultiPoly:
    """y01 y23 - y02 y13 + y03 y12: a degenerate 2-form has vanishing Pfaffian."""
    ring = (("a", 4), ("y", 6 + extra))
    idx = {p: k for k, p in enumerate(_wedge_pairs())}

    def y(p):
        return MultiPoly.variable(ring, "y", idx[p])

    return y((0, 1)) * y((2, 3)) - y((0, 2)) * y((1, 3)) + y((0, 3)) * y((1, 2))


def _type4a(n, r, **_):
    if n != 3:
        raise BadParams("Type4 needs n = 3")
    r = 3 if r is None else r
    if r < 3:
        raise BadParams("Type4a needs r >= 3")
    extra = r - 3
    return BundlePresentation(
        "Type4a", 3, (0,) * 6 + (0,) * extra, _omega2_relations(extra), syzygy_twists=(-2,),
        extra_relations=(_pfaffian(extra),),
    )


def _type4b(n, r, **_):
    if n != 3:
        raise BadParams("Type4 needs n = 3")
    r = 2 if r is None else r
    if r < 2:
        raise BadParams("Type4b needs r >= 2")
    extra = r - 2
    # symplectic form e0^e1 + e2^e3 is never decomposable, so its image is nowhere zero
    omega = tuple(_const(3, 1) if p in ((0, 1), (2, 3)) else _zero(3) for p in _wedge_pairs())
    rels = _omega2_relations(extra) + (Relation(0, omega + (_zero(3),) * extra),)
    return BundlePresentation(
        "Type4b", 3, (0,) * 6 + (0,) * extra, rels, syzygy_twists=(-2,), extra_relations=(_pfaffian(extra),),
    )


def _type5(n, r, t: int | None = None, A=None, B=None, **_):
    if A is not None and B is not None:
        A = A if isinstance(A, RatMatrix) else RatMatrix(A)
        B = B if isinstance(B, RatMatrix) else RatMatrix(B)
        r = A.nrows - 2
    elif n == 2:
        if t is None:
            t = min(r if r is not None else 2, 4)
        r = t if r is None else r
        pp = canonical_pencil(t, r)
        A, B = pp.A, pp.B
    else:
        r = n if r is None else r
        rows = r + 2
        A = RatMatrix([[int(i == j) for j in range(n + 1)] for i in range(rows)])
        B = RatMatrix([[int(i == j + 1) for j in range(n + 1)] for i in range(rows)])
    if A.shape != B.shape or A.ncols != n + 1:
        raise BadParams(f"Type5 matrices must be (r+2)x{n + 1}")
    if r < n:
        raise BadParams("Type5 needs r >= n")
    if not columns_regular(A, B):
        raise IrregularPencil("uA + vB drops rank for some [u:v]")
    rels = tuple(
        Relation(-1, tuple(_lin(n, M.rows[j]) for j in range(M.nrows))) for M in (A, B)
    )
    params = (("A", tuple(map(tuple, A.to_json()))), ("B", tuple(map(tuple, B.to_json()))))
    if n == 2:
        params = params + (("t", mat_rank(A.hstack(B)) - 2),)
    return BundlePresentation("Type5", n, (0,) * (r + 2), rels, params=params)


def _type6(n, r, **_):
    r = n if r is None else r
    if r < n:
        raise BadParams("Type6 needs r >= n")
    col = tuple(_alpha(n, i, 2) for i in range(n + 1)) + (_zero(n),) * (r - n)
    return BundlePresentation("Type6", n, (0,) * (r + 1), (Relation(-2, col),))


def _fstar(n, r, d: int = 2, **_):
    """E = O^r + F* + O(1), with 0 -> O(1-d) -> O^(n+1) -> F* -> 0 via alpha_i^(d-1).

    Coordinates follow x_{2i} = O(1)-block, x_{2i+1} = F* slot i, then the trivial part.
    """
    r = 0 if r is None else r
    if d < 2:
        raise BadParams("SectionFstar needs d >= 2")
    if r < 0:
        raise BadParams("r must be >= 0")
    twists = (0,) * (n + 1) + (1,) + (0,) * r
    col = tuple(_alpha(n, i, d - 1) for i in range(n + 1)) + (_zero(n),) + (_zero(n),) * r
    coords = []
    for i in range(n + 1):
        coords.append((n + 1, i))
        coords.append((i, -1))
    coords.extend((n + 2 + k, -1) for k in range(r))
    return BundlePresentation(
        "SectionFstar", n, twists, (Relation(1 - d, col),), coords=tuple(coords), params=(("d", d), ("r_extra", r)),
    )


def _drum_bundle(n, r, id: str = "tangent", **_):
    """Bundles E_- appearing in the catalog drums over P^n (only T(-1) is presented)."""
    if id != "tangent":
        raise UnsupportedModel(f"no presentation for drum bundle {id!r}")
    euler = Relation(-1, tuple(_alpha(n, i) for i in range(n + 1)))
    return BundlePresentation("DrumBundle", n, (0,) * (n + 1), (euler,), params=(("id", "tangent"),))


def custom_split(n: int, twists: Sequence[int]) -> BundlePresentation:
    bp = BundlePresentation("Custom", n, tuple(int(d) for d in twists), split=True)
    bp.validate()
    return bp


def standard_instances() -> list[BundlePresentation]:
    """One representative per catalog family, used by the batch checks."""
    return [
        catalog_bundle("Type1", 2, 2),
        catalog_bundle("Type2", 2, 3),
        catalog_bundle("Type3", 2, 2),
        catalog_bundle("Type4a", 3, 3),
        catalog_bundle("Type4b", 3, 2),
        catalog_bundle("Type5", 2, 2, t=2),
        catalog_bundle("Type6", 2, 2),
        catalog_bundle("SectionFstar", 2, 0, d=2),
    ]


# ---------------------------------------------------------------- incidence


@dataclass(frozen=True)
class IncidenceModel:
    n: int
    N: int
    constraints: tuple[MultiPoly, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def ring(self) -> tuple[tuple[str, int], ...]:
        return (("a", self.n + 1), ("x", self.N + 1))

    def to_json(self) -> dict:
        return {
            "alpha_arity": self.n + 1,
            "x_arity": self.N + 1,
            "constraints": [c.to_json() for c in self.constraints],
            "proportionality_blocks": [list(b) for b in self.blocks],
        }


def _split_first_variable(f: MultiPoly, n: int) -> list[MultiPoly]:
    """Write f = sum_i alpha_i g_i, sending each monomial to its first variable."""
    out = [MultiPoly(f.blocks) for _ in range(n + 1)]
    for e, c in f.terms.items():
        i = next((k for k, v in enumerate(e) if v), None)
        if i is None:
            raise UnsupportedModel("constant coefficient on an O(1) summand")
        ne = list(e)
        ne[i] -= 1
        out[i] = out[i] + MultiPoly(f.blocks, {tuple(ne): c})
    return out


@lru_cache(maxsize=64)
def incidence_model(bp: BundlePresentation) -> IncidenceModel:
    if bp.split:
        raise UnsupportedModel("split presentations with twist >= 2 have no incidence model here")
    cmap = bp.coordinate_map()
    N = len(cmap) - 1
    ring = (("a", bp.n + 1), ("x", N + 1))
    index = {c: k for k, c in enumerate(cmap)}

    def xv(k: int) -> MultiPoly:
        return MultiPoly.variable(ring, "x", k)

    constraints = []
    for rel in bp.relations:
        total = MultiPoly(ring)
        for j, (f, d) in enumerate(zip(rel.column, bp.twists)):
            if f.is_zero():
                continue
            if d == 0:
                total = total + f.with_blocks(ring) * xv(index[(j, -1)])
            else:
                for i, g in enumerate(_split_first_variable(f, bp.n)):
                    if not g.is_zero():
                        total = total + g.with_blocks(ring) * xv(index[(j, i)])
        constraints.append(total)
    for f in bp.extra_relations:
        if any(bp.twists[j] for e in f.terms for j, k in enumerate(e[bp.n + 1:]) if k):
            raise UnsupportedModel("extra relations on O(1) summands are not supported")
        terms = {}
        for e, c in f.terms.items():
            xe = [0] * (N + 1)
            for j, k in enumerate(e[bp.n + 1:]):
                if k:
                    xe[index[(j, -1)]] += k
            terms[tuple(e[: bp.n + 1]) + tuple(xe)] = c
        constraints.append(MultiPoly(ring, terms))
    blocks = tuple(
        tuple(index[(j, i)] for i in range(bp.n + 1)) for j, d in enumerate(bp.twists) if d == 1
    )
    return IncidenceModel(bp.n, N, tuple(constraints), blocks)


def proportionality_minors(model: IncidenceModel) -> list[MultiPoly]:
    out = []
    for blk in model.blocks:
        for i, j in combinations(range(model.n + 1), 2):
            a_i = MultiPoly.variable(model.ring, "a", i)
            a_j = MultiPoly.variable(model.ring, "a", j)
            x_i = MultiPoly.variable(model.ring, "x", blk[i])
            x_j = MultiPoly.variable(model.ring, "x", blk[j])
            out.append(x_i * a_j - x_j * a_i)
    return out


# ---------------------------------------------------------------- fibers

FIBER_KINDS = ("Empty", "Point", "LinearPk", "HypersurfaceInLine", "HypersurfaceInPn")


@dataclass(frozen=True)
class FiberClass:
    dimension: int
    description: str
    k: int | None = None
    alpha: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.description not in FIBER_KINDS:
            raise BadInput(f"unknown fiber kind {self.description}")
        expected = {"Empty": -1, "Point": 0, "HypersurfaceInLine": 0}.get(self.description)
        if expected is not None and self.dimension != expected:
            raise BadInput("fiber dimension inconsistent with description")
        if self.description == "LinearPk" and self.dimension != self.k:
            raise BadInput("fiber dimension inconsistent with description")

    @property
    def empty(self) -> bool:
        return self.description == "Empty"

    def to_json(self) -> dict:
        out = {"dimension": self.dimension, "description": self.description}
        if self.k is not None:
            out["k"] = self.k
        if self.alpha is not None:
            out["alpha"] = [rational_str(a) for a in self.alpha]
        return out


def _fiber_from_model(model: IncidenceModel, x: Sequence[Fraction]) -> FiberClass:
    n = model.n
    live = [blk for blk in model.blocks if any(x[k] for k in blk)]
    if live:
        # lambda != 0 on some O(1) block: alpha is forced up to scale
        alpha = tuple(x[k] for k in live[0])
        for blk in model.blocks:
            vals = [x[k] for k in blk]
            # proportional to alpha iff every 2x2 minor vanishes
            if any(vals[i] * alpha[j] != vals[j] * alpha[i] for i in range(n + 1) for j in range(i + 1, n + 1)):
                return FiberClass(-1, "Empty")
        env = {"a": alpha, "x": x}
        if all(c.evaluate(env) == 0 for c in model.constraints):
            return FiberClass(0, "Point", alpha=alpha)
        return FiberClass(-1, "Empty")
    # every O(1) block vanishes: solve the constraints in alpha alone
    reduced = [c.substitute({"x": x}) for c in model.constraints]
    reduced = [c for c in reduced if not c.is_zero()]
    linear_rows = []
    nonlinear = []
    for c in reduced:
        degs = {dg[0] for dg in c.multidegrees()}
        if len(degs) != 1:
            raise UnsupportedModel("constraint is not homogeneous in alpha")
        deg_a = degs.pop()
        if deg_a == 0:
            return FiberClass(-1, "Empty")
        if deg_a == 1:
            row = [Fraction(0)] * (n + 1)
            for e, coef in c.terms.items():
                row[next(i for i in range(n + 1) if e[i])] += coef
            linear_rows.append(row)
        else:
            nonlinear.append(c)
    rho = mat_rank(RatMatrix(linear_rows, ncols=n + 1)) if linear_rows else 0
    if not nonlinear:
        if rho == n + 1:
            return FiberClass(-1, "Empty")
        if rho == n:
            (alpha,) = kernel_basis(RatMatrix(linear_rows, ncols=n + 1))
            return FiberClass(0, "Point", alpha=tuple(alpha))
        return FiberClass(n - rho, "LinearPk", k=n - rho)
    if len(nonlinear) == 1 and rho == 0:
        # a nonzero form of positive degree always has zeros over an algebraically closed field
        if n == 1:
            return FiberClass(0, "HypersurfaceInLine")
        return FiberClass(n - 1, "HypersurfaceInPn")
    raise UnsupportedModel("mixed nonlinear alpha-system outside the catalog solvers")


def fiber_over(bp: BundlePresentation, x: ProjPoint | Sequence) -> FiberClass:
    """Fiber of P(E) -> P^N over [x], classified over an algebraically closed field."""
    p = x if isinstance(x, ProjPoint) else ProjPoint(x)
    model = incidence_model(bp)
    if p.dim != model.N:
        raise BadInput(f"point must lie in P^{model.N}")
    return _fiber_from_model(model, p.coords)


def type5_stacked_rank(bp: BundlePresentation, x: Sequence) -> int:
    """Rank of the 2 x (n+1) matrix with rows x^t A and x^t B."""
    if bp.tag != "Type5":
        raise BadInput("stacked rank is defined for Type5 presentations")
    xs = [as_rational(v) for v in x]
    A = RatMatrix(bp.param("A"))
    B = RatMatrix(bp.param("B"))
    return mat_rank(RatMatrix([A.transpose().apply(xs), B.transpose().apply(xs)]))


# ---------------------------------------------------------------- images


def image_equations(bp: BundlePresentation) -> list[MultiPoly]:
    """Registered equations of the image of P(E) in P^N."""
    return list(_image_equations(bp))


@lru_cache(maxsize=64)
def _image_equations(bp: BundlePresentation) -> tuple[MultiPoly, ...]:
    N = _image_ambient(bp)
    ring = (("x", N + 1),)

    def X(k: int) -> MultiPoly:
        return MultiPoly.variable(ring, "x", k)

    if bp.tag == "SectionFstar":
        d = bp.param("d")
        V = vnd_hypersurface(bp.n, d)
        return (cone_over(V, N - V.ambient).poly,)
    if bp.tag == "Type1":
        # cone over the 2-uple embedding: coordinates indexed by degree-2 monomials
        monos = alpha_monomials(bp.n, 2)
        idx = {m: k for k, m in enumerate(monos)}
        eqs = set()
        for m1 in monos:
            for m2 in monos:
                for m3 in monos:
                    s = tuple(a + b - c for a, b, c in zip(m1, m2, m3))
                    if min(s) >= 0 and sum(s) == 2:
                        q = X(idx[m1]) * X(idx[m2]) - X(idx[m3]) * X(idx[s])
                        if not q.is_zero():
                            eqs.add(q if q.sorted_terms()[0][1] > 0 else -q)
        return tuple(sorted(eqs, key=repr))
    if bp.tag == "Type2":
        model = incidence_model(bp)
        b1, b2 = model.blocks[0], model.blocks[1]
        return tuple(X(b1[i]) * X(b2[j]) - X(b1[j]) * X(b2[i]) for i, j in combinations(range(bp.n + 1), 2))
    if bp.tag == "Type3":
        model = incidence_model(bp)
        eqs = []
        blk = model.blocks[0]
        for c in model.constraints:
            (deg_a, _), = c.multidegrees()
            if deg_a == 0:
                eqs.append(MultiPoly(ring, {e[bp.n + 1:]: v for e, v in c.terms.items()}))
            else:
                # alpha := the O(1) block
                sub = MultiPoly(ring)
                for e, v in c.terms.items():
                    term = MultiPoly(ring, {e[bp.n + 1:]: v})
                    for i in range(bp.n + 1):
                        if e[i]:
                            term = term * X(blk[i]) ** e[i]
                    sub = sub + term
                eqs.append(sub)
        return tuple(eqs)
    if bp.tag in ("Type5", "Type6") and (bp.tag == "Type6" or bp.n == 2):
        return ()
    raise NoImageEquation(f"no image equation registered for {bp.tag}")


def _image_ambient(bp: BundlePresentation) -> int:
    if bp.split:
        return sum(comb(bp.n + d, d) for d in bp.twists) - 1
    return bp.N


def image_membership(bp: BundlePresentation, x: ProjPoint | Sequence) -> bool:
    p = x if isinstance(x, ProjPoint) else ProjPoint(x)
    eqs = _image_equations(bp)
    if p.dim != _image_ambient(bp):
        raise BadInput(f"point must lie in P^{_image_ambient(bp)}")
    return all(q.evaluate({"x": p.coords}) == 0 for q in eqs)


# ---------------------------------------------------------------- sections of F*


def nowhere_vanishing_section(d: int, n: int, x: Sequence) -> bool:
    """Is sum_i x_{2i} y_{2i+1} nonzero for every choice of roots y^(d-1) = x_{2i+1}?

    Decided by eliminating each y against its monic constraint; the result is the
    product of the linear form over all root choices.
    """
    xs = [as_rational(v) for v in x]
    if len(xs) != 2 * n + 2:
        raise BadInput(f"x must have length {2 * n + 2}")
    if not any(xs):
        raise BadInput("x must be nonzero")
    if d < 2:
        raise BadParams("d must be >= 2")
    ring = (("y", n + 1),)
    form = MultiPoly(ring)
    constraints = []
    for i in range(n + 1):
        yi = MultiPoly.variable(ring, "y", i)
        form = form + yi * xs[2 * i]
        constraints.append((i, yi ** (d - 1) - MultiPoly.constant(ring, xs[2 * i + 1])))
    res = iterated_resultant(form, constraints)
    value = res.evaluate({"y": [0] * (n + 1)})
    return value != 0
