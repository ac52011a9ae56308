"""The verify-all suite: one check per acceptance property, plus flagged source ambiguities."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from math import isqrt

from .algebra import RatMatrix, mat_rank, rational_str
from .bundles import (
    DEFAULT_SEED,
    catalog_bundle,
    fiber_over,
    image_membership,
    nowhere_vanishing_section,
    standard_instances,
    type5_stacked_rank,
)
from .cohomology import bott_h, h0_line, h0_tangent_twist
from .cones import TYPE_LABEL_FLAG
from .drums import (
    SG_ITEM_FLAG,
    blowup_dimension_checks,
    check_degree_identity,
    drum_catalog,
    flip_classify,
    h0_cross_check,
)
from .errors import IrregularPencil
from .geometry import ProjPoint, determinantal_locus, projective_grid, smooth_scan
from .pencils import NAMING_FLAG, PencilPair, canonical_pencil, pencil_normal_form, pencil_t
from .report import Check, VerificationReport
from .sections import EXACTNESS_FLAG, cone_slope, symmetric_power_additivity


@dataclass(frozen=True)
class RunConfig:
    seed: int = DEFAULT_SEED
    pencil_conjugates: int = 100
    pencil_samples: int = 1000
    image_samples: int = 500
    section_samples: int = 500
    cubic_samples: int = 100
    a_max: int = 4
    radius: int = 3
    grid_radius: int = 2
    fmt: str = "json"

    def __post_init__(self):
        counts = (self.pencil_conjugates, self.pencil_samples, self.image_samples,
                  self.section_samples, self.cubic_samples)
        if min(counts) < 1:
            raise ValueError("sample counts must be >= 1")
        if self.radius < 1 or self.grid_radius < 1:
            raise ValueError("radius must be >= 1")
        if self.a_max < 2:
            raise ValueError("a_max must be >= 2")

    def rng(self, name: str) -> random.Random:
        # string seeds hash through sha512, so streams are stable across runs
        return random.Random(f"{self.seed}:{name}")


MAX_DETAILS = 5


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def random_invertible(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> RatMatrix:
    while True:
        M = RatMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if mat_rank(M) == n:
            return M


def random_conjugate(rng: random.Random, p: PencilPair) -> PencilPair:
    return p.conjugate(random_invertible(rng, p.A.nrows), random_invertible(rng, 3))


# ---------------------------------------------------------------- pencils


def _pencil_samples(cfg: RunConfig) -> list[tuple[int, int, PencilPair]]:
    rng = cfg.rng("pencil-round-trip")
    out = []
    for t in (2, 3, 4):
        for s in range(t, 7):
            base = canonical_pencil(t, s)
            out.extend((t, s, random_conjugate(rng, base)) for _ in range(cfg.pencil_conjugates))
    return out


def _irregular_samples(cfg: RunConfig) -> list[PencilPair]:
    rng = cfg.rng("pencil-irregular")
    out = []
    for s in range(1, 7):
        for _ in range(5):
            B = RatMatrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(s + 2)])
            out.append(PencilPair(B, B))
            D = RatMatrix([[rng.randint(-3, 3) if i == j else 0 for j in range(3)] for i in range(3)])
            out.append(random_conjugate(rng, PencilPair(B @ D, B)))
    return out


def check_pencil_round_trip(cfg: RunConfig) -> Check:
    bad: list[str] = []
    samples = _pencil_samples(cfg)
    for t, s, p in samples:
        nf = pencil_normal_form(p)
        can = canonical_pencil(t, s)
        if nf.t != t or nf.P @ p.A @ nf.Q != can.A or nf.P @ p.B @ nf.Q != can.B:
            bad.append(f"t={t} s={s}: recovered t={nf.t}")
    accepted = 0
    irregular = _irregular_samples(cfg)
    for p in irregular:
        try:
            pencil_t(p)
            accepted += 1
            bad.append(f"irregular pencil accepted: {p.to_json()}")
        except IrregularPencil:
            pass
    computed = {"conjugates": len(samples), "mismatches": len(bad) - accepted,
                "irregular": len(irregular), "irregular_accepted": accepted}
    expected = {"conjugates": len(samples), "mismatches": 0, "irregular": len(irregular), "irregular_accepted": 0}
    return Check("pencils", "pencil-round-trip", _status(computed == expected), expected, computed,
                 "normal form P A Q = [e0 e1 e2], P B Q = [e_{t-1} e_t e_{t+1}] of a regular pencil",
                 tuple(bad[:MAX_DETAILS]))


def _range_samples(cfg: RunConfig) -> list[tuple[int, PencilPair]]:
    rng = cfg.rng("pencil-range")
    out = []
    for _ in range(cfg.pencil_samples):
        t = rng.choice((2, 3, 4))
        s = rng.randint(t, 6)
        out.append((t, random_conjugate(rng, canonical_pencil(t, s))))
    return out


def check_pencil_range(cfg: RunConfig) -> Check:
    seen: dict[int, int] = {}
    bad = []
    for t, p in _range_samples(cfg):
        got = pencil_t(p)
        seen[got] = seen.get(got, 0) + 1
        if got not in (2, 3, 4) or got != t:
            bad.append(f"generated t={t}, computed t={got}")
    computed = {"samples": cfg.pencil_samples, "out_of_range": sum(v for k, v in seen.items() if k not in (2, 3, 4)),
                "mismatches": len(bad), "histogram": {str(k): seen[k] for k in sorted(seen)}}
    ok = computed["out_of_range"] == 0 and not bad
    return Check("pencils", "pencil-range", _status(ok),
                 {"samples": cfg.pencil_samples, "out_of_range": 0, "mismatches": 0}, computed,
                 "t = rank[A:B] - 2 satisfies 2 <= t <= 4", tuple(bad[:MAX_DETAILS]))


# ---------------------------------------------------------------- images and fibers

IMAGE_CASES = ((2, 2, 0), (2, 3, 0), (3, 2, 0), (2, 2, 2))


def _point_on_cone(rng: random.Random, n: int, d: int, N: int) -> list[int]:
    """A random integer point of C(V): solve for one odd coordinate."""
    while True:
        x = [rng.randint(-5, 5) for _ in range(N + 1)]
        i = rng.randrange(n + 1)
        lead = x[2 * i] ** (d - 1)
        if lead == 0:
            continue
        rest = sum(x[2 * j] ** (d - 1) * x[2 * j + 1] for j in range(n + 1) if j != i)
        if rest % lead:
            x = [v * lead for v in x]
            rest = sum(x[2 * j] ** (d - 1) * x[2 * j + 1] for j in range(n + 1) if j != i)
            lead = x[2 * i] ** (d - 1)
        x[2 * i + 1] = -rest // lead
        if any(x):
            return x


def _image_points(cfg: RunConfig, n: int, d: int, r: int) -> list[list[int]]:
    rng = cfg.rng(f"image-equivalence:{n}:{d}:{r}")
    N = 2 * n + 1 + r
    pts = []
    half = cfg.image_samples // 2
    for _ in range(half):
        pts.append(_point_on_cone(rng, n, d, N))
    while len(pts) < cfg.image_samples:
        x = [rng.randint(-5, 5) for _ in range(N + 1)]
        if any(x):
            pts.append(x)
    return pts


def check_image_equivalence(cfg: RunConfig) -> Check:
    per_case = {}
    bad = []
    for n, d, r in IMAGE_CASES:
        bp = catalog_bundle("SectionFstar", n, r, d=d)
        N = 2 * n + 1 + r
        sampled = [ProjPoint(x) for x in _image_points(cfg, n, d, r)]
        grid = list(projective_grid(N, cfg.grid_radius))
        hits = mism = 0
        for p in sampled + grid:
            a = not fiber_over(bp, p).empty
            b = image_membership(bp, p)
            hits += b
            if a != b:
                mism += 1
                bad.append(f"(n,d,r)=({n},{d},{r}) x={p!r}: fiber nonempty={a}, on C(V)={b}")
        per_case[f"{n},{d},{r}"] = {"points": len(sampled) + len(grid), "on_cone": hits, "mismatches": mism}
    ok = all(v["mismatches"] == 0 for v in per_case.values())
    expected = {k: {"mismatches": 0} for k in per_case}
    return Check("bundles", "image-equivalence", _status(ok), expected, per_case,
                 "image of P(O(1) + F*) is the cone over V: fiber nonempty iff the equation vanishes",
                 tuple(bad[:MAX_DETAILS]))


def _type5_cases() -> list:
    out = [catalog_bundle("Type5", 2, t, t=t) for t in (2, 3, 4)]
    out.append(catalog_bundle("Type5", 3, 3))
    return out


def check_fiber_table(cfg: RunConfig) -> Check:
    per_case = {}
    bad = []
    cubic = determinantal_locus(2)
    locus_ok = True
    for bp in _type5_cases():
        n = bp.n
        table = {"rank2": 0, "rank1": 0, "rank0": 0}
        mism = 0
        for p in projective_grid(bp.N, cfg.grid_radius):
            fib = fiber_over(bp, p)
            rk = type5_stacked_rank(bp, p.coords)
            table[f"rank{rk}"] += 1
            expected_kind = "Point" if n - rk == 0 else "LinearPk"
            if fib.dimension != n - rk or fib.description != expected_kind:
                mism += 1
                bad.append(f"{bp.label} x={p!r}: rank {rk}, fiber {fib.description} dim {fib.dimension}")
            if n == 2 and bp.param("t") == 2 and (fib.dimension >= 1) != cubic.contains(p):
                locus_ok = False
                bad.append(f"{bp.label} x={p!r}: positive-dimensional fiber vs twisted cubic disagree")
        per_case[bp.label] = {"by_rank": table, "mismatches": mism}
    ok = locus_ok and all(v["mismatches"] == 0 for v in per_case.values())
    computed = {"cases": per_case, "twisted_cubic_locus_matches": locus_ok}
    expected = {"mismatches": 0, "twisted_cubic_locus_matches": True}
    return Check("bundles", "fiber-table", _status(ok), expected, computed,
                 "Type5 fibers are P^(n-2), P^(n-1), P^n by the rank of (x^t A; x^t B)",
                 tuple(bad[:MAX_DETAILS]))


# ---------------------------------------------------------------- geometry


def check_singular_locus(cfg: RunConfig) -> Check:
    cubic = smooth_scan(2, 3, cfg.radius)
    quad = smooth_scan(2, 2, cfg.radius)
    computed = {
        "d3": {k: cubic[k] for k in ("points_on_V", "singular_points", "points_on_L0")} | {"mismatches": len(cubic["mismatches"])},
        "d2": {k: quad[k] for k in ("points_on_V", "singular_points", "points_on_L0")} | {"mismatches": len(quad["mismatches"])},
    }
    ok = (
        not cubic["mismatches"] and cubic["singular_points"] == cubic["points_on_L0"] > 0
        and quad["singular_points"] == 0 and not quad["mismatches"]
    )
    expected = {"d3": {"singular_points": "= points_on_L0", "mismatches": 0}, "d2": {"singular_points": 0}}
    return Check("projective-geometry", "singular-locus", _status(ok), expected, computed,
                 "Sing(V) = L0 for d >= 3; V is a smooth quadric for d = 2",
                 tuple((cubic["mismatches"] + quad["mismatches"])[:MAX_DETAILS]))


# ---------------------------------------------------------------- cohomology


def check_cohomology_anchors(cfg: RunConfig) -> Check:
    bad = []
    for n in (2, 3, 4):
        if h0_tangent_twist(n, -1) != n + 1:
            bad.append(f"h0(T(-1)) on P^{n} = {h0_tangent_twist(n, -1)}")
        for i in range(-6, -1):
            if h0_tangent_twist(n, i) != 0:
                bad.append(f"h0(T({i})) on P^{n} = {h0_tangent_twist(n, i)}")
    for n in (3, 4):
        if bott_h(n, 1, 0, 2) != (n * n + n) // 2:
            bad.append(f"h0(Omega(2)) on P^{n} = {bott_h(n, 1, 0, 2)}")
        for i in range(-4, 2):
            if bott_h(n, 1, 0, i) != 0:
                bad.append(f"h0(Omega({i})) on P^{n} = {bott_h(n, 1, 0, i)}")
    grid = 0
    for n in range(0, 5):
        for k in range(-3, 5):
            grid += 1
            if bott_h(n, 0, 0, k) != h0_line(n, k):
                bad.append(f"Bott vs h0_line at n={n}, k={k}")
    computed = {"violations": len(bad), "grid_points": grid}
    return Check("bundles", "cohomology-anchors", _status(not bad), {"violations": 0, "grid_points": 40}, computed,
                 "h0(T(-1)) = n+1, h0(T(i<-1)) = 0, h0(Omega(2)) = (n^2+n)/2, h0(Omega(i<=1)) = 0",
                 tuple(bad[:MAX_DETAILS]))


# ---------------------------------------------------------------- cones and sections


def slope_cases() -> list[tuple[object, Fraction]]:
    cases = [(catalog_bundle("Type1", 2, 2), Fraction(2)), (catalog_bundle("Type2", 2, 3), Fraction(1))]
    cases += [(catalog_bundle("Type3", n, r), Fraction(1)) for n, r in ((2, 2), (2, 3), (3, 3))]
    cases += [(catalog_bundle("Type5", 2, t, t=t), Fraction(1, 2)) for t in (2, 3, 4)]
    cases += [(catalog_bundle("Type4a", 3, 3), Fraction(0)), (catalog_bundle("Type4b", 3, 2), Fraction(0))]
    cases += [(catalog_bundle("Type6", n, n), Fraction(0)) for n in (2, 3)]
    return cases


def check_cone_slopes(cfg: RunConfig) -> Check:
    expected, computed = {}, {}
    for bp, c in slope_cases():
        expected[bp.label] = rational_str(c)
        computed[bp.label] = rational_str(cone_slope(bp, cfg.a_max))
    bad = tuple(f"{k}: expected {expected[k]}, got {computed[k]}" for k in expected if expected[k] != computed[k])
    return Check("bundles", "cone-slopes", _status(not bad), expected, computed,
                 "pseudoeffective boundary xi - cH with c in {2, 1, 1/2, 0} by type", bad)


def additivity_bundles() -> list:
    extra = [
        catalog_bundle("Type5", 2, 3, t=3),
        catalog_bundle("Type5", 2, 4, t=4),
        catalog_bundle("Type3", 2, 3, section="trivial"),
        catalog_bundle("Type6", 3, 3),
    ]
    return standard_instances() + extra


def check_section_additivity(cfg: RunConfig) -> Check:
    bad = []
    total = 0
    for bp in additivity_bundles():
        for a in range(4):
            for b in range(5):
                lhs, rhs = symmetric_power_additivity(bp, a, b)
                total += 1
                if lhs != rhs:
                    bad.append(f"{bp.label} a={a} b={b}: O+E gives {lhs}, partial sums give {rhs}")
    return Check("bundles", "section-additivity", _status(not bad),
                 {"violations": 0, "cases": total}, {"violations": len(bad), "cases": total},
                 "Sym^a(O + E) = sum over i <= a of Sym^i(E), so section counts add up",
                 tuple(bad[:MAX_DETAILS]))


def _quadratic_samples(cfg: RunConfig) -> list[tuple[int, list[int]]]:
    rng = cfg.rng("sections-d2")
    out = []
    for k in range(cfg.section_samples):
        n = 2 + k % 2
        x = [rng.randint(-6, 6) for _ in range(2 * n + 2)]
        if k % 4 < 2:
            # force sum x_{2i} x_{2i+1} = 0 through the last pair
            x[2 * n] = 1
            x[2 * n + 1] = -sum(x[2 * i] * x[2 * i + 1] for i in range(n))
        if not any(x):
            x[0] = 1
        out.append((n, x))
    return out


def _cubic_samples(cfg: RunConfig) -> list[list[int]]:
    rng = cfg.rng("sections-d3")
    out = []
    n = 2
    for k in range(cfg.cubic_samples):
        roots = [rng.randint(0, 4) for _ in range(n + 1)]
        evens = [rng.randint(-5, 5) for _ in range(n + 1)]
        if k % 2 == 0:
            # make one sign pattern cancel: last root 1, last even coordinate fixes the sum
            signs = [rng.choice((-1, 1)) for _ in range(n + 1)]
            roots[n] = 1
            evens[n] = -signs[n] * sum(evens[i] * signs[i] * roots[i] for i in range(n))
        x = []
        for e, r in zip(evens, roots):
            x += [e, r * r]
        if not any(x):
            x[0] = 1
        out.append(x)
    return out


def _sign_oracle(x: list[int]) -> bool:
    """Nonvanishing for every choice of square roots, by enumerating signs."""
    n = len(x) // 2 - 1
    roots = [isqrt(x[2 * i + 1]) for i in range(n + 1)]
    return all(
        sum(x[2 * i] * s * roots[i] for i, s in enumerate(signs)) != 0
        for signs in product((1, -1), repeat=n + 1)
    )


def check_nowhere_vanishing(cfg: RunConfig) -> Check:
    bad = []
    d2 = _quadratic_samples(cfg)
    vanishing2 = 0
    for n, x in d2:
        closed = sum(x[2 * i] * x[2 * i + 1] for i in range(n + 1)) != 0
        vanishing2 += not closed
        if nowhere_vanishing_section(2, n, x) != closed:
            bad.append(f"d=2 x={x}: closed form says {closed}")
    d3 = _cubic_samples(cfg)
    vanishing3 = 0
    for x in d3:
        oracle = _sign_oracle(x)
        vanishing3 += not oracle
        if nowhere_vanishing_section(3, 2, x) != oracle:
            bad.append(f"d=3 x={x}: sign enumeration says {oracle}")
    computed = {"d2": {"samples": len(d2), "vanishing": vanishing2},
                "d3": {"samples": len(d3), "vanishing": vanishing3}, "disagreements": len(bad)}
    return Check("bundles", "nowhere-vanishing-sections", _status(not bad), {"disagreements": 0}, computed,
                 "x gives a nowhere vanishing section iff sum x_{2i} y_i != 0 over all roots y_i^(d-1) = x_{2i+1}",
                 tuple(bad[:MAX_DETAILS]))


# ---------------------------------------------------------------- drums


def check_drum_ledger(cfg: RunConfig) -> Check:
    bad = []
    entries = drum_catalog()
    for d in entries:
        if not check_degree_identity(d).passed:
            bad.append(f"{d.id}: canonical-class identity fails in both orientations")
        for label, lhs, rhs in blowup_dimension_checks(d):
            if lhs != rhs:
                bad.append(f"{d.id}: {label}: {lhs} != {rhs}")
        h0 = h0_cross_check(d)
        if h0 is not None and h0[0] != h0[1]:
            bad.append(f"{d.id}: h0(L_+) = {h0[0]} but h0(E_-) = {h0[1]}")
        if d.family == "tangent" or (d.family == "segre" and d.dim_Y_minus == d.dim_Y_plus):
            v = flip_classify(d)
            if v.kind != "Flop" or v.degKminus != 0:
                bad.append(f"{d.id}: expected Flop, got {v.kind}")
        if d.family == "segre" and d.dim_Y_minus > d.dim_Y_plus:
            v = flip_classify(d)
            if v.kind != "Flip" or v.degKminus != d.dim_Y_plus - d.dim_Y_minus:
                bad.append(f"{d.id}: expected Flip, got {v.kind} with {v.degKminus}")
    return Check("drums", "drum-ledger", _status(not bad), {"entries": len(entries), "violations": 0},
                 {"entries": len(entries), "violations": len(bad)},
                 "drum integers: canonical-class identity, flip/flop by dimension, blow-up dimension identities",
                 tuple(bad[:MAX_DETAILS]))


# ---------------------------------------------------------------- determinism


def _sample_digest(cfg: RunConfig) -> str:
    small = replace(cfg, pencil_conjugates=2, pencil_samples=50)
    payload = {
        "pencils": [p.to_json() for _, _, p in _pencil_samples(small)],
        "range": [p.to_json() for _, p in _range_samples(small)],
        "image": [_image_points(cfg, n, d, r) for n, d, r in IMAGE_CASES],
        "d2": _quadratic_samples(cfg),
        "d3": _cubic_samples(cfg),
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def check_determinism(cfg: RunConfig) -> Check:
    first, second = _sample_digest(cfg), _sample_digest(cfg)
    return Check("cli", "determinism", _status(first == second), {"digest": first}, {"digest": second},
                 "same seed, same sampled inputs (byte-identical reports are compared across runs by the tests)")


# ---------------------------------------------------------------- flagged ambiguities


def flagged_checks() -> list[Check]:
    out = []
    display_fail = [d.id for d in drum_catalog() if not check_degree_identity(d).to_json()["display_reading"]["holds"]]
    out.append(Check(
        "drums", "degree-identity-orientation", "flagged",
        "deg E_- - index Y_- = -(k_+ + 1) as printed; the display above it uses deg E_+",
        {"printed_and_mirrored_hold_everywhere": all(check_degree_identity(d).printed_ok and check_degree_identity(d).mirrored_ok
                                                      for d in drum_catalog()),
         "deg_E_plus_reading_fails_on": len(display_fail)},
        "canonical class of a drum base; orientation of the +/- labels",
        ("both the printed identity and its mirror are evaluated; the deg E_+ reading is reported, not adjudicated",),
    ))
    sg = [d.id for d in drum_catalog() if SG_ITEM_FLAG in d.flags]
    out.append(Check("drums", "sg-item-ambiguity", "flagged", "centre and base named differently",
                     {"entries": len(sg)}, "symplectic Grassmannian blow-up item", (SG_ITEM_FLAG,)))
    out.append(Check("bundles", "c-table-type-label", "flagged", "c = 0 for types (4), (6) and (5) with n >= 3",
                     {"stored": "type (6) carries c = 0"}, "pseudoeffective slope table", (TYPE_LABEL_FLAG,)))
    out.append(Check("pencils", "t-vs-r-naming", "flagged", "one integer, two names",
                     {"reported_as": "t"}, "pencil normal form integer", (NAMING_FLAG,)))
    out.append(Check("bundles", "section-exactness", "flagged", "quotient-ring sections equal h0",
                     {"positivity_only_used_for_slopes": True}, "relation ideal saturation", (EXACTNESS_FLAG,)))
    return out


ACCEPTANCE = (
    check_pencil_round_trip,
    check_pencil_range,
    check_image_equivalence,
    check_fiber_table,
    check_singular_locus,
    check_cohomology_anchors,
    check_cone_slopes,
    check_section_additivity,
    check_nowhere_vanishing,
    check_drum_ledger,
    check_determinism,
)

# acceptance criterion number -> check name in the report
CRITERIA = {
    1: "pencil-round-trip",
    2: "pencil-range",
    3: "image-equivalence",
    4: "fiber-table",
    5: "singular-locus",
    6: "cohomology-anchors",
    7: "cone-slopes",
    8: "section-additivity",
    9: "nowhere-vanishing-sections",
    10: "drum-ledger",
    11: "determinism",
}


def verify_all(cfg: RunConfig | None = None) -> VerificationReport:
    cfg = cfg or RunConfig()
    report = VerificationReport(cfg.seed)
    for fn in ACCEPTANCE:
        report.add(fn(cfg))
    for c in flagged_checks():
        report.add(c)
    return report
