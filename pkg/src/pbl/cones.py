"""Nef and pseudoeffective cones, bigness, Fano test and contraction verdicts for catalog bundles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import rational_str
from .bundles import BundlePresentation
from .errors import InternalRankContradiction, UnknownTag
from .geometry import LOCUS_NAME
from .sections import cone_slope

# The printed c = 0 case lists type (4) twice; type (6) is what the case analysis supports.
TYPE_LABEL_FLAG = "c-table anomaly: the c = 0 case names type (4) twice; type (6) is stored with c = 0"


def table_c(bp: BundlePresentation) -> Fraction:
    """Slope c of the pseudoeffective boundary xi - cH, per family."""
    tag = bp.tag
    if tag == "Type1":
        return Fraction(2)
    if tag in ("Type2", "Type3"):
        return Fraction(1)
    if tag == "Type5":
        return Fraction(1, 2) if bp.n == 2 else Fraction(0)
    if tag in ("Type4a", "Type4b", "Type6"):
        return Fraction(0)
    if tag == "SectionFstar" and bp.param("d") == 2:
        # O(1) + F* is O(1) + T(-1) when d = 2, a type (3) bundle
        return Fraction(1)
    raise UnknownTag(f"no c value recorded for {tag}")


@dataclass(frozen=True)
class ContractionVerdict:
    birational: bool
    smooth_blowup: bool
    description: str
    center: str | None = None

    def to_json(self) -> dict:
        return {
            "birational": self.birational,
            "smooth_blowup": self.smooth_blowup,
            "description": self.description,
            "center": self.center,
        }


def contraction_verdict(bp: BundlePresentation) -> ContractionVerdict:
    n, r, tag = bp.n, bp.rank, bp.tag
    if tag == "Type1":
        return ContractionVerdict(
            True, False,
            f"blow-up of the cone over the 2-uple embedding of P^{n} at its vertex",
            f"vertex: linear subspace of dimension {r - 2}" if r >= 2 else None,
        )
    if tag == "Type2":
        return ContractionVerdict(
            True, False,
            f"birational onto the cone over the Segre embedding of P^{n} x P^1; not a smooth blow-up",
        )
    if tag == "Type3":
        section = bp.param("section")
        if section == "tangent" and r == n:
            return ContractionVerdict(
                True, True,
                f"blow-up of a smooth quadric in P^{2 * n}",
                f"linear subvariety of dimension {n - 1}",
            )
        if section == "trivial" and r == n + 1:
            return ContractionVerdict(
                True, True,
                f"blow-up of a smooth quadric in P^{2 * n + 1}",
                f"linear subvariety of dimension {n}",
            )
        return ContractionVerdict(
            True, False,
            "birational onto a cone over a quadric; a trivial summand rules out a smooth blow-up",
        )
    if tag in ("Type4a", "Type4b"):
        return ContractionVerdict(False, False, "never birational: positive-dimensional general fibres")
    if tag == "Type5":
        if n >= 3:
            return ContractionVerdict(False, False, f"fibre type, general fibre P^{n - 2}")
        t = bp.param("t")
        if r == t:
            return ContractionVerdict(True, True, f"blow-up of P^{r + 1}", LOCUS_NAME[t])
        return ContractionVerdict(
            True, False,
            f"birational; E has a trivial summand (r = {r} > t = {t}), so not a smooth blow-up",
        )
    if tag == "Type6":
        return ContractionVerdict(False, False, "fibre type, general fibre a smooth quadric")
    if tag == "SectionFstar":
        d, extra = bp.param("d"), bp.param("r_extra")
        smooth = d == 2 and extra == 0
        what = f"V({n}, {d})" if extra == 0 else f"the cone over V({n}, {d}) with a vertex of dimension {extra - 1}"
        return ContractionVerdict(
            True, smooth,
            f"blow-up of {what}" + ("" if d > 2 else ", a quadric"),
            f"L0, linear of dimension {n}" + ("" if extra == 0 else " joined with the vertex"),
        )
    raise UnknownTag(f"no contraction verdict for {tag}")


@dataclass(frozen=True)
class ConeReport:
    label: str
    nef: tuple[tuple[int, int], tuple[int, int]]
    eff: tuple[tuple[int, int], tuple[int, int]]
    c: Fraction
    c_computed: Fraction
    big: bool
    verdict: ContractionVerdict
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "bundle": self.label,
            "nef": [list(g) for g in self.nef],
            "eff": [list(g) for g in self.eff],
            "c": rational_str(self.c),
            "c_computed": rational_str(self.c_computed),
            "big": self.big,
            "verdict": self.verdict.to_json(),
            "flags": list(self.flags),
        }


def _ray(c: Fraction) -> tuple[int, int]:
    # xi - cH scaled to a primitive integer pair (coefficient of xi, coefficient of H)
    return (c.denominator, -c.numerator)


def cone_report(bp: BundlePresentation, a_max: int = 4) -> ConeReport:
    """Classes are (xi-coefficient, H-coefficient) pairs."""
    if bp.tag == "Custom":
        raise UnknownTag("cone reports cover catalog families only")
    c = table_c(bp)
    computed = cone_slope(bp, a_max)
    if computed != c:
        raise InternalRankContradiction(
            f"{bp.label}: section growth gives c = {rational_str(computed)}, table gives {rational_str(c)}"
        )
    flags = (TYPE_LABEL_FLAG,) if c == 0 else ()
    return ConeReport(
        label=bp.label,
        nef=((0, 1), (1, 0)),
        eff=((0, 1), _ray(c)),
        c=c,
        c_computed=computed,
        big=c > 0,
        verdict=contraction_verdict(bp),
        flags=flags,
    )


def fano_check(bp: BundlePresentation) -> tuple[bool, tuple[int, int]]:
    """-K = (n+1-c1) H + r xi; Fano exactly when both coefficients are positive."""
    coeffs = (bp.n + 1 - bp.c1, bp.rank)
    return bp.c1 <= bp.n, coeffs
