"""Integer bookkeeping for drums: catalog, canonical-class identity, flip/flop verdicts, blow-up dimensions.

A drum is recorded by the integers of its two projective-bundle structures
p_-: Y -> Y_- and p_+: Y -> Y_+, with E_± = (p_±)_* L_∓ and k_± = dim Y - dim Y_±.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from math import comb

from .cohomology import h0_tangent_twist, bott_h
from .errors import AsymmetricUnknown, InvalidDrum

CATALOG_VERSION = 1

# The item naming the same symplectic Grassmannian as both centre and base.
SG_ITEM_FLAG = (
    "ambiguous source: the blow-up along SG(r+1,2m) is stated to be a bundle over SG(r+1,2m); "
    "integers follow the mirrored datum of the other SG item"
)


@dataclass(frozen=True)
class DrumDatum:
    id: str
    family: str
    Y: str
    Y_minus: str
    Y_plus: str
    X: str
    dim_Y: int
    dim_Y_minus: int
    dim_Y_plus: int
    dim_X: int
    deg_E_minus: int
    deg_E_plus: int
    index_Y_minus: int
    index_Y_plus: int
    index_X: int
    h0_L_minus: int
    h0_L_plus: int
    h0_X: int
    base_bundle: str | None = None
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        ints = ("dim_Y", "dim_Y_minus", "dim_Y_plus", "dim_X", "index_Y_minus", "index_Y_plus",
                "index_X", "h0_L_minus", "h0_L_plus", "h0_X")
        for name in ints:
            if getattr(self, name) < 0:
                raise InvalidDrum(f"{self.id}: {name} must be nonnegative")
        if self.k_minus < 1 or self.k_plus < 1:
            raise InvalidDrum(f"{self.id}: need k_- >= 1 and k_+ >= 1, got {self.k_minus}, {self.k_plus}")
        if self.dim_X != self.dim_Y + 1:
            raise InvalidDrum(f"{self.id}: dim X must be dim Y + 1")

    @property
    def k_minus(self) -> int:
        return self.dim_Y - self.dim_Y_minus

    @property
    def k_plus(self) -> int:
        return self.dim_Y - self.dim_Y_plus

    def mirrored(self) -> "DrumDatum":
        """Swap the roles of the two bundle structures."""
        return DrumDatum(
            id=self.id + "~mirror", family=self.family, Y=self.Y,
            Y_minus=self.Y_plus, Y_plus=self.Y_minus, X=self.X,
            dim_Y=self.dim_Y, dim_Y_minus=self.dim_Y_plus, dim_Y_plus=self.dim_Y_minus, dim_X=self.dim_X,
            deg_E_minus=self.deg_E_plus, deg_E_plus=self.deg_E_minus,
            index_Y_minus=self.index_Y_plus, index_Y_plus=self.index_Y_minus, index_X=self.index_X,
            h0_L_minus=self.h0_L_plus, h0_L_plus=self.h0_L_minus, h0_X=self.h0_X,
            base_bundle=None, flags=self.flags,
        )

    def to_json(self) -> dict:
        d = asdict(self)
        d["flags"] = list(self.flags)
        d["k_minus"] = self.k_minus
        d["k_plus"] = self.k_plus
        return d

    @classmethod
    def from_json(cls, data: dict) -> "DrumDatum":
        data = {k: v for k, v in data.items() if k not in ("k_minus", "k_plus")}
        data["flags"] = tuple(data.get("flags", ()))
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidDrum(f"malformed drum record: {exc}") from exc


# standard dimension, index and Pluecker h0 formulas

def dim_gr(k: int, N: int) -> int:
    return k * (N - k)


def dim_og_max(m: int) -> int:
    """dim OG(m, 2m+1)."""
    return m * (m + 1) // 2


def dim_sg(k: int, m: int) -> int:
    """dim SG(k, 2m)."""
    return k * (4 * m - 3 * k + 1) // 2


def h0_sg(k: int, m: int) -> int:
    return comb(2 * m, k) - (comb(2 * m, k - 2) if k >= 2 else 0)


def _tangent_drum(n: int) -> DrumDatum:
    return DrumDatum(
        id=f"PT-P{n}", family="tangent", Y=f"P(T_P{n})", Y_minus=f"P{n}", Y_plus=f"P{n}", X=f"Q{2 * n}",
        dim_Y=2 * n - 1, dim_Y_minus=n, dim_Y_plus=n, dim_X=2 * n,
        deg_E_minus=1, deg_E_plus=1,  # c1(T(-1)) on both sides
        index_Y_minus=n + 1, index_Y_plus=n + 1, index_X=2 * n,
        h0_L_minus=n + 1, h0_L_plus=n + 1, h0_X=2 * n + 2,
        base_bundle="T(-1)",
    )


def _omega_drum(n: int) -> DrumDatum:
    # E_- = Omega(2) on P^n, E_+ = dual tautological subbundle on Gr(2, n+1)
    return DrumDatum(
        id=f"POmega-P{n}", family="cotangent", Y=f"P(Omega_P{n})", Y_minus=f"P{n}",
        Y_plus=f"Gr(2,{n + 1})", X=f"Gr(2,{n + 2})",
        dim_Y=2 * n - 1, dim_Y_minus=n, dim_Y_plus=dim_gr(2, n + 1), dim_X=dim_gr(2, n + 2),
        deg_E_minus=n - 1, deg_E_plus=1,
        index_Y_minus=n + 1, index_Y_plus=n + 1, index_X=n + 2,
        h0_L_minus=n + 1, h0_L_plus=comb(n + 1, 2), h0_X=comb(n + 2, 2),
        base_bundle="Omega(2)",
    )


def _gr_drum(r: int, m: int, item: str) -> DrumDatum:
    """Flags of (r, r+1)-planes in k^(m+1); drum Gr(r+1, m+2)."""
    small = dict(name=f"Gr({r},{m + 1})", dim=dim_gr(r, m + 1), h0=comb(m + 1, r), deg=m - r)
    big = dict(name=f"Gr({r + 1},{m + 1})", dim=dim_gr(r + 1, m + 1), h0=comb(m + 1, r + 1), deg=r)
    # item 1.1 blows up Gr(r, m+1) and fibres over Gr(r+1, m+1); item 1.2 is the reverse
    minus, plus = (big, small) if item == "1.1" else (small, big)
    return DrumDatum(
        id=f"Gr-{item}-r{r}-m{m}", family="grassmannian", Y=f"Fl({r},{r + 1};{m + 1})",
        Y_minus=minus["name"], Y_plus=plus["name"], X=f"Gr({r + 1},{m + 2})",
        dim_Y=dim_gr(r, m + 1) + m - r, dim_Y_minus=minus["dim"], dim_Y_plus=plus["dim"],
        dim_X=dim_gr(r + 1, m + 2),
        deg_E_minus=minus["deg"], deg_E_plus=plus["deg"],
        index_Y_minus=m + 1, index_Y_plus=m + 1, index_X=m + 2,
        h0_L_minus=minus["h0"], h0_L_plus=plus["h0"], h0_X=comb(m + 2, r + 1),
    )


def _og_drum(m: int) -> DrumDatum:
    # both sides are spinor varieties OG(m-1, 2m-1); E_± has c1 = m - 2
    base = f"OG({m - 1},{2 * m - 1})"
    return DrumDatum(
        id=f"OG-m{m}", family="orthogonal", Y=f"OG({m - 1},{m};{2 * m})",
        Y_minus=base, Y_plus=f"OG+({m},{2 * m})", X=f"OG({m},{2 * m + 1})",
        dim_Y=dim_og_max(m) - 1, dim_Y_minus=dim_og_max(m - 1), dim_Y_plus=dim_og_max(m - 1),
        dim_X=dim_og_max(m),
        deg_E_minus=m - 2, deg_E_plus=m - 2,
        index_Y_minus=2 * (m - 1), index_Y_plus=2 * (m - 1), index_X=2 * m,
        h0_L_minus=2 ** (m - 1), h0_L_plus=2 ** (m - 1), h0_X=2 ** m,
    )


def _sg_drum(r: int, m: int, item: str) -> DrumDatum:
    """Isotropic (r, r+1)-flags in k^(2m); drum Gr_w(r+1, 2m+1)."""
    lo = dict(name=f"SG({r},{2 * m})", dim=dim_sg(r, m), index=2 * m - r + 1, h0=h0_sg(r, m),
              deg=2 * m - 2 * r)
    hi = dict(name=f"SG({r + 1},{2 * m})", dim=dim_sg(r + 1, m), index=2 * m - r, h0=h0_sg(r + 1, m), deg=r)
    flags: tuple[str, ...] = ()
    if item == "3.1":
        minus, plus = hi, lo
        names = (hi["name"], lo["name"])
    else:
        minus, plus = lo, hi
        # recorded as printed: centre and base carry the same name
        names = (hi["name"], hi["name"])
        flags = (SG_ITEM_FLAG,)
    return DrumDatum(
        id=f"SG-{item}-r{r}-m{m}", family="symplectic", Y=f"SG({r},{r + 1};{2 * m})",
        Y_minus=names[0], Y_plus=names[1], X=f"Gr_w({r + 1},{2 * m + 1})",
        dim_Y=dim_sg(r + 1, m) + r, dim_Y_minus=minus["dim"], dim_Y_plus=plus["dim"],
        dim_X=(r + 1) * (4 * m - 3 * r) // 2,
        deg_E_minus=minus["deg"], deg_E_plus=plus["deg"],
        index_Y_minus=minus["index"], index_Y_plus=plus["index"], index_X=2 * m + 1 - r,
        h0_L_minus=minus["h0"], h0_L_plus=plus["h0"],
        h0_X=comb(2 * m + 1, r + 1) - (comb(2 * m + 1, r - 1) if r >= 1 else 0),
        flags=flags,
    )


def _segre_drum(m: int, n: int) -> DrumDatum:
    """Y = P^m x P^n, drum P^(m+n+1); the larger factor is Y_-."""
    return DrumDatum(
        id=f"Segre-P{m}xP{n}", family="segre", Y=f"P{m} x P{n}", Y_minus=f"P{m}", Y_plus=f"P{n}",
        X=f"P{m + n + 1}",
        dim_Y=m + n, dim_Y_minus=m, dim_Y_plus=n, dim_X=m + n + 1,
        deg_E_minus=0, deg_E_plus=0,
        index_Y_minus=m + 1, index_Y_plus=n + 1, index_X=m + n + 2,
        h0_L_minus=m + 1, h0_L_plus=n + 1, h0_X=m + n + 2,
        base_bundle="O^(n+1)",
    )


def build_catalog() -> list[DrumDatum]:
    """Materialize every family from the formulas; the shipped JSON is this list."""
    out = [_tangent_drum(n) for n in range(2, 6)]
    out += [_omega_drum(n) for n in range(3, 6)]
    for m in range(3, 6):
        for r in range(1, m):
            out += [_gr_drum(r, m, "1.1"), _gr_drum(r, m, "1.2")]
    out += [_og_drum(m) for m in range(3, 6)]
    for m in range(2, 6):
        for r in range(1, m):
            out += [_sg_drum(r, m, "3.1"), _sg_drum(r, m, "3.2")]
    out += [_segre_drum(m, n) for m in range(1, 5) for n in range(1, m + 1)]
    return out


def catalog_json() -> str:
    doc = {"version": CATALOG_VERSION, "entries": [d.to_json() for d in build_catalog()]}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def drum_catalog() -> list[DrumDatum]:
    text = resources.files("pbl").joinpath("data/drum_catalog.json").read_text(encoding="utf-8")
    doc = json.loads(text)
    if doc.get("version") != CATALOG_VERSION:
        raise InvalidDrum(f"drum catalog version {doc.get('version')} is not {CATALOG_VERSION}")
    return [DrumDatum.from_json(e) for e in doc["entries"]]


def drum_by_id(drum_id: str) -> DrumDatum:
    for d in drum_catalog():
        if d.id == drum_id:
            return d
    raise InvalidDrum(f"no drum with id {drum_id!r}")


@dataclass(frozen=True)
class DegreeIdentityReport:
    printed: tuple[int, int]
    mirrored: tuple[int, int]
    display_reading: tuple[int, int]

    @property
    def printed_ok(self) -> bool:
        return self.printed[0] == self.printed[1]

    @property
    def mirrored_ok(self) -> bool:
        return self.mirrored[0] == self.mirrored[1]

    @property
    def passed(self) -> bool:
        return self.printed_ok or self.mirrored_ok

    def to_json(self) -> dict:
        return {
            "printed": {"lhs": self.printed[0], "rhs": self.printed[1], "holds": self.printed_ok},
            "mirrored": {"lhs": self.mirrored[0], "rhs": self.mirrored[1], "holds": self.mirrored_ok},
            "display_reading": {
                "lhs": self.display_reading[0], "rhs": self.display_reading[1],
                "holds": self.display_reading[0] == self.display_reading[1],
            },
            "pass": self.passed,
        }


def check_degree_identity(d: DrumDatum) -> DegreeIdentityReport:
    """deg E_- - index Y_- = -(k_+ + 1), its +/- mirror, and the deg E_+ - index Y_- reading."""
    return DegreeIdentityReport(
        printed=(d.deg_E_minus - d.index_Y_minus, -(d.k_plus + 1)),
        mirrored=(d.deg_E_plus - d.index_Y_plus, -(d.k_minus + 1)),
        display_reading=(d.deg_E_plus - d.index_Y_minus, -(d.k_plus + 1)),
    )


@dataclass(frozen=True)
class FlipVerdict:
    kind: str
    degKminus: int
    degKplus: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "degKminus": self.degKminus, "degKplus": self.degKplus}


def flip_classify(d: DrumDatum) -> FlipVerdict:
    if d.dim_Y_minus < d.dim_Y_plus:
        raise AsymmetricUnknown(f"{d.id}: dim Y_- < dim Y_+; classify the mirrored drum instead")
    deg = d.dim_Y_plus - d.dim_Y_minus
    return FlipVerdict("Flip" if deg else "Flop", deg, -deg)


def blowup_dimension_checks(d: DrumDatum) -> list[tuple[str, int, int]]:
    """(label, lhs, rhs) rows; all must be equal."""
    return [
        ("dim(H_s ∩ Y_+) + k_+ = dim Y - 1", (d.dim_Y_plus - 1) + d.k_plus, d.dim_Y - 1),
        ("length of the contracted ray = k_+", d.k_plus, d.dim_Y - d.dim_Y_plus),
        ("codim Y_+ in X = k_+ + 1", d.dim_X - d.dim_Y_plus, d.k_plus + 1),
        ("index X = k_- + k_+ + 2", d.index_X, d.k_minus + d.k_plus + 2),
        ("h0(X) = h0(L_-) + h0(L_+)", d.h0_X, d.h0_L_minus + d.h0_L_plus),
    ]


def h0_cross_check(d: DrumDatum) -> tuple[int, int] | None:
    """(h0(Y_+, L_+), h0(P^n, E_-)) when Y_- is projective space with a known E_-."""
    if d.base_bundle is None:
        return None
    n = d.dim_Y_minus
    if d.base_bundle == "T(-1)":
        return d.h0_L_plus, h0_tangent_twist(n, -1)
    if d.base_bundle == "Omega(2)":
        return d.h0_L_plus, bott_h(n, 1, 0, 2)
    if d.base_bundle == "O^(n+1)":
        return d.h0_L_plus, d.k_minus + 1
    return None
