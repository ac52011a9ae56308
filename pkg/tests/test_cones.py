from fractions import Fraction

import pytest

from pbl.bundles import catalog_bundle, custom_split
from pbl.cones import TYPE_LABEL_FLAG, cone_report, contraction_verdict, fano_check, table_c
from pbl.errors import UnknownTag


@pytest.mark.parametrize(
    "tag,n,r,params,c",
    [
        ("type1", 2, 3, {}, Fraction(2)),
        ("type2", 2, 3, {}, Fraction(1)),
        ("type3", 2, 2, {"section": "tangent"}, Fraction(1)),
        ("type3", 2, 3, {"section": "trivial"}, Fraction(1)),
        ("type5", 2, None, {"t": 2}, Fraction(1, 2)),
        ("type5", 2, None, {"t": 4}, Fraction(1, 2)),
        ("type4a", 3, 3, {}, Fraction(0)),
        ("type6", 3, 3, {}, Fraction(0)),
    ],
)
def test_cone_report(tag, n, r, params, c):
    rep = cone_report(catalog_bundle(tag, n, r, **params))
    assert rep.c == rep.c_computed == c
    assert rep.big == (c > 0)
    assert rep.nef == ((0, 1), (1, 0))
    # boundary ray is xi - cH up to positive scaling
    xi, h = rep.eff[1]
    assert xi > 0 and Fraction(-h, xi) == c
    assert (TYPE_LABEL_FLAG in rep.flags) == (c == 0)


def test_type3_verdicts():
    tangent = contraction_verdict(catalog_bundle("type3", 2, 2, section="tangent"))
    trivial = contraction_verdict(catalog_bundle("type3", 2, 3, section="trivial"))
    assert tangent.smooth_blowup and "P^4" in tangent.description
    assert trivial.smooth_blowup and "P^5" in trivial.description


def test_non_birational_families():
    assert not contraction_verdict(catalog_bundle("type4a", 3, 3)).birational
    v = contraction_verdict(catalog_bundle("type6", 2, 2))
    assert not v.birational and "smooth quadric" in v.description


@pytest.mark.parametrize("t", [2, 3, 4])
def test_type5_blowup_center(t):
    v = contraction_verdict(catalog_bundle("type5", 2, t, t=t))
    assert v.smooth_blowup and v.center


def test_fano_examples():
    assert fano_check(catalog_bundle("type1", 2, 2)) == (True, (1, 2))
    assert fano_check(custom_split(2, [3, 0])) == (False, (0, 2))
    assert fano_check(catalog_bundle("type6", 3, 3)) == (True, (2, 3))


def test_custom_has_no_table_entry():
    with pytest.raises(UnknownTag):
        cone_report(custom_split(2, [1, 1]))
    with pytest.raises(UnknownTag):
        table_c(custom_split(2, [1]))
