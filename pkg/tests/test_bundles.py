import json
import random
from itertools import product

import pytest
import sympy

from pbl.bundles import (
    BundlePresentation,
    catalog_bundle,
    custom_split,
    fiber_over,
    image_equations,
    image_membership,
    incidence_model,
    nowhere_vanishing_section,
    standard_instances,
    type5_stacked_rank,
)
from pbl.errors import BadInput, BadParams, UnknownTag
from pbl.geometry import ProjPoint, determinantal_locus, projective_grid
from pbl.pencils import canonical_pencil


def test_type1_is_split_with_twists_2_0_0():
    bp = catalog_bundle("type1", 2, 3)
    assert bp.twists == (2, 0, 0) and not bp.relations
    assert (bp.rank, bp.c1) == (3, 2)


def test_type3_presentation_has_euler_and_section_relations():
    bp = catalog_bundle("type3", 2, 2, section="tangent")
    assert bp.twists == (1, 0, 0, 0)
    assert len(bp.relations) == 2
    assert (bp.rank, bp.c1) == (2, 2)


def test_type5_relations_follow_the_pencil():
    bp = catalog_bundle("type5", 2, None, t=2)
    p = canonical_pencil(2, 2)
    assert bp.param("A") is not None
    x = [3, 5, 7, 11]
    # stacked rows x^T A, x^T B
    rows = [p.A.transpose().apply(x), p.B.transpose().apply(x)]
    assert type5_stacked_rank(bp, x) == sympy.Matrix(rows).rank()


@pytest.mark.parametrize("bp", standard_instances(), ids=lambda b: b.label)
def test_json_round_trip(bp):
    again = BundlePresentation.from_json(json.loads(json.dumps(bp.to_json())))
    assert again == bp
    assert again.label == bp.label


def test_unknown_tag_and_bad_params():
    with pytest.raises(UnknownTag):
        catalog_bundle("type9", 2)
    with pytest.raises(BadParams):
        catalog_bundle("sectionfstar", 2, 0, d=1)


@pytest.mark.parametrize("t", [2, 3, 4])
def test_type5_fiber_dimension_is_n_minus_stacked_rank(t):
    bp = catalog_bundle("type5", 2, None, t=t)
    p = canonical_pencil(t, t)
    L = determinantal_locus(t)
    AT, BT = sympy.Matrix(p.A.rows).T, sympy.Matrix(p.B.rows).T
    for x in projective_grid(t + 1, 1):
        xv = sympy.Matrix(x.coords)
        rank = sympy.Matrix.vstack((AT * xv).T, (BT * xv).T).rank()
        fib = fiber_over(bp, x)
        assert fib.dimension == 2 - rank
        assert (fib.dimension >= 1) == L.contains(x)


def test_fiber_examples():
    bp = catalog_bundle("type5", 2, None, t=2)
    f = fiber_over(bp, [1, 0, 0, 0])
    assert (f.description, f.dimension) == ("LinearPk", 1)
    # on the twisted cubic (s, u) = (1, 1)
    assert fiber_over(bp, [1, 1, 1, 1]).dimension == 1
    g = fiber_over(bp, [1, 0, 0, 1])
    assert g.description == "Point"
    assert g.alpha is not None
    fs = catalog_bundle("sectionfstar", 2, 0, d=2)
    assert fiber_over(fs, [0, 1, 0, 0, 0, 0]).description == "LinearPk"


def _cv(x, d):
    return sum(x[2 * i] ** (d - 1) * x[2 * i + 1] for i in range(len(x) // 2))


@pytest.mark.parametrize("n,d,r", [(2, 2, 0), (2, 3, 0), (2, 2, 1)])
def test_image_is_the_cone_equation(n, d, r):
    bp = catalog_bundle("sectionfstar", n, r, d=d)
    rng = random.Random(n * 100 + d * 10 + r)
    N = 2 * n + 1 + r
    for _ in range(60):
        x = [rng.randint(-2, 2) for _ in range(N + 1)]
        if rng.random() < 0.5:
            # push onto C(V) by solving for x1
            x[0] = 1
            x[1] = -_cv(x[2:2 * n + 2], d)
        if not any(x):
            continue
        on_cv = _cv(x[:2 * n + 2], d) == 0
        assert image_membership(bp, x) == on_cv
        assert (not fiber_over(bp, x).empty) == on_cv


def test_image_equation_examples():
    fs = catalog_bundle("sectionfstar", 2, 0, d=2)
    assert image_membership(fs, [0, 1, 0, 0, 0, 0])
    assert not image_membership(fs, [1, 1, 0, 0, 0, 0])
    assert len(image_equations(fs)) >= 1
    f3 = catalog_bundle("sectionfstar", 2, 1, d=3)
    assert image_membership(f3, [1, -1, 1, 1, 0, 5, 7])


def test_incidence_models_are_cached_and_typed():
    bp = catalog_bundle("type6", 2, 2)
    assert incidence_model(bp) is incidence_model(bp)


def _sign_enumeration(x, d):
    # y_{2i+1} runs over all (d-1)-th roots of x_{2i+1}; exact via minimal polynomials
    z = sympy.symbols("z")
    n1 = len(x) // 2
    roots = [sympy.Poly(z ** (d - 1) - x[2 * i + 1], z).all_roots() for i in range(n1)]
    for choice in product(*roots):
        val = sympy.nsimplify(sum(x[2 * i] * choice[i] for i in range(n1)))
        if sympy.minimal_polynomial(val, z) == z:
            return False
    return True


def test_nowhere_vanishing_examples():
    assert nowhere_vanishing_section(2, 2, [1, 1, 0, 0, 0, 0])
    assert not nowhere_vanishing_section(2, 2, [1, 0, 0, 1, 0, 0])
    assert nowhere_vanishing_section(3, 2, [1, 1, 0, 0, 0, 1])


def test_nowhere_vanishing_d3_against_root_enumeration():
    rng = random.Random(7)
    for k in range(25):
        x = [rng.randint(-2, 2) for _ in range(6)]
        for i in range(3):
            x[2 * i + 1] = rng.choice([0, 1, 2, 3, 4, -1])
        if k % 3 == 0:
            # 1*sqrt(4) - 2*sqrt(1) = 0 for one sign choice
            x = [1, 4, -2, 1, 0, rng.randint(-3, 3)]
        if not any(x):
            continue
        assert nowhere_vanishing_section(3, 2, x) == _sign_enumeration(x, 3)


def test_nowhere_vanishing_input_checks():
    with pytest.raises(BadInput):
        nowhere_vanishing_section(2, 2, [1, 2, 3])
    with pytest.raises(BadInput):
        nowhere_vanishing_section(2, 2, [0] * 6)


def test_custom_split_and_validation():
    bp = custom_split(2, [3, 0])
    assert bp.split and (bp.rank, bp.c1) == (2, 3)
    with pytest.raises(BadInput):
        ProjPoint([0, 0, 0])
