from fractions import Fraction
from itertools import product

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given, settings

from pbl.errors import BadInput, BadParams, BadT, NotOnHypersurface
from pbl.geometry import (
    LOCUS_DIMENSION,
    ProjPoint,
    cone_over,
    determinantal_locus,
    hyperplane_contains,
    l0_subspace,
    locus_point,
    projective_grid,
    smooth_at,
    smooth_scan,
    vnd_hypersurface,
)


def test_grid_has_one_point_per_class():
    pts = list(projective_grid(2, 2))
    assert len(pts) == len(set(pts))
    classes = {ProjPoint(v) for v in product(range(-2, 3), repeat=3) if any(v)}
    # primitive representatives reach every class with a representative in the box
    assert set(pts) == classes


def test_projpoint_scale_invariance():
    assert ProjPoint([1, 2, 3]) == ProjPoint([Fraction(-1, 2), -1, Fraction(-3, 2)])
    with pytest.raises(BadInput):
        ProjPoint([0, 0])


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 3)])
def test_vnd_gradient_matches_sympy(n, d):
    V = vnd_hypersurface(n, d)
    xs = sympy.symbols(f"x0:{2 * n + 2}")
    F = sum(xs[2 * i] ** (d - 1) * xs[2 * i + 1] for i in range(n + 1))
    grad = [sympy.diff(F, x) for x in xs]
    for p in projective_grid(2 * n + 1, 1):
        if not V.contains(p):
            continue
        subs = dict(zip(xs, p.coords))
        assert F.subs(subs) == 0
        sym_sing = all(g.subs(subs) == 0 for g in grad)
        assert smooth_at(V, p) == (not sym_sing)


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3)])
def test_smooth_scan(n, d):
    res = smooth_scan(n, d, 2)
    assert res["mismatches"] == []
    if d == 2:
        assert res["singular_points"] == 0
    else:
        assert res["singular_points"] == res["points_on_L0"] > 0


def test_cone_over_is_singular_along_vertex():
    V = cone_over(vnd_hypersurface(2, 2), 2)
    assert V.ambient == 7
    assert not smooth_at(V, ProjPoint([0] * 6 + [1, 0]))
    assert smooth_at(V, ProjPoint([1, 0, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(BadParams):
        cone_over(V, -1)


def test_smooth_at_off_hypersurface():
    with pytest.raises(NotOnHypersurface):
        smooth_at(vnd_hypersurface(2, 2), ProjPoint([1, 1, 0, 0, 0, 0]))


def test_l0_contains_hyperplanes_x_even():
    L0 = l0_subspace(2)
    assert L0.dim == 2
    assert hyperplane_contains([1, 0, 0, 0, 0, 0], L0)
    assert not hyperplane_contains([0, 1, 0, 0, 0, 0], L0)


@pytest.mark.parametrize("t", [2, 3, 4])
@given(params=st.lists(st.integers(-3, 3), min_size=5, max_size=5))
@settings(max_examples=40, deadline=None)
def test_parametrized_points_lie_on_smooth_locus(t, params):
    try:
        p = locus_point(t, params)
    except BadInput:
        return
    L = determinantal_locus(t)
    assert L.contains(p)
    assert L.smooth_at(p)


@pytest.mark.parametrize("t", [2, 3, 4])
def test_locus_dimension_via_sympy_jacobian(t):
    L = determinantal_locus(t)
    xs = sympy.symbols(f"x0:{t + 2}")
    M = sympy.Matrix([[xs[0], xs[1], xs[2]], [xs[t - 1], xs[t], xs[t + 1]]])
    minors = [M.extract([0, 1], list(c)).det() for c in ((1, 2), (0, 2), (0, 1))]
    J = sympy.Matrix([[sympy.diff(m, x) for x in xs] for m in minors])
    p = locus_point(t, [1, 2, 1, 1, 1])
    rank = J.subs(dict(zip(xs, p.coords))).rank()
    assert L.jacobian_rank(p) == rank
    assert t + 1 - rank == LOCUS_DIMENSION[t]


def test_locus_rejects_bad_t():
    with pytest.raises(BadT):
        determinantal_locus(5)
    with pytest.raises(BadInput):
        determinantal_locus(2).contains(ProjPoint([1, 0, 0]))
