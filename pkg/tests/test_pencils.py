import json
import random
from itertools import combinations

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given, settings

from pbl.algebra import RatMatrix, mat_rank
from pbl.errors import BadInput, BadT, IrregularPencil, TooSmall
from pbl.pencils import (
    NAMING_FLAG,
    PencilPair,
    canonical_pencil,
    load_pencil,
    pencil_is_regular,
    pencil_normal_form,
    pencil_t,
    verify_normal_form,
)
from pbl.verify import random_conjugate, random_invertible


def sympy_regular(p: PencilPair) -> bool:
    # full column rank at every [u:v] <=> the 3x3 minors of uA + vB have no common root
    u, v = sympy.symbols("u v")
    M = sympy.Matrix(p.A.rows) * u + sympy.Matrix(p.B.rows) * v
    minors = [sympy.expand(M.extract(list(rows), [0, 1, 2]).det()) for rows in combinations(range(M.rows), 3)]
    minors = [m for m in minors if m != 0]
    if not minors:
        return False
    g = minors[0]
    for m in minors[1:]:
        g = sympy.gcd(g, m)
    return sympy.Poly(g, u, v).total_degree() == 0


@pytest.mark.parametrize("t,s", [(t, s) for t in (2, 3, 4) for s in range(t, 7)])
def test_canonical_pencil_is_regular_with_its_t(t, s):
    p = canonical_pencil(t, s)
    assert sympy_regular(p)
    assert pencil_t(p) == t


@pytest.mark.parametrize("t", [2, 3, 4])
def test_normal_form_of_conjugates(t):
    rng = random.Random(t)
    base = canonical_pencil(t, 5)
    for _ in range(10):
        p = random_conjugate(rng, base)
        nf = pencil_normal_form(p)
        assert nf.t == t
        assert all(ok for _, ok in verify_normal_form(p, nf))
        assert NAMING_FLAG in nf.flags


@given(st.integers(0, 10 ** 6), st.integers(3, 6))
@settings(max_examples=40, deadline=None)
def test_regularity_agrees_with_sympy(seed, rows):
    rng = random.Random(seed)
    A = RatMatrix([[rng.randint(-1, 1) for _ in range(3)] for _ in range(rows)])
    B = RatMatrix([[rng.randint(-1, 1) for _ in range(3)] for _ in range(rows)])
    p = PencilPair(A, B)
    assert pencil_is_regular(p) == sympy_regular(p)
    if pencil_is_regular(p):
        t = pencil_t(p)
        assert 2 <= t <= 4
        nf = pencil_normal_form(p)
        assert all(ok for _, ok in verify_normal_form(p, nf))


def test_irregular_pencils_rejected():
    A = canonical_pencil(2, 3).A
    with pytest.raises(IrregularPencil):
        pencil_normal_form(PencilPair(A, A))
    rng = random.Random(5)
    B = random_invertible(rng, 5) @ A
    D = RatMatrix([[2, 0, 0], [0, 3, 0], [0, 0, 2]])
    # u B D + v B has a kernel wherever u d_i + v = 0
    assert not pencil_is_regular(PencilPair(B @ D, B))


def test_bad_t_and_small_s():
    with pytest.raises(BadT):
        canonical_pencil(5, 6)
    with pytest.raises(TooSmall):
        canonical_pencil(4, 3)


def test_shape_mismatch():
    with pytest.raises(BadInput):
        PencilPair(RatMatrix([[1, 0, 0]] * 3), RatMatrix([[1, 0, 0]] * 4))


def test_pencil_json_round_trip(tmp_path):
    p = random_conjugate(random.Random(2), canonical_pencil(3, 4))
    path = tmp_path / "p.json"
    path.write_text(json.dumps(p.to_json()))
    q = load_pencil(str(path))
    assert q == p
    assert mat_rank(q.A) == 3
    path.write_text("{not json")
    with pytest.raises(BadInput):
        load_pencil(str(path))
