import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcode.data import load_bundled
from twistcode.errors import ValidationError
from twistcode.lie import (
    E_t,
    UIrrep,
    branch,
    decompose_FFstar_power,
    eigen_exponents,
    eigenvalues_as_roots_of_unity,
    ffstar_character,
    haar_norm,
    partitions,
    restrict,
    schur_polynomial,
)
from twistcode.cyclotomic import zeta


def _longest_decreasing(perm):
    best = [1] * len(perm)
    for i in range(len(perm)):
        for j in range(i):
            if perm[j] > perm[i]:
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


@pytest.mark.parametrize("q,t", [(2, t) for t in range(1, 7)] + [(3, t) for t in range(1, 7)])
def test_haar_norm_counts_permutations(q, t):
    # RSK: permutations of t whose longest decreasing run is <= q
    oracle = sum(1 for p in itertools.permutations(range(t)) if _longest_decreasing(p) <= q)
    assert haar_norm(q, t) == oracle


def test_haar_norm_values():
    assert [haar_norm(2, t) for t in range(1, 6)] == [1, 2, 5, 14, 42]
    assert haar_norm(3, 3) == 6


def _ssyt_monomials(shape, q):
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    out = Counter()
    for fill in itertools.product(range(q), repeat=len(cells)):
        tab = dict(zip(cells, fill))
        if all(tab[(i, j)] <= tab[(i, j + 1)] for (i, j) in cells if (i, j + 1) in tab) and all(
            tab[(i, j)] < tab[(i + 1, j)] for (i, j) in cells if (i + 1, j) in tab
        ):
            out[tuple(fill.count(k) for k in range(q))] += 1
    return dict(out)


@pytest.mark.parametrize("shape", [(1,), (2,), (2, 1), (3, 1), (2, 2), (3, 2, 1), (4, 2), (2, 1, 1)])
@pytest.mark.parametrize("q", [2, 3])
def test_schur_matches_tableaux(shape, q):
    assert schur_polynomial(shape, q).terms == _ssyt_monomials(shape, q)


def _weyl_decompose(q, t):
    # multiply by the Vandermonde determinant; strictly decreasing monomials lam + delta carry m_lam
    poly = ffstar_character(q, t)
    delta = tuple(range(q - 1, -1, -1))
    out = Counter()
    for perm in itertools.permutations(range(q)):
        sign = np.linalg.det(np.eye(q)[list(perm)])
        for key, v in poly.terms.items():
            out[tuple(key[i] + delta[perm[i]] for i in range(q))] += int(round(sign)) * v
    return {tuple(e - d for e, d in zip(k, delta)): v for k, v in out.items()
            if v and all(a > b for a, b in zip(k, k[1:]))}


@pytest.mark.parametrize("q,t", [(2, t) for t in range(1, 7)] + [(3, t) for t in range(1, 5)])
def test_decomposition_matches_weyl_oracle(q, t):
    got = {r.weight: m for r, m in decompose_FFstar_power(q, t)}
    assert got == _weyl_decompose(q, t)


@pytest.mark.parametrize("q,t", [(2, t) for t in range(1, 7)] + [(3, t) for t in range(1, 5)])
def test_decomposition_invariants(q, t):
    dec = decompose_FFstar_power(q, t)
    assert sum(m * r.dimension for r, m in dec) == q ** (2 * t)
    assert dict((r.display_name, m) for r, m in dec)["1"] == haar_norm(q, t)
    assert sum(m * m for _, m in dec) == haar_norm(q, 2 * t)
    assert all(m > 0 for _, m in dec)


def test_sum_of_squares_is_not_haar_norm_of_t():
    # the identity holds with 2t, not t
    assert sum(m * m for _, m in decompose_FFstar_power(2, 2)) == 14 != haar_norm(2, 2)


@pytest.mark.parametrize("t", range(1, 7))
def test_u2_labels(t):
    assert [r.display_name for r in E_t(2, t)] == [str(2 * k + 1) for k in range(t + 1)]


@pytest.mark.parametrize("q", [2, 3])
def test_adjoint(q):
    dec = decompose_FFstar_power(q, 1)
    assert sorted(r.dimension for r, _ in dec) == [1, q * q - 1]


def test_known_decompositions():
    assert {r.display_name: m for r, m in decompose_FFstar_power(3, 2)} == {
        "1": 2, "8": 4, "10": 1, "10bar": 1, "27": 1}
    assert {r.display_name: m for r, m in decompose_FFstar_power(2, 3)} == {"1": 5, "3": 9, "5": 5, "7": 1}


def test_out_of_range():
    with pytest.raises(ValidationError):
        decompose_FFstar_power(4, 1)
    with pytest.raises(ValidationError):
        decompose_FFstar_power(2, 7)


weights = st.lists(st.integers(-4, 4), min_size=2, max_size=3).map(lambda w: tuple(sorted(w, reverse=True)))


@given(weights)
@settings(max_examples=80, deadline=None)
def test_conjugate_involution(w):
    r = UIrrep.from_weight(w)
    assert r.conjugate().conjugate() == r
    assert r.conjugate().dimension == r.dimension


@given(weights)
@settings(max_examples=80, deadline=None)
def test_dimension_matches_weyl_product(w):
    r = UIrrep.from_weight(w)
    q = len(w)
    num = np.prod([w[i] - w[j] + j - i for i in range(q) for j in range(i + 1, q)])
    den = np.prod([j - i for i in range(q) for j in range(i + 1, q)])
    assert r.dimension == num // den == r.character().at_identity()


def test_conjugate_pair_names():
    ten = UIrrep.from_weight((2, -1, -1))
    assert ten.display_name == "10" and ten.conjugate().display_name == "10bar"
    assert UIrrep.from_weight((2, 0, -2)).display_name == "27"


def test_non_dominant_weight_rejected():
    with pytest.raises(ValidationError):
        UIrrep.from_weight((0, 1))


def test_eigenvalues():
    g = load_bundled("2I").group
    assert eigen_exponents(g, 0) == (1, (0, 0))
    minus = next(i for i in range(g.order) if g.order_map[i] == 2)
    assert eigen_exponents(g, minus) == (2, (1, 1))
    c5 = next(c for c, t in enumerate(g.class_traces) if t == zeta(5) + zeta(5, 4) and g.class_orders[c] == 5)
    vals = eigenvalues_as_roots_of_unity(g, g.class_reps[c5])
    assert sorted(str(v) for v in vals) == sorted([str(zeta(5)), str(zeta(5, 4))])


@pytest.mark.parametrize("name", ["2I", "sigma360"])
def test_restriction_matches_numeric_eigenvalues(name):
    b = load_bundled(name)
    g = b.group
    q = g.degree
    for r, _ in decompose_FFstar_power(q, 2):
        down = restrict(r, g)
        poly = r.character()
        for c, rep in enumerate(g.class_reps):
            ev = np.linalg.eigvals(g.numeric[rep])
            val = sum(v * np.prod(ev ** np.array(k)) for k, v in poly.terms.items())
            assert abs(val - complex(down[c])) < 1e-8


def test_branching_rows():
    b = load_bundled("2I")
    assert dict(branch(UIrrep.from_weight((3, -3)), b.group, b.table)) == {"chi4": 1, "chi6": 1}
    assert dict(branch(UIrrep.trivial(2), b.group, b.table)) == {"chi1": 1}
    s = load_bundled("sigma360")
    assert dict(branch(UIrrep.from_weight((1, 0, -1)), s.group, s.table)) == {"chi10": 1}
    assert dict(branch(UIrrep.from_weight((4, 0, -4)), s.group, s.table)) == {
        "chi1": 1, "chi6": 2, "chi7": 2, "chi10": 3, "chi11": 3, "chi12": 4, "chi15": 2}


@pytest.mark.parametrize("q", [2, 3])
def test_partitions_count(q):
    assert len(list(partitions(6))) == 11
    assert all(len(p) <= q for p in partitions(6, q))
