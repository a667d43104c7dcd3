from fractions import Fraction

import numpy as np
import pytest

from twistcode.characters import ClassFunction
from twistcode.data import load_bundled
from twistcode.errors import PreconditionError
from twistcode.lie import haar_norm
from twistcode.tgroups import is_twisted_tgroup, is_unitary_tgroup, max_t, scan, weight_check


@pytest.fixture(scope="module")
def two_i():
    return load_bundled("2I")


@pytest.fixture(scope="module")
def sigma():
    return load_bundled("sigma360")


def _frame_potential(group, t, lam=None):
    # (1/|G|) sum_g |lam(g)|^2 |tr g|^{2t}, summed over elements numerically
    tr = np.trace(group.numeric, axis1=1, axis2=2)
    w = np.ones(group.order) if lam is None else np.array([abs(complex(lam.at(i))) ** 2 for i in range(group.order)])
    return float(np.sum(w * np.abs(tr) ** (2 * t)) / group.order)


def test_2i_is_a_5_group(two_i):
    assert is_unitary_tgroup(two_i.f, 5).verdict
    r = is_unitary_tgroup(two_i.f, 6)
    assert not r.verdict and r.first_violation.irrep == "13"
    assert max_t(two_i.f) == 5


def test_2i_twisted(two_i):
    chi3 = two_i.table["chi3"]
    assert is_twisted_tgroup(two_i.f, chi3, 2).verdict
    r = is_twisted_tgroup(two_i.f, chi3, 3)
    assert not r.verdict and (r.criterion1.lhs, r.criterion1.rhs) == (6, 5)
    assert r.first_violation.irrep == "7"
    assert max_t(two_i.f, chi3) == 2


def test_sigma_verdicts(sigma):
    assert max_t(sigma.f) == 3
    for lam in ("chi3", "chi4"):
        assert is_twisted_tgroup(sigma.f, sigma.table[lam], 1).verdict
        r = is_twisted_tgroup(sigma.f, sigma.table[lam], 2)
        assert not r.verdict and r.first_violation.irrep == "27"
        assert max_t(sigma.f, sigma.table[lam]) == 1


def test_t_zero_is_trivially_true(two_i):
    assert is_unitary_tgroup(two_i.f, 0).verdict


@pytest.mark.parametrize("name", ["2I", "sigma360"])
def test_criteria_agree_everywhere(name):
    b = load_bundled(name)
    for lam in b.table.names:
        for t in range(1, 5):
            r = is_twisted_tgroup(b.f, b.table[lam], t)
            assert r.criterion1.passed == r.criterion2_passed


@pytest.mark.parametrize("name", ["2I", "sigma360"])
def test_norm_matches_frame_potential(name):
    b = load_bundled(name)
    for lam in ("chi1", "chi3", "chi4"):
        for t in range(1, 4):
            r = is_twisted_tgroup(b.f, b.table[lam], t)
            assert abs(r.criterion1.lhs - _frame_potential(b.group, t, b.table[lam])) < 1e-6


@pytest.mark.parametrize("name", ["2I", "sigma360"])
def test_monotone_and_twisted_implies_plain(name):
    b = load_bundled(name)
    plain = [is_unitary_tgroup(b.f, t).verdict for t in range(1, 5)]
    for lam in b.table.names:
        v = [is_twisted_tgroup(b.f, b.table[lam], t).verdict for t in range(1, 5)]
        assert all(v[i] >= v[i + 1] for i in range(3))
        assert all(p or not x for p, x in zip(plain, v))


def test_trivial_twist_is_plain(two_i):
    for t in range(1, 7):
        assert is_twisted_tgroup(two_i.f, two_i.table["chi1"], t).verdict == is_unitary_tgroup(two_i.f, t).verdict


def test_weight_check(two_i):
    assert weight_check(two_i.table["chi1"]) == 1
    assert weight_check(two_i.table["chi3"]) == Fraction(1)
    reducible = two_i.table["chi2"] + two_i.table["chi3"]
    assert weight_check(reducible) == 2
    with pytest.raises(PreconditionError):
        is_twisted_tgroup(two_i.f, reducible, 1)


def test_scan_reports(two_i):
    reps = scan(two_i.f, two_i.table, "chi3")
    assert [r.verdict for r in reps] == [True, True, False]
    assert all(r.max_t == 2 for r in reps)
    d = reps[-1].to_dict()
    assert d["criterion1"] == {"lhs": 6, "rhs": haar_norm(2, 3), "pass": False}


def test_non_character_f_rejected(two_i):
    with pytest.raises(PreconditionError):
        is_unitary_tgroup(ClassFunction.constant(two_i.group, 1), 1)
