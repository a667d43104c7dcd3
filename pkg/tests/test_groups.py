from collections import Counter

import numpy as np
import pytest

from twistcode.cyclotomic import Cyclotomic, zeta
from twistcode.data import load_bundled
from twistcode.errors import CapExceededError, ValidationError
from twistcode.groups import enumerate_group


@pytest.fixture(scope="module")
def two_i():
    return load_bundled("2I").group


@pytest.fixture(scope="module")
def sigma():
    return load_bundled("sigma360").group


def test_orders(two_i, sigma):
    assert two_i.order == 120
    assert sigma.order == 1080


def test_class_sizes(two_i, sigma):
    assert Counter(two_i.class_sizes) == Counter([1, 12, 12, 20, 30, 20, 12, 1, 12])
    assert Counter(sigma.class_sizes) == Counter([1, 1, 1, 45, 45, 45, 120, 120, 90, 90, 90, 72, 72, 72, 72, 72, 72])


def test_canonical_order_starts_with_identity(two_i):
    assert two_i.class_sizes[0] == 1 and two_i.class_orders[0] == 1


def test_closure_and_inverses_numerically(two_i):
    mats = two_i.numeric
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, two_i.order, size=(50, 2)):
        assert np.allclose(mats[a] @ mats[b], mats[two_i.multiply(a, b)])
    for a in range(two_i.order):
        assert np.allclose(mats[a] @ mats[two_i.inverse_map[a]], np.eye(2))


def test_elements_distinct_numerically(sigma):
    flat = np.round(sigma.numeric.reshape(sigma.order, -1), 8) + 0.0
    assert len({row.tobytes() for row in flat}) == sigma.order


def _key(m):
    return (np.round(m, 8) + 0.0).tobytes()


def test_classes_are_conjugation_orbits(two_i):
    mats = two_i.numeric
    for c, members in enumerate(two_i.classes):
        rep = mats[two_i.class_reps[c]]
        conj = {_key(m @ rep @ m.conj().T) for m in mats}
        assert len(conj) == two_i.class_sizes[c]
        assert all(_key(mats[i]) in conj for i in members)


def test_words_rebuild_elements(two_i):
    gens = two_i.numeric[two_i.generators]
    for i in range(0, two_i.order, 7):
        m = np.eye(2)
        for j in two_i.word(i):
            m = m @ gens[j]
        assert np.allclose(m, two_i.numeric[i])


def test_cyclic_group_from_one_generator():
    g = enumerate_group([[[zeta(7), 0], [0, zeta(7, 6)]]])
    assert g.order == 7 and g.num_classes == 7


def test_cap_exceeded():
    with pytest.raises(CapExceededError):
        enumerate_group([[[zeta(12), 0], [0, 1]]], cap=5)


def test_non_unitary_generator_rejected():
    with pytest.raises(ValidationError):
        enumerate_group([[[Cyclotomic.rational(2), 0], [0, 1]]])


def test_generator_order_does_not_matter():
    a = [[0, 1], [1, 0]]
    b = [[zeta(4), 0], [0, -zeta(4)]]
    g1, g2 = enumerate_group([a, b]), enumerate_group([b, a])
    assert g1.order == g2.order == 8
    assert g1.class_sizes == g2.class_sizes
