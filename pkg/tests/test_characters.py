import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcode.characters import ClassFunction, adams, align_table, inner_product, multiplicity, norm
from twistcode.data import bundled_path, load_bundled, read_group_file, read_table_file
from twistcode.errors import CharacterDataError

NAMES = ["2I", "sigma360"]


@pytest.mark.parametrize("name", NAMES)
def test_table_orthonormal_and_complete(name):
    t = load_bundled(name).table
    assert sum(d * d for d in t.degrees) == load_bundled(name).group.order
    for a in t.characters:
        for b in t.characters:
            assert inner_product(a, b) == (1 if a is b else 0)


@pytest.mark.parametrize("name", NAMES)
def test_defining_character_is_fundamental(name):
    b = load_bundled(name)
    assert b.f == b.table[b.fundamental_name]


@pytest.mark.parametrize("name", NAMES)
def test_inner_product_matches_numeric_sum_over_elements(name):
    # element-wise numeric sum, independent of the class machinery
    b = load_bundled(name)
    g = b.group
    tr = np.trace(g.numeric, axis1=1, axis2=2)
    for lam in ("chi3", "chi4"):
        chi = np.array([complex(b.table[lam].at(i)) for i in range(g.order)])
        for n in range(1, 9):
            numeric = np.sum(chi.conj() * tr**n) / g.order
            assert abs(numeric - multiplicity(b.table[lam], b.f**n)) < 1e-6


def test_norm_ladders():
    b = load_bundled("2I")
    assert [norm(b.table["chi3"] * b.f**k) for k in (1, 2, 3)] == [1, 2, 6]
    s = load_bundled("sigma360")
    assert [norm(s.table["chi3"] * s.f**k) for k in (1, 2, 3)] == [1, 3, 20]


def test_gram_decomposition():
    s = load_bundled("sigma360")
    lam = s.table["chi3"]
    assert s.table.decompose(lam * lam.conjugate()) == [("chi1", 1), ("chi11", 1)]
    b = load_bundled("2I")
    lam = b.table["chi3"]
    assert b.table.decompose(lam * lam.conjugate()) == [("chi1", 1), ("chi4", 1)]


@given(st.sampled_from(NAMES), st.integers(0, 16), st.integers(0, 16), st.booleans())
@settings(max_examples=60, deadline=None)
def test_products_rebuild_exactly(name, i, j, conj):
    b = load_bundled(name)
    names = b.table.names
    x, y = b.table[names[i % len(names)]], b.table[names[j % len(names)]]
    prod = x * (y.conjugate() if conj else y)
    rebuilt = ClassFunction.constant(b.group, 0)
    for n, m in b.table.decompose(prod):
        rebuilt = rebuilt + b.table[n] * m
    assert rebuilt == prod
    assert sum(m * b.table[n].degree.to_fraction() for n, m in b.table.decompose(prod)) == prod.degree.to_fraction()


def test_adams_is_virtual_character():
    b = load_bundled("2I")
    for k in (2, 3, 5):
        psi = adams(b.f, k)
        assert all(isinstance(m, int) for m in b.table.multiplicities(psi))


def test_non_character_rejected():
    b = load_bundled("2I")
    half = ClassFunction(b.group, [1] + [0] * (b.group.num_classes - 1))
    with pytest.raises(CharacterDataError):
        b.table.decompose(half)


def test_alignment_counts():
    assert load_bundled("2I").table.alignment_candidates == 1
    # two order-3 classes of size 120 are invisible to f; swapping them swaps chi6/chi7
    assert load_bundled("sigma360").table.alignment_candidates == 2


def test_shuffled_columns_realign():
    b = load_bundled("2I")
    info = read_group_file(bundled_path("2I"))
    tab = read_table_file(bundled_path("2I").parent / info["table"])
    perm = [0, 8, 7, 6, 5, 4, 3, 2, 1]
    fps = [tab["fingerprints"][p] for p in perm]
    irreps = [(n, [v[p] for p in perm]) for n, v in tab["irreps"]]
    table = align_table(b.group, fps, irreps, "chi2")
    for name in table.names:
        assert table[name] == b.table[name]


def test_corrupt_table_detected():
    b = load_bundled("2I")
    info = read_group_file(bundled_path("2I"))
    tab = read_table_file(bundled_path("2I").parent / info["table"])
    irreps = [(n, list(v)) for n, v in tab["irreps"]]
    irreps[3][1][1] = irreps[3][1][1] + 1
    with pytest.raises(CharacterDataError):
        align_table(b.group, tab["fingerprints"], irreps, "chi2")
