import random

import numpy as np
import pytest

from chevtori.rootsystem import root_system


@pytest.mark.parametrize("kind,count", [("E6", 36), ("E7", 63), ("E8", 120)])
def test_positive_root_counts(kind, count):
    assert root_system(kind).num_positive == count


@pytest.mark.parametrize(
    "kind,index,coords",
    [
        ("E6", 14, (0, 1, 0, 1, 1, 0)),
        ("E6", 36, (1, 2, 2, 3, 2, 1)),
        ("E7", 16, (0, 1, 0, 1, 1, 0, 0)),
        ("E7", 53, (1, 2, 2, 3, 2, 1, 0)),
        ("E8", 18, (0, 1, 0, 1, 1, 0, 0, 0)),
        ("E8", 26, (0, 1, 0, 1, 1, 1, 0, 0)),
        ("E8", 46, (1, 1, 1, 1, 1, 1, 1, 0)),
        ("E8", 69, (1, 2, 2, 3, 2, 1, 0, 0)),
        ("E8", 74, (0, 1, 1, 2, 2, 2, 2, 1)),
        ("E8", 120, (2, 3, 4, 6, 5, 4, 3, 2)),
    ],
)
def test_index_anchors(kind, index, coords):
    assert tuple(root_system(kind).root(index)) == coords


def test_simple_roots_come_first(e7):
    for i in range(1, 8):
        assert tuple(e7.root(i)) == tuple(int(k == i - 1) for k in range(7))


def test_reflection_examples(e7):
    # w_s(s) = -s
    for s in (1, 5, 40):
        assert e7.reflect(s, s) == -s
    assert tuple(e7.root(e7.reflect(3, 1))) == (1, 0, 1, 0, 0, 0, 0)
    assert tuple(e7.root(e7.reflect(2, 4))) == (0, 1, 0, 1, 0, 0, 0)


def test_reflection_is_involution(e7):
    rng = random.Random(0)
    for _ in range(100):
        s = rng.randint(1, 63)
        r = rng.randint(-63, 63) or 1
        assert e7.reflect(s, e7.reflect(s, r)) == r


def test_nonsimple_roots_are_sums_of_earlier(e8):
    for t in range(e8.rank + 1, e8.num_positive + 1):
        tv = e8.root(t)
        assert any(
            e8.is_root(tv - e8.root(r)) and 0 < e8.index(tv - e8.root(r)) < t
            for r in range(1, t)
        )


def test_nonroot_rejected(e7):
    with pytest.raises(ValueError):
        e7.index([1, 1, 0, 0, 0, 0, 0])


def test_weyl_word_empty_is_identity(e7):
    assert np.array_equal(e7.weyl_word([]), np.eye(7, dtype=np.int64))


@pytest.mark.parametrize(
    "kind,word",
    [("E7", [1, 2, 5, 7, 37, 55, 61]), ("E8", [1, 2, 5, 7, 44, 71, 89, 120])],
)
def test_longest_element_words(kind, word):
    rs = root_system(kind)
    m = rs.weyl_word(word)
    assert np.array_equal(m, -np.eye(rs.rank, dtype=np.int64))
    assert rs.length(m) == rs.num_positive
    assert len(rs.reduced_word(m)) == rs.num_positive


def test_braid_relations_matrix_level(e7):
    for i in range(1, 8):
        for j in range(i + 1, 8):
            mi, mj = e7.reflection_matrix(i), e7.reflection_matrix(j)
            if e7.pairing(i, j) == -1:
                assert np.array_equal(mi @ mj @ mi, mj @ mi @ mj)
            else:
                assert np.array_equal(mi @ mj, mj @ mi)


def test_braid_moved_words_agree(e7):
    rng = random.Random(1)
    for _ in range(1000):
        word = [rng.randint(1, 7) for _ in range(rng.randint(2, 12))]
        k = rng.randint(0, len(word) - 2)
        i, j = word[k], word[k + 1]
        moved = None
        if e7.pairing(i, j) == 0 or i == j:
            moved = word[:k] + [j, i] + word[k + 2:]
        elif k + 2 < len(word) and word[k + 2] == i:
            # i j i -> j i j
            moved = word[:k] + [j, i, j] + word[k + 3:]
        if moved is not None:
            assert np.array_equal(e7.weyl_word(word), e7.weyl_word(moved))


def test_length_equals_sign_changes(e7):
    rng = random.Random(2)
    for _ in range(200):
        word = [rng.randint(1, 7) for _ in range(rng.randint(0, 15))]
        m = e7.weyl_word(word)
        assert e7.length(m) == len(e7.reduced_word(m))
        assert e7.length(m) <= len(word)


def test_reduced_word_deterministic(e7):
    m = e7.weyl_word([3, 1, 4, 1, 5])
    assert e7.reduced_word(m) == e7.reduced_word(m.copy())


def test_root_permutation_faithful_order(e8):
    rng = random.Random(3)
    for _ in range(100):
        word = [rng.randint(1, 8) for _ in range(rng.randint(0, 10))]
        m = e8.weyl_word(word)
        perm = e8.root_permutation(m)
        order = 1
        p = perm
        while not np.array_equal(p, np.arange(len(p))):
            p = perm[p]
            order += 1
        assert order == e8.matrix_order(m)


def test_permutation_fixes_orthogonal_roots(e7):
    s = 1
    m = e7.reflection_matrix(s)
    for r in range(1, 64):
        if e7.pairing(r, s) == 0:
            assert e7.apply(m, r) == r


def test_export_table(e6):
    table = e6.export_table()
    assert len(table) == 36
    assert table["36"] == [1, 2, 2, 3, 2, 1]
