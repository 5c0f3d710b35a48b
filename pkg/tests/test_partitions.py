import itertools

import pytest
from hypothesis import given, strategies as st

from qhodge.partitions import GenPartition, GroupSpec, Window, enumerate_partitions


@st.composite
def gen_partitions(draw, N=None, lo=-4, hi=4):
    N = N or draw(st.integers(1, 4))
    parts = sorted(draw(st.lists(st.integers(lo, hi), min_size=N, max_size=N)), reverse=True)
    return GenPartition(tuple(parts))


def test_rejects_increasing_parts():
    with pytest.raises(ValueError):
        GenPartition((1, 2))


def test_parse_pads():
    assert GenPartition.parse("(2,-1)", 3) == GenPartition((2, 0, -1))
    assert GenPartition.parse("1", 2) == GenPartition((1, 0))
    assert GenPartition.parse("2,-1") == GenPartition((2, -1))
    with pytest.raises(ValueError):
        GenPartition.parse("1,1,1", 2)
    with pytest.raises(ValueError):
        GenPartition.parse("-1,2", 2)


def test_signed_boxes_small():
    # (2, -1): boxes (1,1), (1,2) positive, (2,0) negative
    lam = GenPartition((2, -1))
    assert sorted(lam.boxes()) == [(1, 1, 1), (1, 2, 1), (2, 0, -1)]
    assert lam.signed_content_sum() == (0 + 1) - (0 - 2)


@given(gen_partitions())
def test_sign_sum_is_size(lam):
    assert sum(s for _, s in lam.contents()) == lam.size
    assert len(lam.boxes()) == lam.box_count


@given(gen_partitions(lo=0))
def test_content_identity(lam):
    # c(lambda) = n(lambda') - n(lambda) for ordinary partitions
    assert lam.signed_content_sum() == lam.n_conjugate() - lam.n()


@given(gen_partitions(), st.integers(-3, 3))
def test_shift_content_change(lam, k):
    # shifting by (k^N) changes the size by kN
    assert lam.shift(k).size == lam.size + k * lam.N


@given(gen_partitions(lo=0))
def test_conjugate_is_involution(lam):
    conj = lam.conjugate()
    assert sum(conj) == lam.size
    if conj:
        assert GenPartition(conj).conjugate() == tuple(x for x in lam.parts if x)


def _brute(group, window):
    N = group.N
    b = window.max_part if window.max_part is not None else window.max_boxes
    lo = -b if group.family == "glq" else 0
    out = set()
    for parts in itertools.product(range(lo, b + 1), repeat=N):
        if any(x < y for x, y in zip(parts, parts[1:])):
            continue
        lam = GenPartition(parts)
        if window.contains(lam) and group.admits(lam):
            out.add(lam)
    return sorted(out)


@pytest.mark.parametrize("fam,N", [("glq", 2), ("glq", 3), ("slq", 3), ("oq", 3), ("oq", 4), ("spq", 4), ("soq", 3)])
@pytest.mark.parametrize("window", [Window(max_boxes=4), Window(max_part=2), Window(max_boxes=3, max_part=2)])
def test_enumeration_matches_brute_force(fam, N, window):
    g = GroupSpec(fam, N)
    assert enumerate_partitions(g, window) == _brute(g, window)


def test_label_sets():
    assert GroupSpec("oq", 3).admits(GenPartition((1, 1, 1)))
    assert not GroupSpec("oq", 3).admits(GenPartition((2, 2, 0)))
    assert not GroupSpec("spq", 4).admits(GenPartition((1, 1, 1, 0)))
    assert GroupSpec("spq", 4).admits(GenPartition((3, 1, 0, 0)))
    assert not GroupSpec("slq", 2).admits(GenPartition((1, 1)))
    with pytest.raises(ValueError):
        GroupSpec("spq", 3)
    with pytest.raises(ValueError):
        Window()


def test_glq_window_count():
    # N=2 labels with |parts| <= 3: pairs a >= b in [-3, 3]
    assert len(enumerate_partitions(GroupSpec("glq", 2), Window(max_part=3))) == 28
