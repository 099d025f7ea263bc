"""The compiled kernels must agree with the pure-Python reference."""
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrkit import essentialize, kernels, weyl_arrangement
from arrkit.kernels import _pure

from conftest import random_arrangement

compiled = pytest.importorskip("arrkit.kernels._ckernels")


def corpus():
    rng = random.Random(7)
    out = [random_arrangement(rng, max_dim=5, max_size=12, entries=3) for _ in range(40)]
    out += [weyl_arrangement(k, n) for k, n in [("A", 3), ("B", 3), ("C", 4), ("D", 4), ("D", 5)]]
    return out


@pytest.mark.parametrize("idx", range(45))
def test_build_flats_agree(idx):
    a = corpus()[idx]
    assert compiled.build_flats(a.normals) == _pure.build_flats(a.normals)


@pytest.mark.parametrize("idx", range(45))
def test_moebius_agree(idx):
    masks, ranks, _ = _pure.build_flats(corpus()[idx].normals)
    assert compiled.moebius(masks, ranks) == _pure.moebius(masks, ranks)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any), min_size=1, max_size=8),
       st.data())
def test_rank_and_closure_agree(normals, data):
    idxs = data.draw(st.lists(st.integers(0, len(normals) - 1), max_size=5))
    assert compiled.rank_of(normals, idxs) == _pure.rank_of(normals, idxs)
    assert compiled.closure_of(normals, idxs) == _pure.closure_of(normals, idxs)


@pytest.mark.parametrize("kind,n", [("A", 3), ("B", 3), ("D", 4)])
def test_topes_agree(monkeypatch, kind, n):
    from arrkit import chambers
    a, _ = essentialize(weyl_arrangement(kind, n))
    monkeypatch.setattr(chambers, "topes", compiled.topes)
    fast = chambers.enumerate_chambers(a)
    monkeypatch.setattr(chambers, "topes", _pure.topes)
    slow = chambers.enumerate_chambers(a)
    assert [(c.sign_vector, c.walls, c.rays) for c in fast] == [(c.sign_vector, c.walls, c.rays) for c in slow]


@pytest.mark.parametrize("kind,n", [("D", 6), ("D", 7), ("B", 7)])
def test_closure_masks_beyond_32_bits(kind, n):
    a = weyl_arrangement(kind, n)
    rng = random.Random(n)
    for _ in range(20):
        idxs = rng.sample(range(len(a)), 3)
        assert compiled.closure_of(a.normals, idxs) == _pure.closure_of(a.normals, idxs)
    last = [len(a) - 1]
    assert compiled.closure_of(a.normals, last)[0] >> (len(a) - 1) == 1


def test_overflow_falls_back_to_pure():
    big = 2 ** 62
    normals = [(big, 1, 0), (1, big, 0), (0, 1, big), (big, big - 1, 3)]
    with pytest.raises(OverflowError):
        compiled.build_flats(normals)
    assert kernels.build_flats(normals) == _pure.build_flats(normals)


def test_more_than_64_hyperplanes_fall_back():
    normals = [(1, i) for i in range(70)]
    masks, ranks, _ = kernels.build_flats(normals)
    assert len(masks) == 72 and ranks[-1] == 2


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
