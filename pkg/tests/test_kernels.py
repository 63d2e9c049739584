import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotslice import kernels

BACKENDS = kernels.available_backends()
py = kernels.backend("python")


def test_backends_listed():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


def test_env_forces_fallback():
    out = subprocess.run([sys.executable, "-c", "from rotslice import kernels; print(kernels.BACKEND)"],
                         env={**os.environ, "ROTSLICE_PURE_PYTHON": "1"}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=150, deadline=None)
@given(st.sets(st.integers(0, 400), max_size=60), st.integers(3, 6), st.integers(1, 80))
def test_ap_first_equivalence(name, s, L, min_step):
    impl = kernels.backend(name)
    pos = np.array(sorted(s), dtype=np.int64)
    got = impl.ap_first(pos, L, min_step)
    ref = py.ap_first(pos, L, min_step)
    assert got == ref
    if ref is not None:
        a, d = ref
        assert d >= min_step and all(a + t * d in s for t in range(L))


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=150, deadline=None)
@given(st.binary(max_size=200), st.binary(min_size=1, max_size=4))
def test_count_word_equivalence(name, seq, word):
    seq = bytes(b % 3 for b in seq)
    word = bytes(b % 3 for b in word)
    ref = sum(1 for i in range(len(seq) - len(word) + 1) if seq[i:i + len(word)] == word)
    assert kernels.backend(name).count_word(seq, word) == ref


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("dtype", [np.int8, np.int64, np.bool_])
def test_max_window_sum_equivalence(name, dtype):
    rng = np.random.default_rng(4)
    ind = (rng.random(3000) < 0.3).astype(dtype)
    impl = kernels.backend(name)
    for w in (1, 2, 17, 500, 3000):
        ref = max(int(ind[a:a + w].astype(np.int64).sum()) for a in range(0, 3000 - w + 1, 1 if w < 600 else 1))
        assert impl.max_window_sum(ind, w) == ref
    with pytest.raises(ValueError):
        impl.max_window_sum(ind, 0)


@pytest.mark.parametrize("name", BACKENDS)
def test_greedy_directions_equivalence(name):
    rng = np.random.default_rng(9)
    ang = rng.random(2000) * 2 * np.pi
    ux, uy = np.cos(ang), np.sin(ang)
    a = kernels.backend(name).greedy_directions(ux, uy, 0.1)
    b = py.greedy_directions(ux, uy, 0.1)
    assert np.array_equal(a, b)
