from __future__ import annotations

import itertools
import os

import numpy as np
import pytest

from stabloc import _kernels
from stabloc._kernels import EXHAUSTED, FOUND, NOT_FOUND, _pure
from stabloc.gf2 import pack_rows, qubit_mask


def _random_rows(rng, m, n):
    return [int(v) for v in rng.integers(0, 1 << (2 * n), size=m)]


def _reference_drop(ints, n, k, target):
    # direct definition: rank of rows with the subset's columns masked out
    for S in itertools.combinations(range(n), k):
        mask = ~qubit_mask(S, n)
        masked = np.array([[(r & mask) >> j & 1 for j in range(2 * n)] for r in ints], dtype=np.uint8)
        if _pure.rank_packed(pack_rows([int("".join(map(str, row[::-1])), 2) for row in masked], 2 * n)) < target:
            return S
    return None


@pytest.mark.skipif(os.environ.get("STABLOC_NO_EXT") == "1", reason="extension build disabled")
def test_compiled_backend_is_built():
    assert "compiled" in _kernels.BACKENDS


def test_rank_packed_agrees(backend):
    rng = np.random.default_rng(1)
    kern = _kernels.get_backend(backend)
    for _ in range(200):
        m, cols = int(rng.integers(1, 8)), int(rng.integers(1, 140))
        ints = [int(v) for v in rng.integers(0, 2, size=(m, cols)).dot(1 << np.arange(cols, dtype=object))]
        assert kern.rank_packed(pack_rows(ints, cols)) == _pure.rank_packed(pack_rows(ints, cols))


def test_first_rank_drop_matches_definition(backend):
    rng = np.random.default_rng(2)
    kern = _kernels.get_backend(backend)
    for _ in range(150):
        n = int(rng.integers(1, 6))
        ints = _random_rows(rng, int(rng.integers(1, 5)), n)
        target = _pure.rank_packed(pack_rows(ints, 2 * n))
        k = int(rng.integers(1, n + 1))
        status, subset, examined = kern.first_rank_drop(pack_rows(ints, 2 * n), n, k, target, -1)
        ref = _reference_drop(ints, n, k, target)
        if ref is None:
            assert status == NOT_FOUND
        else:
            assert status == FOUND and tuple(subset) == ref


def test_backends_identical_outputs():
    if "compiled" not in _kernels.BACKENDS:
        pytest.skip("extension not built")
    rng = np.random.default_rng(3)
    pure, comp = _pure, _kernels.BACKENDS["compiled"]
    for _ in range(400):
        n = int(rng.integers(1, 8))
        ints = _random_rows(rng, int(rng.integers(0, 6)), n)
        rows = pack_rows(ints, 2 * n)
        target = pure.rank_packed(rows) if ints else 0
        k = int(rng.integers(0, n + 2))
        budget = int(rng.choice([-1, 0, 3, 50]))
        a = pure.first_rank_drop(rows, n, k, target, budget)
        b = comp.first_rank_drop(rows, n, k, target, budget)
        assert a[0] == b[0] and a[2] == b[2]
        assert (a[1] is None and b[1] is None) or tuple(a[1]) == tuple(b[1])
        a = pure.span_supported(rows, n, k, target, budget)
        b = comp.span_supported(rows, n, k, target, budget)
        assert a[0] == b[0] and a[2] == b[2]
        assert np.array_equal(np.asarray(a[1]), np.asarray(b[1]))


def test_budget_exhaustion(backend):
    kern = _kernels.get_backend(backend)
    n = 6
    rows = pack_rows([0b111111 | (0b111111 << n), (0b111111 << n)], 2 * n)
    status, _, examined = kern.first_rank_drop(rows, n, 2, 2, 4)
    assert status == EXHAUSTED and examined == 4
    # X on qubit 1 alone: the very first subset drops the rank
    status, subset, examined = kern.first_rank_drop(pack_rows([1], 2 * n), n, 1, 1, -1)
    assert status == FOUND and tuple(subset) == (0,) and examined == 1
    status, _, examined = kern.first_rank_drop(rows, n, 2, 2, 0)
    assert status == EXHAUSTED and examined == 0


def test_env_var_forces_pure_backend():
    import subprocess
    import sys

    code = "from stabloc import _kernels; print(_kernels.default_backend)"
    env = dict(os.environ, STABLOC_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "pure"
    env["STABLOC_PURE"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == ("compiled" if "compiled" in _kernels.BACKENDS else "pure")
