"""Pure-Python GF(2) kernels.

Rows arrive as ``(m, W)`` little-endian ``uint64`` arrays (column ``j`` is bit
``j % 64`` of word ``j // 64``) and are converted to Python ints, which act as
arbitrary-width bitsets.  Semantics match the compiled ``_core`` module exactly.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

FOUND, EXHAUSTED, NOT_FOUND = 1, 2, 0


def _to_ints(rows: np.ndarray) -> list[int]:
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    return [int.from_bytes(r.astype("<u8").tobytes(), "little") for r in rows]


def _to_words(ints: list[int], words: int) -> np.ndarray:
    out = np.zeros((len(ints), words), dtype=np.uint64)
    for i, v in enumerate(ints):
        out[i] = np.frombuffer(v.to_bytes(8 * words, "little"), dtype="<u8")
    return out


def _qubit_mask(subset, n: int) -> int:
    m = 0
    for q in subset:
        m |= (1 << q) | (1 << (q + n))
    return m


def _insert(basis: dict[int, int], row: int) -> bool:
    """Reduce ``row`` against a lowest-bit-keyed xor basis; insert if independent."""
    while row:
        low = row & -row
        b = basis.get(low)
        if b is None:
            basis[low] = row
            return True
        row ^= b
    return False


def rank_packed(rows: np.ndarray) -> int:
    basis: dict[int, int] = {}
    return sum(_insert(basis, r) for r in _to_ints(rows))


def first_rank_drop(rows: np.ndarray, n: int, k: int, target: int, budget: int):
    """Scan ``k``-subsets of qubits in lexicographic order for the first one whose
    column-zeroing lowers the rank below ``target``.

    Returns ``(status, subset_or_None, examined)``.
    """
    ints = _to_ints(rows)
    if k < 1 or k > n or not ints:
        return NOT_FOUND, None, 0
    full = (1 << (2 * n)) - 1
    examined = 0
    for subset in combinations(range(n), k):
        if 0 <= budget <= examined:
            return EXHAUSTED, None, examined
        examined += 1
        keep = full ^ _qubit_mask(subset, n)
        basis: dict[int, int] = {}
        r = 0
        for v in ints:
            r += _insert(basis, v & keep)
        if r < target:
            return FOUND, subset, examined
    return NOT_FOUND, None, examined


def span_supported(rows: np.ndarray, n: int, k: int, target: int, budget: int):
    """Accumulate, over ``k``-subsets S, the row-space vectors supported inside S.

    Returns ``(status, raw_rows, examined)`` where ``raw_rows`` are the
    independent contributions in insertion order, each supported in one S.
    ``status`` is FOUND once their rank reaches ``target``.
    """
    words = rows.shape[1] if rows.ndim == 2 else 1
    ints = _to_ints(rows)
    full = (1 << (2 * n)) - 1
    acc: dict[int, int] = {}
    raw: list[int] = []
    examined = 0
    if target <= 0:
        return FOUND, _to_words(raw, words), examined
    if k < 1 or k > n or not ints:
        return NOT_FOUND, _to_words(raw, words), examined
    for subset in combinations(range(n), k):
        if 0 <= budget <= examined:
            return EXHAUSTED, _to_words(raw, words), examined
        examined += 1
        outside = full ^ _qubit_mask(subset, n)
        pivots: dict[int, int] = {}
        for v in ints:
            # eliminate on the columns outside S, carrying the whole row
            while v & outside:
                c = v & outside
                low = c & -c
                b = pivots.get(low)
                if b is None:
                    pivots[low] = v
                    break
                v ^= b
            else:
                if v and _insert(acc, v):
                    raw.append(v)
                    if len(raw) >= target:
                        return FOUND, _to_words(raw, words), examined
    return NOT_FOUND, _to_words(raw, words), examined
