"""Dense bit matrices over GF(2).

Matrices are stored as read-only ``uint8`` arrays.  Row operations work on rows
packed into Python ints (bit ``j`` of a row int is column ``j``), and the
subset-heavy rank computations go through :mod:`stabloc._kernels`, which sees
rows packed into little-endian ``uint64`` words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import get_backend
from .errors import DimensionError, ValidationError


def as_bitvector(bits, length: int | None = None) -> np.ndarray:
    """Coerce ``bits`` to a read-only 1-D ``uint8`` array of 0/1 entries."""
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise DimensionError(f"bit vector must be 1-D, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValidationError("bit vector entries must be 0 or 1")
    if length is not None and arr.size != length:
        raise DimensionError(f"expected bit vector of length {length}, got {arr.size}")
    out = arr.astype(np.uint8)
    out.setflags(write=False)
    return out


def int_to_bits(value: int, length: int) -> np.ndarray:
    """Unpack a row int into a length-``length`` bit vector (bit ``j`` -> entry ``j``)."""
    out = np.zeros(length, dtype=np.uint8)
    j = 0
    while value:
        if value & 1:
            out[j] = 1
        value >>= 1
        j += 1
    return out


def bits_to_int(bits) -> int:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size == 0:
        return 0
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def pack_rows(ints: Sequence[int], ncols: int) -> np.ndarray:
    """Pack row ints into the ``(m, W)`` uint64 layout used by the kernels."""
    words = max(1, (ncols + 63) // 64)
    out = np.zeros((len(ints), words), dtype=np.uint64)
    for i, v in enumerate(ints):
        out[i] = np.frombuffer(v.to_bytes(8 * words, "little"), dtype="<u8")
    return out


def qubit_mask(subset: Iterable[int], n: int) -> int:
    """Row-int mask selecting the X and Z columns of every qubit in ``subset``."""
    mask = 0
    for q in subset:
        if not 0 <= q < n:
            raise DimensionError(f"qubit index {q} out of range for n={n}")
        mask |= (1 << q) | (1 << (q + n))
    return mask


class BitMatrix:
    """Immutable dense matrix over GF(2)."""

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.asarray(data)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionError(f"bit matrix must be 2-D, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValidationError("bit matrix entries must be 0 or 1")
        arr = arr.astype(np.uint8, copy=True)
        arr.setflags(write=False)
        self._data = arr

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_row_ints(cls, ints: Sequence[int], cols: int) -> BitMatrix:
        if not ints:
            return cls.zeros(0, cols)
        return cls(np.array([int_to_bits(v, cols) for v in ints], dtype=np.uint8))

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def T(self) -> BitMatrix:
        return BitMatrix(self._data.T)

    def row_ints(self) -> list[int]:
        return [bits_to_int(r) for r in self._data]

    def packed(self) -> np.ndarray:
        return pack_rows(self.row_ints(), self.cols)

    def __getitem__(self, key):
        return self._data[key]

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        prod = self._data.astype(np.int64) @ other._data.astype(np.int64)
        return BitMatrix(prod & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(b) for b in r) for r in self._data)
        return f"BitMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not self._data.any()

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return BitMatrix(np.vstack([self._data, other._data]))


def _reduce_rows(ints: Sequence[int]):
    """Insert rows in order into a lowest-bit-keyed xor basis.

    Returns ``(basis, residues)``: ``basis`` maps pivot bit -> (row, combo) and
    ``residues[i]`` is ``(residual, combo)`` for input row ``i``, where ``combo``
    is the bitmask of input rows summing to ``residual``.
    """
    basis: dict[int, tuple[int, int]] = {}
    residues = []
    for i, row in enumerate(ints):
        combo = 1 << i
        while row:
            low = row & -row
            hit = basis.get(low)
            if hit is None:
                basis[low] = (row, combo)
                break
            row ^= hit[0]
            combo ^= hit[1]
        residues.append((row, combo))
    return basis, residues


def rank(M: BitMatrix, backend: str | None = None) -> int:
    """GF(2) row rank."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return int(get_backend(backend).rank_packed(M.packed()))


def rref(M: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row echelon form with rows ordered by ascending pivot column."""
    basis: dict[int, int] = {}
    for row in M.row_ints():
        while row:
            low = row & -row
            b = basis.get(low)
            if b is None:
                basis[low] = row
                break
            row ^= b
    pivots = sorted(basis)
    rows = [basis[p] for p in pivots]
    for i, p in enumerate(pivots):
        for j in range(len(rows)):
            if j != i and rows[j] & p:
                rows[j] ^= rows[i]
    return BitMatrix.from_row_ints(rows, M.cols), tuple(p.bit_length() - 1 for p in pivots)


def left_null_basis(M: BitMatrix) -> BitMatrix:
    """Rows form a basis of ``{v : v^T M = 0}``; shape ``(rows - rank, rows)``."""
    _, residues = _reduce_rows(M.row_ints())
    null = [combo for residual, combo in residues if residual == 0]
    return BitMatrix.from_row_ints(null, M.rows)


@dataclass(frozen=True)
class RowSpaceMembership:
    contains: bool
    certificate: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.contains


def in_row_space(M: BitMatrix, v) -> RowSpaceMembership:
    """Decide ``v in rowspace(M)``; when it is, ``certificate`` is some ``u`` with ``u^T M = v``."""
    v = as_bitvector(v)
    if v.size != M.cols:
        raise DimensionError(f"vector length {v.size} does not match {M.cols} columns")
    basis, _ = _reduce_rows(M.row_ints())
    target = bits_to_int(v)
    combo = 0
    while target:
        low = target & -target
        hit = basis.get(low)
        if hit is None:
            return RowSpaceMembership(False)
        target ^= hit[0]
        combo ^= hit[1]
    return RowSpaceMembership(True, as_bitvector(int_to_bits(combo, M.rows)))


def zero_columns(M: BitMatrix, S: Iterable[int], n_qubits: int | None = None) -> BitMatrix:
    """Zero the X and Z columns (``j`` and ``j + n``) of every qubit ``j`` in ``S``."""
    if n_qubits is None:
        if M.cols % 2:
            raise DimensionError("check matrix must have an even number of columns")
        n_qubits = M.cols // 2
    if M.cols != 2 * n_qubits:
        raise DimensionError(f"{M.cols} columns do not match 2n = {2 * n_qubits}")
    S = list(S)
    for j in S:
        if not 0 <= j < n_qubits:
            raise DimensionError(f"qubit index {j} out of range for n={n_qubits}")
    out = M.data.copy()
    cols = S + [j + n_qubits for j in S]
    out[:, cols] = 0
    return BitMatrix(out)
