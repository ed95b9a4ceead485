"""Phase-exact n-qubit Pauli operators and real Pauli sums.

A :class:`PauliOperator` is ``i**phase * prod_k X_k**x_k Z_k**z_k`` with the X
factor to the left of the Z factor on every qubit.  ``x`` and ``z`` are ints
used as bitsets: bit ``k`` refers to qubit ``k`` (0-based), which is the
``k``-th tensor factor from the left.  Since ``Y = i X Z``, the Hermitian Pauli
tensor carrying ``y`` Y-factors has phase ``y mod 4``; its negation has phase
``y + 2``.

Dense matrices use the Kronecker convention, so qubit ``k`` is bit ``n - 1 - k``
of a computational-basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import DimensionError, ResourceError, ValidationError

DENSE_QUBIT_CAP = 12

_LETTERS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTERS.items()}
_PHASES = (1, 1j, -1, -1j)


def _check_dense_cap(n: int, cap: int | None = None) -> None:
    cap = DENSE_QUBIT_CAP if cap is None else cap
    if n > cap:
        raise ResourceError(f"dense representation of {n} qubits exceeds cap of {cap}")


def _reverse_bits(v: int, n: int) -> int:
    """Map a qubit bitset to the corresponding computational-basis index mask."""
    return int(f"{v:0{n}b}"[::-1], 2) if n else 0


def _parity_table(n: int) -> np.ndarray:
    """``table[j] = popcount(j) mod 2`` for ``j < 2**n``."""
    t = np.zeros(1, dtype=np.int8)
    for _ in range(n):
        t = np.concatenate([t, t ^ 1])
    return t


@dataclass(frozen=True, slots=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError("qubit count must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"x/z bit patterns do not fit in {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # construction

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def hermitian(cls, n: int, x: int, z: int, sign: int = 1) -> PauliOperator:
        """``sign`` times the Hermitian tensor with X/Z patterns ``x`` and ``z``."""
        if sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        return cls(n, x, z, (x & z).bit_count() + (0 if sign == 1 else 2))

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, sign: int = 1) -> PauliOperator:
        if not 0 <= qubit < n:
            raise DimensionError(f"qubit {qubit} out of range for n={n}")
        bx, bz = _BITS[letter.upper()]
        return cls.hermitian(n, bx << qubit, bz << qubit, sign)

    @classmethod
    def from_bits(cls, xbits, zbits, sign: int = 1) -> PauliOperator:
        xbits = np.asarray(xbits, dtype=np.uint8)
        zbits = np.asarray(zbits, dtype=np.uint8)
        if xbits.shape != zbits.shape or xbits.ndim != 1:
            raise DimensionError("x and z bit vectors must be 1-D of equal length")
        x = sum(1 << k for k, b in enumerate(xbits) if b)
        z = sum(1 << k for k, b in enumerate(zbits) if b)
        return cls.hermitian(len(xbits), x, z, sign)

    @classmethod
    def from_check_row(cls, row: int, n: int, sign: int = 1) -> PauliOperator:
        """Inverse of :attr:`check_row`."""
        mask = (1 << n) - 1
        return cls.hermitian(n, row & mask, (row >> n) & mask, sign)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Parse ``"+XIZ"``, ``"-IYZ"``, ``"+iXZ"`` (sign optional, defaults to +)."""
        s = label.strip()
        sign = 1
        if s[:1] in "+-−" and s:
            sign = -1 if s[0] != "+" else 1
            s = s[1:]
        extra = 0
        if s[:1] == "i":
            extra = 1
            s = s[1:]
        x = z = 0
        for k, ch in enumerate(s):
            try:
                bx, bz = _BITS[ch]
            except KeyError:
                raise ValidationError(f"invalid Pauli letter {ch!r} in {label!r}") from None
            x |= bx << k
            z |= bz << k
        base = cls.hermitian(len(s), x, z, sign)
        return cls(base.n, x, z, base.phase + extra)

    # properties

    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def is_hermitian(self) -> bool:
        return (self.phase - self.y_count) % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 relative to the Hermitian tensor; raises for non-Hermitian operators."""
        rel = (self.phase - self.y_count) % 4
        if rel == 0:
            return 1
        if rel == 2:
            return -1
        raise ValidationError(f"{self} is not Hermitian (phase is +-i)")

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def support(self) -> frozenset[int]:
        s = self.x | self.z
        return frozenset(k for k in range(self.n) if (s >> k) & 1)

    @property
    def check_row(self) -> int:
        """Check-matrix row ``(x | z)`` packed as an int: bit ``k`` is x_k, bit ``n + k`` is z_k."""
        return self.x | (self.z << self.n)

    @property
    def x_bits(self) -> np.ndarray:
        return np.array([(self.x >> k) & 1 for k in range(self.n)], dtype=np.uint8)

    @property
    def z_bits(self) -> np.ndarray:
        return np.array([(self.z >> k) & 1 for k in range(self.n)], dtype=np.uint8)

    @property
    def check_vector(self) -> np.ndarray:
        return np.concatenate([self.x_bits, self.z_bits])

    def is_identity(self) -> bool:
        """True for ``i**phase * I`` (any phase)."""
        return self.x == 0 and self.z == 0

    def unsigned(self) -> PauliOperator:
        """The Hermitian tensor with the same pattern and sign +1."""
        return PauliOperator.hermitian(self.n, self.x, self.z)

    @property
    def label(self) -> str:
        rel = (self.phase - self.y_count) % 4
        head = ("+", "+i", "-", "-i")[rel]
        return head + "".join(
            _LETTERS[((self.x >> k) & 1, (self.z >> k) & 1)] for k in range(self.n)
        )

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliOperator({self.label!r})"

    # algebra

    def _check_same_n(self, other: PauliOperator) -> None:
        if self.n != other.n:
            raise DimensionError(f"qubit counts differ: {self.n} vs {other.n}")

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        self._check_same_n(other)
        # Z^a X^b = (-1)^{a.b} X^b Z^a on each qubit
        swaps = (self.z & other.x).bit_count()
        return PauliOperator(
            self.n, self.x ^ other.x, self.z ^ other.z, self.phase + other.phase + 2 * swaps
        )

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def commutes(self, other: PauliOperator) -> bool:
        self._check_same_n(other)
        return ((self.x & other.z) ^ (self.z & other.x)).bit_count() % 2 == 0

    def to_dense(self, cap: int | None = None) -> np.ndarray:
        return to_dense(self, cap)


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    return a * b


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return a.commutes(b)


def weight(a: PauliOperator) -> int:
    return a.weight


def support(a: PauliOperator) -> frozenset[int]:
    return a.support


def to_dense(a: PauliOperator, cap: int | None = None) -> np.ndarray:
    """``2**n x 2**n`` complex matrix of ``a``."""
    _check_dense_cap(a.n, cap)
    dim = 1 << a.n
    j = np.arange(dim)
    xm = _reverse_bits(a.x, a.n)
    zm = _reverse_bits(a.z, a.n)
    par = _parity_table(a.n)[j & zm]
    out = np.zeros((dim, dim), dtype=complex)
    out[j ^ xm, j] = _PHASES[a.phase] * (1 - 2 * par)
    return out


def _walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """Unnormalised transform ``V[z] = sum_j v[j] (-1)^{popcount(j & z)}``."""
    a = np.array(v, dtype=complex)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0, :] + a[:, 1, :], a[:, 0, :] - a[:, 1, :]], axis=1)
        h *= 2
    return a.reshape(-1)


class PauliSum:
    """Real linear combination of Hermitian Pauli tensors.

    Terms are keyed by ``(x, z)`` pattern; coefficients multiply the +1-signed
    Hermitian tensor, so a ``-Z`` term is stored as coefficient ``-1`` on ``Z``.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, int], float] | None = None):
        self.n = n
        self._terms: dict[tuple[int, int], float] = {}
        for key, c in (terms or {}).items():
            if c != 0:
                self._terms[key] = float(c)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[float, PauliOperator]]) -> PauliSum:
        acc: dict[tuple[int, int], float] = {}
        for c, op in terms:
            if op.n != n:
                raise DimensionError(f"term on {op.n} qubits in a {n}-qubit sum")
            key = (op.x, op.z)
            acc[key] = acc.get(key, 0.0) + float(c) * op.sign
        return cls(n, acc)

    @classmethod
    def zero(cls, n: int) -> PauliSum:
        return cls(n)

    @property
    def coefficients(self) -> dict[tuple[int, int], float]:
        return dict(self._terms)

    def terms(self) -> Iterator[tuple[float, PauliOperator]]:
        for (x, z), c in self._terms.items():
            yield c, PauliOperator.hermitian(self.n, x, z)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return self.terms()

    def coefficient(self, op: PauliOperator) -> float:
        return self._terms.get((op.x, op.z), 0.0) * op.sign

    @property
    def locality(self) -> int:
        return max(((x | z).bit_count() for x, z in self._terms), default=0)

    def identity_coefficient(self) -> float:
        return self._terms.get((0, 0), 0.0)

    def is_traceless(self, tol: float = 0.0) -> bool:
        return abs(self.identity_coefficient()) <= tol

    def __add__(self, other: PauliSum) -> PauliSum:
        if self.n != other.n:
            raise DimensionError("qubit counts differ")
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0.0) + c
        return PauliSum(self.n, acc)

    def __mul__(self, scale: float) -> PauliSum:
        return PauliSum(self.n, {k: c * scale for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> PauliSum:
        return self * -1.0

    def __repr__(self) -> str:
        body = " + ".join(f"{c:.6g}*{op.label[1:]}" for c, op in self.terms()) or "0"
        return f"PauliSum(n={self.n}: {body})"

    def to_dense(self, cap: int | None = None) -> np.ndarray:
        return sum_to_dense(self, cap)


def sum_to_dense(h: PauliSum, cap: int | None = None) -> np.ndarray:
    """Dense Hermitian matrix of a Pauli sum.

    Terms sharing an X pattern are combined with one Walsh-Hadamard transform
    over their Z patterns, so the cost is ``O(2**n * n)`` per distinct X pattern.
    """
    n = h.n
    _check_dense_cap(n, cap)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    by_x: dict[int, np.ndarray] = {}
    for (x, z), c in h.coefficients.items():
        xm = _reverse_bits(x, n)
        vec = by_x.setdefault(xm, np.zeros(dim, dtype=complex))
        vec[_reverse_bits(z, n)] += c * _PHASES[(x & z).bit_count() % 4]
    j = np.arange(dim)
    for xm, coeffs in by_x.items():
        out[j ^ xm, j] += _walsh_hadamard(coeffs)
    return out


def pauli_decompose(M, tol: float = 1e-10, drop: float = 1e-13) -> PauliSum:
    """Coefficients ``t_J = Trace(M sigma_J) / 2**n`` of a Hermitian matrix.

    Raises :class:`ValidationError` when ``M`` is not Hermitian within ``tol`` or a
    coefficient has an imaginary part above ``tol``.  Coefficients with magnitude
    at most ``drop`` are omitted.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    dim = M.shape[0]
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DimensionError(f"matrix size {dim} is not a power of two")
    _check_dense_cap(n)
    if np.max(np.abs(M - M.conj().T), initial=0.0) > tol:
        raise ValidationError("matrix is not Hermitian within tolerance")
    j = np.arange(dim)
    popcount = np.zeros(dim, dtype=np.int64)
    for b in range(n):
        popcount += (j >> b) & 1
    reverse = np.array([_reverse_bits(v, n) for v in range(dim)], dtype=np.int64)
    phases = np.array(_PHASES)
    terms: dict[tuple[int, int], float] = {}
    for xm in range(dim):
        # Trace(M X^x Z^z) = sum_j M[j, j^x] (-1)^{popcount(j & z)}
        t = _walsh_hadamard(M[j, j ^ xm]) / dim * phases[popcount[j & xm] % 4]
        if np.max(np.abs(t.imag), initial=0.0) > tol:
            raise ValidationError(f"coefficient with imaginary part {np.max(np.abs(t.imag)):.3g}")
        x = int(reverse[xm])
        for zm in np.nonzero(np.abs(t.real) > drop)[0]:
            terms[(x, int(reverse[zm]))] = float(t.real[zm])
    return PauliSum(n, terms)
