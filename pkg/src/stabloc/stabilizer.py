"""Stabilizer groups as signed check matrices.

:class:`GeneratorSet` is the check-matrix view of any list of Hermitian Pauli
tensors: rows are reduced to a GF(2)-independent set, signs ride along, and no
group-theoretic validation happens.  :class:`StabilizerGroup` adds the two
invariants that make a stabilizer code nonzero: the generators commute and
``-I`` is not generated.  Sign bookkeeping always goes through exact operator
products, never through check rows alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import pauli as _pauli
from ._kernels import get_backend
from .errors import (
    CommutativityError,
    DimensionError,
    PreconditionError,
    ResourceError,
    TrivialCodespaceError,
    ValidationError,
)
from .gf2 import BitMatrix, as_bitvector, pack_rows
from .pauli import PauliOperator, PauliSum

ENUMERATION_CAP = 24


class Membership(enum.Enum):
    IN_GROUP = "in_G"
    NEGATION_IN_GROUP = "negation_in_G"
    NEITHER = "neither"


@dataclass(frozen=True)
class _Pivot:
    row: int
    op: PauliOperator
    combo: int  # bitmask over minimal generators


class GeneratorSet:
    """Hermitian Pauli generators reduced to a GF(2)-independent check matrix.

    Generators whose check row is a combination of earlier ones are dropped and
    their input indices recorded in ``removed``.  Phases are tracked but the
    generated group is not required to be commutative.
    """

    def __init__(self, generators: Iterable[PauliOperator], n: int | None = None):
        gens = list(generators)
        if n is None:
            if not gens:
                raise DimensionError("qubit count is required for an empty generator list")
            n = gens[0].n
        for i, g in enumerate(gens):
            if g.n != n:
                raise DimensionError(f"generator {i + 1} acts on {g.n} qubits, expected {n}")
            if not g.is_hermitian:
                raise ValidationError(f"generator {i + 1} ({g}) is not Hermitian")
        self.n = n
        self.input_generators: tuple[PauliOperator, ...] = tuple(gens)
        self._pre_validate(gens)

        kept: list[PauliOperator] = []
        removed: list[int] = []
        pivots: dict[int, _Pivot] = {}
        input_index: list[int] = []
        for i, g in enumerate(gens):
            row, op, combo = g.check_row, g, 1 << len(kept)
            while row:
                low = row & -row
                piv = pivots.get(low)
                if piv is None:
                    break
                row ^= piv.row
                op = op * piv.op
                combo ^= piv.combo
            if row:
                pivots[row & -row] = _Pivot(row, op, combo)
                kept.append(g)
                input_index.append(i)
            else:
                self._on_dependent(i, op, combo, input_index)
                removed.append(i)
        self.generators: tuple[PauliOperator, ...] = tuple(kept)
        self.removed: tuple[int, ...] = tuple(removed)
        self._pivots = pivots

    def _pre_validate(self, gens: Sequence[PauliOperator]) -> None:
        pass

    def _on_dependent(self, i: int, op: PauliOperator, combo: int, input_index: list[int]) -> None:
        pass

    # shape

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        """Number of distinct check rows (``|G|`` for a stabilizer group)."""
        return 1 << self.m

    @property
    def commuting(self) -> bool:
        return all(a.commutes(b) for a, b in combinations(self.generators, 2))

    @property
    def check_matrix(self) -> BitMatrix:
        return BitMatrix.from_row_ints([g.check_row for g in self.generators], 2 * self.n)

    @property
    def signs(self) -> np.ndarray:
        """1 where the generator carries sign -1."""
        return as_bitvector([0 if g.sign == 1 else 1 for g in self.generators])

    def packed_rows(self) -> np.ndarray:
        return pack_rows([g.check_row for g in self.generators], 2 * self.n)

    def __repr__(self) -> str:
        gens = ", ".join(g.label for g in self.generators)
        return f"{type(self).__name__}(n={self.n}, <{gens}>)"

    # element access

    def decompose(self, row: int) -> tuple[int, PauliOperator] | None:
        """Express a check row over the generators.

        Returns ``(combo, product)`` where ``combo`` is the generator bitmask and
        ``product`` the exact operator, or ``None`` if ``row`` is not in the row space.
        """
        combo = 0
        while row:
            low = row & -row
            piv = self._pivots.get(low)
            if piv is None:
                return None
            row ^= piv.row
            combo ^= piv.combo
        return combo, self.product(combo)

    def product(self, combo: int) -> PauliOperator:
        """Ordered product of the generators selected by bitmask ``combo``."""
        op = PauliOperator.identity(self.n)
        for j, g in enumerate(self.generators):
            if (combo >> j) & 1:
                op = op * g
        return op

    def elements(self, cap: int | None = None) -> Iterator[PauliOperator]:
        """All ``2**m`` generator products in Gray-code order (one multiplication per step)."""
        cap = ENUMERATION_CAP if cap is None else cap
        if self.m > cap:
            raise ResourceError(f"enumerating 2^{self.m} elements exceeds cap 2^{cap}")
        op = PauliOperator.identity(self.n)
        yield op
        for i in range(1, 1 << self.m):
            j = (i & -i).bit_length() - 1
            op = op * self.generators[j]
            yield op

    def check_rows(self, cap: int | None = None) -> Iterator[int]:
        """Check rows of all ``2**m`` elements in Gray-code order."""
        cap = ENUMERATION_CAP if cap is None else cap
        if self.m > cap:
            raise ResourceError(f"enumerating 2^{self.m} elements exceeds cap 2^{cap}")
        rows = [g.check_row for g in self.generators]
        row = 0
        yield row
        for i in range(1, 1 << self.m):
            row ^= rows[(i & -i).bit_length() - 1]
            yield row


class StabilizerGroup(GeneratorSet):
    """Commuting Hermitian Pauli generators with ``-I`` not in the generated group.

    Construction raises :class:`CommutativityError` for an anticommuting pair and
    :class:`TrivialCodespaceError` (carrying the offending generator indices) when
    some product of generators equals ``-I``.
    """

    def _pre_validate(self, gens: Sequence[PauliOperator]) -> None:
        for i, j in combinations(range(len(gens)), 2):
            if not gens[i].commutes(gens[j]):
                raise CommutativityError(i, j, gens[i], gens[j])

    def _on_dependent(self, i, op, combo, input_index):
        if op.phase == 2:
            cert = tuple(sorted([i] + [input_index[j] for j in range(len(input_index)) if (combo >> j) & 1]))
            raise TrivialCodespaceError(cert)

    @property
    def codespace_dim(self) -> int:
        return 1 << (self.n - self.m)

    def membership(self, p: PauliOperator) -> Membership:
        if p.n != self.n:
            raise DimensionError(f"operator on {p.n} qubits, group on {self.n}")
        if not p.is_hermitian:
            raise ValidationError(f"{p} is not Hermitian")
        hit = self.decompose(p.check_row)
        if hit is None:
            return Membership.NEITHER
        return Membership.IN_GROUP if hit[1] == p else Membership.NEGATION_IN_GROUP

    def __contains__(self, p: PauliOperator) -> bool:
        return self.membership(p) is Membership.IN_GROUP

    def element(self, row: int) -> PauliOperator:
        """The unique group element with check row ``row``."""
        hit = self.decompose(row)
        if hit is None:
            raise ValidationError("check row is not in the group's row space")
        return hit[1]

    def same_group(self, other: StabilizerGroup) -> bool:
        return (
            self.n == other.n
            and self.m == other.m
            and all(g in self for g in other.generators)
        )

    def restrict(self, mask: int) -> StabilizerGroup:
        """Subgroup of elements whose check rows vanish on the columns in ``mask``.

        Gaussian elimination with pivots restricted to ``mask`` columns; rows left
        with no ``mask`` bits span the subgroup and keep exact signs.
        """
        pivots: dict[int, tuple[int, PauliOperator]] = {}
        inside: list[PauliOperator] = []
        for g in self.generators:
            row, op = g.check_row, g
            while row & mask:
                c = row & mask
                low = c & -c
                hit = pivots.get(low)
                if hit is None:
                    pivots[low] = (row, op)
                    break
                row ^= hit[0]
                op = op * hit[1]
            else:
                inside.append(op)
        return StabilizerGroup(inside, n=self.n)

    def supported_in(self, qubits: Iterable[int]) -> StabilizerGroup:
        """``G_S``: elements whose support lies inside ``qubits``."""
        from .gf2 import qubit_mask

        full = (1 << (2 * self.n)) - 1
        return self.restrict(full ^ qubit_mask(qubits, self.n))

    def hamiltonian(self) -> PauliSum:
        """Code Hamiltonian ``-sum_j g_j`` whose ground space is the codespace."""
        return PauliSum.from_terms(self.n, [(-1.0, g) for g in self.generators])


def validate(generators: Iterable[PauliOperator], n: int | None = None) -> StabilizerGroup:
    return StabilizerGroup(generators, n)


def membership(G: StabilizerGroup, p: PauliOperator) -> Membership:
    return G.membership(p)


def enumerate_elements(G: GeneratorSet, cap: int | None = None) -> Iterator[PauliOperator]:
    return G.elements(cap)


def _lex_key(op: PauliOperator) -> tuple:
    return (op.weight, tuple(op.check_vector.tolist()))


def nu_local_generators(G: StabilizerGroup, nu: int, backend: str | None = None) -> list[PauliOperator]:
    """Minimal generating set of ``G_nu`` made of elements of weight <= ``nu``.

    Ordered by ascending weight, ties broken by lexicographic check row.
    """
    if nu < 0:
        raise DimensionError("nu must be non-negative")
    if nu == 0 or G.m == 0:
        return []
    k = min(nu, G.n)
    _, raw, _ = get_backend(backend).span_supported(G.packed_rows(), G.n, k, G.m, -1)
    rows = [int.from_bytes(r.astype("<u8").tobytes(), "little") for r in raw]
    candidates = sorted((G.element(r) for r in rows), key=_lex_key)
    chosen: list[PauliOperator] = []
    basis: dict[int, int] = {}
    for op in candidates:
        row = op.check_row
        while row:
            low = row & -row
            b = basis.get(low)
            if b is None:
                basis[low] = row
                chosen.append(op)
                break
            row ^= b
    return chosen


def subgroup_nu(G: StabilizerGroup, nu: int, backend: str | None = None) -> StabilizerGroup:
    """``G_nu``, the subgroup generated by elements of weight at most ``nu``."""
    return StabilizerGroup(nu_local_generators(G, nu, backend), n=G.n)


@dataclass(frozen=True)
class GroupExtension:
    """Sign-flipped extension ``G(b)`` of ``G_nu`` along an ordered minimal generating set.

    ``ordered`` lists ``g_1..g_t``; the first ``s`` are a minimal nu-local set
    (ascending weight, then lexicographic check row) and the rest complete it
    using the base group's generators in their original order.
    """

    base: StabilizerGroup
    nu: int
    ordered: tuple[PauliOperator, ...]
    s: int
    b: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.ordered)

    @property
    def generators(self) -> tuple[PauliOperator, ...]:
        head = self.ordered[: self.s]
        tail = tuple(-g if bit else g for g, bit in zip(self.ordered[self.s :], self.b))
        return head + tail

    @property
    def group(self) -> StabilizerGroup:
        return StabilizerGroup(self.generators, n=self.base.n)


def ordered_generators(G: StabilizerGroup, nu: int, backend: str | None = None) -> tuple[tuple[PauliOperator, ...], int]:
    """Return ``(g_1..g_t, s)`` with ``g_1..g_s`` generating ``G_nu``."""
    local = nu_local_generators(G, nu, backend)
    basis: dict[int, int] = {}
    ordered = []
    for op in list(local) + list(G.generators):
        row = op.check_row
        while row:
            low = row & -row
            b = basis.get(low)
            if b is None:
                basis[low] = row
                ordered.append(op)
                break
            row ^= b
    return tuple(ordered), len(local)


def extension(G: StabilizerGroup, nu: int, b, backend: str | None = None) -> GroupExtension:
    ordered, s = ordered_generators(G, nu, backend)
    if s == len(ordered):
        raise PreconditionError(f"nu={nu} is not below eta(G): the nu-local elements generate G")
    bits = as_bitvector(b)
    if bits.size != len(ordered) - s:
        raise DimensionError(f"b has length {bits.size}, expected t - s = {len(ordered) - s}")
    return GroupExtension(G, nu, ordered, s, tuple(int(v) for v in bits))


def extend(G: StabilizerGroup, nu: int, b, backend: str | None = None) -> StabilizerGroup:
    """``G(b)``: flip the signs of the non-local generators ``g_j`` (j > s) where ``b_j = 1``."""
    return extension(G, nu, b, backend).group


def projector(G: StabilizerGroup, cap: int | None = None) -> np.ndarray:
    """Dense codespace projector ``(1/|G|) sum_{g in G} g``."""
    n = G.n
    _pauli._check_dense_cap(n, cap)
    dim = 1 << n
    j = np.arange(dim)
    parity = _pauli._parity_table(n)
    out = np.zeros((dim, dim), dtype=complex)
    for g in G.elements():
        xm = _pauli._reverse_bits(g.x, n)
        zm = _pauli._reverse_bits(g.z, n)
        out[j ^ xm, j] += _pauli._PHASES[g.phase] * (1 - 2 * parity[j & zm])
    return out / G.order


def random_stabilizer_group(n: int, m: int, seed=None, *, rng: np.random.Generator | None = None) -> StabilizerGroup:
    """Random stabilizer group with ``m`` independent generators and random signs.

    Generators are drawn by rejection: a uniformly random Pauli pattern is kept
    when it commutes with, and is independent of, those already chosen.
    """
    if not 0 <= m <= n:
        raise DimensionError(f"need 0 <= m <= n, got m={m}, n={n}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    gens: list[PauliOperator] = []
    basis: dict[int, int] = {}
    while len(gens) < m:
        x = int(rng.integers(0, 1 << n)) if n else 0
        z = int(rng.integers(0, 1 << n)) if n else 0
        cand = PauliOperator.hermitian(n, x, z, 1 if rng.random() < 0.5 else -1)
        if not all(cand.commutes(g) for g in gens):
            continue
        row = cand.check_row
        while row:
            low = row & -row
            b = basis.get(low)
            if b is None:
                break
            row ^= b
        if not row:
            continue
        basis[row & -row] = row
        gens.append(cand)
    return StabilizerGroup(gens, n=n)


def css_group(hx, hz, signs_x=None, signs_z=None) -> StabilizerGroup:
    """XZ-split group from X-type checks ``hx`` and Z-type checks ``hz`` (rows = checks)."""
    hx = BitMatrix(hx)
    hz = BitMatrix(hz)
    n = hx.cols if hx.rows else hz.cols
    if hx.rows and hz.rows and hx.cols != hz.cols:
        raise DimensionError("hx and hz must have the same number of columns")
    sx = np.zeros(hx.rows, dtype=np.uint8) if signs_x is None else as_bitvector(signs_x, hx.rows)
    sz = np.zeros(hz.rows, dtype=np.uint8) if signs_z is None else as_bitvector(signs_z, hz.rows)
    zero = np.zeros(n, dtype=np.uint8)
    gens = [PauliOperator.from_bits(r, zero, -1 if s else 1) for r, s in zip(hx.data, sx)]
    gens += [PauliOperator.from_bits(zero, r, -1 if s else 1) for r, s in zip(hz.data, sz)]
    return StabilizerGroup(gens, n=n)


def random_xz_split_group(n: int, mx: int, mz: int, seed=None, *, rng: np.random.Generator | None = None) -> StabilizerGroup:
    """Random XZ-split group: ``mx`` independent X checks and ``mz`` Z checks orthogonal to them."""
    if mx < 0 or mz < 0 or mx + mz > n:
        raise DimensionError(f"need mx + mz <= n, got {mx} + {mz} > {n}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    from .gf2 import left_null_basis, rank

    while True:
        hx = rng.integers(0, 2, size=(mx, n)).astype(np.uint8)
        if rank(BitMatrix(hx)) == mx:
            break
    # Z checks live in the null space of hx (as column vectors)
    null = left_null_basis(BitMatrix(hx).T) if mx else BitMatrix(np.eye(n, dtype=np.uint8))
    while True:
        coeffs = rng.integers(0, 2, size=(mz, null.rows)).astype(np.uint8)
        hz = (coeffs.astype(np.int64) @ null.data.astype(np.int64)) & 1 if mz else np.zeros((0, n), np.uint8)
        if rank(BitMatrix(hz)) == mz:
            break
    sx = rng.integers(0, 2, size=mx)
    sz = rng.integers(0, 2, size=mz)
    return css_group(hx.reshape(mx, n), np.asarray(hz).reshape(mz, n), sx, sz)


def group_from_check_matrix(A: BitMatrix, signs=None, *, strict: bool = True) -> GeneratorSet:
    """Build a group from a check matrix ``(A_X | A_Z)`` and per-row sign bits."""
    if A.cols % 2:
        raise DimensionError("check matrix must have 2n columns")
    n = A.cols // 2
    signs = np.zeros(A.rows, dtype=np.uint8) if signs is None else as_bitvector(signs, A.rows)
    gens = [
        PauliOperator.from_bits(r[:n], r[n:], -1 if s else 1) for r, s in zip(A.data, signs)
    ]
    cls = StabilizerGroup if strict else GeneratorSet
    return cls(gens, n=n)


__all__ = [
    "ENUMERATION_CAP",
    "GeneratorSet",
    "GroupExtension",
    "Membership",
    "StabilizerGroup",
    "css_group",
    "enumerate_elements",
    "extend",
    "extension",
    "group_from_check_matrix",
    "membership",
    "nu_local_generators",
    "ordered_generators",
    "projector",
    "random_stabilizer_group",
    "random_xz_split_group",
    "subgroup_nu",
    "validate",
]
