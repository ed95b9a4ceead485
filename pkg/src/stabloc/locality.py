"""Locality measures of stabilizer groups.

``delta(G)`` is the least weight of a non-identity element, found as the
smallest qubit set ``S`` whose column zeroing drops the rank of the check
matrix.  ``eta(G)`` is the least ``k`` such that elements supported on some
``k`` qubits generate ``G``; it accumulates the row-space vectors supported in
each ``k``-subset until their span is the whole row space.

Both searches are exponential in the answer.  ``budget`` caps the number of
subsets examined and raises :class:`BudgetExceeded` with the best bounds known.
The ``*_oracle`` variants enumerate all ``2**m`` group elements instead and
share no code with the subset searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ._kernels import EXHAUSTED, FOUND, get_backend
from .errors import BudgetExceeded, ConsistencyError, PreconditionError, ValidationError
from .gf2 import left_null_basis, zero_columns
from .pauli import PauliOperator
from .stabilizer import GeneratorSet, StabilizerGroup


@dataclass(frozen=True)
class LocalityReport:
    kind: str
    value: int
    witness: Union[PauliOperator, tuple[PauliOperator, ...], None]
    subsets_examined: int
    method: str
    subset: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        if isinstance(self.witness, PauliOperator):
            witness = self.witness.label
        elif self.witness is None:
            witness = None
        else:
            witness = [g.label for g in self.witness]
        return {
            "kind": self.kind,
            "value": self.value,
            "witness": witness,
            "subset": None if self.subset is None else [q + 1 for q in self.subset],
            "subsets_examined": self.subsets_examined,
            "method": self.method,
        }


def _row_weight(row: int, n: int) -> int:
    mask = (1 << n) - 1
    return ((row & mask) | (row >> n)).bit_count()


def _remaining(budget: int | None, used: int) -> int:
    return -1 if budget is None else max(budget - used, 0)


def delta(G: GeneratorSet, budget: int | None = None, backend: str | None = None) -> LocalityReport:
    """Minimum weight of a non-identity element, by subset rank drop.

    Works on the check matrix alone, so any :class:`GeneratorSet` is accepted;
    elements are compared up to phase.
    """
    if G.m == 0:
        raise PreconditionError("delta is undefined for the trivial group")
    kernels = get_backend(backend)
    rows = G.packed_rows()
    examined = 0
    for k in range(1, G.n + 1):
        status, subset, ex = kernels.first_rank_drop(rows, G.n, k, G.m, _remaining(budget, examined))
        examined += int(ex)
        if status == FOUND:
            witness = _delta_witness(G, subset)
            if witness.weight != k:
                raise ConsistencyError(f"witness {witness} has weight {witness.weight}, expected {k}")
            return LocalityReport("delta", k, witness, examined, "algorithm", tuple(subset))
        if status == EXHAUSTED:
            upper = min(g.weight for g in G.generators)
            raise BudgetExceeded("delta", k, upper, examined)
    raise ConsistencyError("no rank drop found although the group is nontrivial")


def _delta_witness(G: GeneratorSet, subset) -> PauliOperator:
    A = G.check_matrix
    null = left_null_basis(zero_columns(A, subset, G.n))
    for v in null.data:
        # rows of A are independent, so every nonzero left-null vector of A_S works
        if v.any():
            combo = sum(1 << j for j, b in enumerate(v) if b)
            return G.product(combo)
    raise ConsistencyError(f"rank of A_S dropped for S={subset} but no left-null vector found")


def delta_oracle(G: GeneratorSet, cap: int | None = None) -> LocalityReport:
    """``delta`` by enumerating all ``2**m`` generator products."""
    if G.m == 0:
        raise PreconditionError("delta is undefined for the trivial group")
    best, best_combo = None, 0
    combo = 0
    for i, row in enumerate(G.check_rows(cap)):
        if i:
            combo ^= 1 << ((i & -i).bit_length() - 1)
        if row:
            w = _row_weight(row, G.n)
            if best is None or w < best:
                best, best_combo = w, combo
    return LocalityReport("delta", best, G.product(best_combo), G.order, "oracle")


def _require_stabilizer(G: GeneratorSet) -> StabilizerGroup:
    if not isinstance(G, StabilizerGroup):
        try:
            return StabilizerGroup(G.generators, n=G.n)
        except ValidationError as exc:
            raise ValidationError(f"eta needs a stabilizer group with nontrivial codespace: {exc}") from exc
    return G


def eta(G: GeneratorSet, budget: int | None = None, backend: str | None = None) -> LocalityReport:
    """Least ``k`` such that elements of weight <= ``k`` generate ``G``.

    The witness is a generating set read off the accumulated supported vectors,
    each of weight at most the returned value.
    """
    G = _require_stabilizer(G)
    if G.m == 0:
        return LocalityReport("eta", 0, (), 0, "algorithm")
    kernels = get_backend(backend)
    rows = G.packed_rows()
    examined = 0
    for k in range(1, G.n + 1):
        status, raw, ex = kernels.span_supported(rows, G.n, k, G.m, _remaining(budget, examined))
        examined += int(ex)
        if status == FOUND:
            witness = tuple(
                G.element(int.from_bytes(r.astype("<u8").tobytes(), "little")) for r in raw
            )
            if any(g.weight > k for g in witness):
                raise ConsistencyError("eta witness contains an element above the returned weight")
            return LocalityReport("eta", k, witness, examined, "algorithm")
        if status == EXHAUSTED:
            upper = max(g.weight for g in G.generators)
            raise BudgetExceeded("eta", k, upper, examined)
    raise ConsistencyError("supported subgroups never spanned G")


def eta_oracle(G: GeneratorSet, cap: int | None = None) -> LocalityReport:
    """``eta`` by enumerating ``G``, sorting by weight, and growing a span until it is full."""
    G = _require_stabilizer(G)
    if G.m == 0:
        return LocalityReport("eta", 0, (), 1, "oracle")
    rows = sorted((_row_weight(r, G.n), r) for r in G.check_rows(cap) if r)
    basis: dict[int, int] = {}
    chosen = []
    for w, r in rows:
        v = r
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                chosen.append(r)
                break
            v ^= b
        if len(chosen) == G.m:
            return LocalityReport("eta", w, tuple(G.element(c) for c in chosen), G.order, "oracle")
    raise ConsistencyError("enumerated elements do not span the row space")


@dataclass(frozen=True)
class CssSplit:
    is_split: bool
    Gx: StabilizerGroup
    Gz: StabilizerGroup
    reordering: tuple[int, ...] | None

    @property
    def generators(self) -> tuple[PauliOperator, ...]:
        """X-block generators followed by Z-block generators."""
        return self.Gx.generators + self.Gz.generators


def css_split(G: StabilizerGroup) -> CssSplit:
    """Decide whether ``G`` is generated by pure-X and pure-Z tensors.

    ``G_X`` and ``G_Z`` are the subgroups of pure-X and pure-Z elements; ``G`` is
    XZ-split exactly when their ranks add up to ``rank(A)``.  ``reordering``
    lists the generator indices (X-type first) when the given generators are
    themselves all pure, else ``None``.
    """
    G = _require_stabilizer(G)
    n = G.n
    xmask = (1 << n) - 1
    zmask = xmask << n
    Gx = G.restrict(zmask)
    Gz = G.restrict(xmask)
    is_split = Gx.m + Gz.m == G.m
    xs = [i for i, g in enumerate(G.generators) if g.z == 0]
    zs = [i for i, g in enumerate(G.generators) if g.x == 0 and g.z != 0]
    reordering = tuple(xs + zs) if len(xs) + len(zs) == G.m else None
    return CssSplit(is_split, Gx, Gz, reordering)


@dataclass(frozen=True)
class CssLocality:
    delta_x: int | None
    delta_z: int | None
    eta_x: int
    eta_z: int
    delta: int
    eta: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def css_locality(G: StabilizerGroup, backend: str | None = None) -> CssLocality:
    """Component metrics of an XZ-split group, checked against the whole-group values.

    ``delta_x``/``delta_z`` are ``None`` for a trivial component.  Raises
    :class:`ConsistencyError` if ``delta(G) != min`` or ``eta(G) != max``.
    """
    split = css_split(G)
    if not split.is_split:
        raise PreconditionError("group is not XZ-split")
    dx = delta(split.Gx, backend=backend).value if split.Gx.m else None
    dz = delta(split.Gz, backend=backend).value if split.Gz.m else None
    ex = eta(split.Gx, backend=backend).value
    ez = eta(split.Gz, backend=backend).value
    d = delta(G, backend=backend).value
    e = eta(G, backend=backend).value
    expected_d = min(v for v in (dx, dz) if v is not None)
    if d != expected_d:
        raise ConsistencyError(f"delta(G)={d} but min(delta_X, delta_Z)={expected_d}")
    if e != max(ex, ez):
        raise ConsistencyError(f"eta(G)={e} but max(eta_X, eta_Z)={max(ex, ez)}")
    return CssLocality(dx, dz, ex, ez, d, e)
