"""Dense numerical certificates for the locality theorems.

Every check verifies its own hypotheses first and raises
:class:`PreconditionError` when they fail, so a ``passed=False`` certificate
always means the bound itself was violated.

Norm convention: ``||.||_tr`` here is the norm induced by ``Trace(A B^dagger)``,
i.e. the Frobenius (Hilbert-Schmidt) norm, not the Schatten-1 norm.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, PreconditionError
from .locality import delta, eta
from .pauli import PauliSum, _check_dense_cap, sum_to_dense
from .stabilizer import (
    GeneratorSet,
    Membership,
    StabilizerGroup,
    extension,
    ordered_generators,
    projector,
    subgroup_nu,
)

RTOL = 1e-8
TRACE_TOL = 1e-9
BOUND_TOL = 1e-9
EXTENSION_CAP = 1 << 12


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    e_norm: float
    tol: float
    ground_dim: int
    ambiguous: bool

    def gap(self, q: int) -> float:
        """``E_q - E_0``."""
        return float(self.eigenvalues[q] - self.eigenvalues[0])

    def ground_projector(self, dim: int | None = None) -> np.ndarray:
        k = self.ground_dim if dim is None else dim
        V = self.eigenvectors[:, :k]
        return V @ V.conj().T

    def subspaces(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Projectors onto the negative, zero and positive eigenspaces."""
        out = []
        E = self.eigenvalues
        for sel in (E < -self.tol, np.abs(E) <= self.tol, E > self.tol):
            V = self.eigenvectors[:, sel]
            out.append(V @ V.conj().T)
        return tuple(out)


def diagonalize(h: PauliSum, cap: int | None = None, rtol: float = RTOL) -> SpectralReport:
    """Full eigendecomposition of ``h`` (ascending eigenvalues)."""
    _check_dense_cap(h.n, cap)
    H = sum_to_dense(h, cap)
    evals, evecs = np.linalg.eigh(H)
    e_norm = float(np.linalg.norm(H))
    tol = rtol * max(1.0, e_norm)
    E0 = evals[0]
    ground = int(np.count_nonzero(evals <= E0 + tol))
    # a spectrum is ambiguous when an eigenvalue sits just outside the tolerance window
    loose = int(np.count_nonzero(evals <= E0 + 100 * tol))
    return SpectralReport(evals, evecs, e_norm, tol, ground, loose != ground)


def code_hamiltonian(G: GeneratorSet) -> PauliSum:
    """``-sum_j g_j`` over the reduced generators of ``G``."""
    return PauliSum.from_terms(G.n, [(-1.0, g) for g in G.generators])


def random_local_hamiltonian(n: int, k: int, seed=None, qubits=None) -> PauliSum:
    """Traceless ``k``-local Hamiltonian with every admissible Pauli term present.

    Coefficients are uniform in ``[-1, 1]``.  With ``qubits`` given, terms are
    supported inside that set only.
    """
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    pool = sorted(range(n) if qubits is None else set(qubits))
    if any(not 0 <= q < n for q in pool):
        raise ValueError("qubit outside range")
    rng = np.random.default_rng(seed)
    terms = {}
    for w in range(1, min(k, len(pool)) + 1):
        for supp in itertools.combinations(pool, w):
            for letters in itertools.product((1, 2, 3), repeat=w):
                x = z = 0
                for q, l in zip(supp, letters):
                    if l & 1:
                        x |= 1 << q
                    if l & 2:
                        z |= 1 << q
                terms[(x, z)] = 0.0
    coeffs = rng.uniform(-1.0, 1.0, size=len(terms))
    return PauliSum(n, dict(zip(terms, coeffs.tolist())))


def _require_traceless(h: PauliSum, n: int) -> None:
    if h.n != n:
        raise PreconditionError(f"Hamiltonian acts on {h.n} qubits, group on {n}")
    if not h.is_traceless(0.0):
        raise PreconditionError("Hamiltonian is not traceless")


def _delta_or_inf(G: StabilizerGroup) -> float:
    return math.inf if G.m == 0 else delta(G).value


@dataclass(frozen=True)
class VanishingTraceCertificate:
    trace: float
    e_norm: float
    tolerance: float
    witness: np.ndarray
    expectation: float
    locality: int
    delta: float
    trace_ok: bool
    witness_ok: bool

    @property
    def passed(self) -> bool:
        return self.trace_ok and self.witness_ok

    def as_dict(self) -> dict:
        return {
            "trace": self.trace,
            "e_norm": self.e_norm,
            "tolerance": self.tolerance,
            "expectation": self.expectation,
            "locality": self.locality,
            "delta": None if math.isinf(self.delta) else int(self.delta),
            "trace_ok": self.trace_ok,
            "witness_ok": self.witness_ok,
        }


def check_theorem1(G: StabilizerGroup, h: PauliSum, cap: int | None = None) -> VanishingTraceCertificate:
    """``Trace(P_G H) = 0`` and some codespace vector has ``<psi|H|psi> >= 0``.

    Requires ``h`` traceless with locality below ``delta(G)``.
    """
    _require_traceless(h, G.n)
    _check_dense_cap(G.n, cap)
    d = _delta_or_inf(G)
    k = h.locality
    if k >= d:
        raise PreconditionError(f"Hamiltonian is {k}-local but delta(G) = {int(d)}")
    H = sum_to_dense(h, cap)
    P = projector(G, cap)
    e_norm = float(np.linalg.norm(H))
    tol = TRACE_TOL * max(1.0, e_norm)
    trace = float(np.trace(P @ H).real)
    # orthonormal codespace basis, then the top eigenvector of H compressed to it
    w, U = np.linalg.eigh(P)
    V = U[:, w > 0.5]
    M = V.conj().T @ H @ V
    mu, W = np.linalg.eigh((M + M.conj().T) / 2)
    psi = V @ W[:, -1]
    expectation = float(np.vdot(psi, H @ psi).real)
    return VanishingTraceCertificate(
        trace, e_norm, tol, psi, expectation, k, d, abs(trace) <= tol, expectation >= -BOUND_TOL
    )


@dataclass(frozen=True)
class ExtensionTraceCertificate:
    b: tuple[int, ...]
    trace_g: float
    trace_gb: float
    difference: float
    tolerance: float
    case_member: int
    case_nonmember: int

    @property
    def passed(self) -> bool:
        return self.difference <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "b": list(self.b),
            "trace_g": self.trace_g,
            "trace_gb": self.trace_gb,
            "difference": self.difference,
            "tolerance": self.tolerance,
            "case_member": self.case_member,
            "case_nonmember": self.case_nonmember,
        }


def _eta_gate(G: StabilizerGroup, nu: int, h: PauliSum) -> int:
    _require_traceless(h, G.n)
    e = eta(G).value
    if not nu < e:
        raise PreconditionError(f"nu = {nu} is not below eta(G) = {e}")
    if h.locality > nu:
        raise PreconditionError(f"Hamiltonian is {h.locality}-local, exceeds nu = {nu}")
    return e


def check_theorem2(G: StabilizerGroup, nu: int, b, h: PauliSum, cap: int | None = None) -> ExtensionTraceCertificate:
    """``Trace(P_G H) = Trace(P_{G(b)} H)`` for a ``nu``-local traceless ``h`` and ``nu < eta(G)``."""
    _check_dense_cap(G.n, cap)
    _eta_gate(G, nu, h)
    ext = extension(G, nu, b)
    H = sum_to_dense(h, cap)
    tg = float(np.trace(projector(G, cap) @ H).real)
    tb = float(np.trace(projector(ext.group, cap) @ H).real)
    member = sum(1 for _, op in h.terms() if G.membership(op.unsigned()) is not Membership.NEITHER)
    tol = TRACE_TOL * max(1.0, float(np.linalg.norm(H)))
    return ExtensionTraceCertificate(ext.b, tg, tb, abs(tg - tb), tol, member, len(h) - member)


@dataclass(frozen=True)
class SpanCertificate:
    nu: int
    s: int
    t: int
    extensions: int
    rank: int
    dimension: int
    local_codespace_dim: int

    @property
    def spans(self) -> bool:
        return self.rank == self.dimension

    @property
    def conclusion(self) -> str:
        if self.spans:
            return f"no {self.nu}-local Hamiltonian has the codespace as its exact ground eigenspace"
        return "extensions do not span the full space; no conclusion"

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["spans"] = self.spans
        d["conclusion"] = self.conclusion
        return d


def check_corollary3_span(G: StabilizerGroup, nu: int, cap: int | None = None, max_extensions: int = EXTENSION_CAP) -> SpanCertificate:
    """Sum the projectors of all ``2**(t-s)`` sign extensions and test whether they span ``C^(2^n)``."""
    _check_dense_cap(G.n, cap)
    e = eta(G).value
    if not nu < e:
        raise PreconditionError(f"nu = {nu} is not below eta(G) = {e}")
    ordered, s = ordered_generators(G, nu)
    t = len(ordered)
    count = 1 << (t - s)
    if count > max_extensions:
        raise BudgetExceeded("extension count", count, None, 0)
    dim = 1 << G.n
    acc = np.zeros((dim, dim), dtype=complex)
    for bits in itertools.product((0, 1), repeat=t - s):
        acc += projector(extension(G, nu, bits).group, cap)
    w = np.linalg.eigvalsh(acc)
    rank = int(np.count_nonzero(w > RTOL * max(1.0, float(w[-1]))))
    r = subgroup_nu(G, nu).codespace_dim
    return SpanCertificate(nu, s, t, count, rank, dim, r)


@dataclass(frozen=True)
class BoundEvaluation:
    name: str
    lhs: float
    rhs: float
    inputs: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def satisfied(self) -> bool:
        return self.slack >= -BOUND_TOL

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "inputs": self.inputs,
        }


def _ground_gate(G: StabilizerGroup, rep: SpectralReport) -> None:
    q = G.codespace_dim
    if rep.ambiguous:
        raise PreconditionError("ground multiplicity is ambiguous at the classification tolerance")
    if rep.ground_dim != q:
        raise PreconditionError(f"ground eigenspace has dimension {rep.ground_dim}, codespace has {q}")


def check_gap_pinch(G: StabilizerGroup, nu: int, h: PauliSum, cap: int | None = None) -> tuple[BoundEvaluation, BoundEvaluation]:
    """Evaluate the projector-distance bound and its gap form.

    Returns ``(theorem, corollary)``:

    * theorem: ``||P_G - P_H|| >= (q/||E||) (mean(E_0..E_{r-1}) - E_0)``
    * corollary: ``||P_G - P_H|| >= q ||E||^-2 ((r-q)/r) (E_q - E_0)``

    The second inequality follows from the first only when ``||E|| >= 1``; it
    is evaluated exactly as stated.
    """
    _check_dense_cap(G.n, cap)
    _eta_gate(G, nu, h)
    rep = diagonalize(h, cap)
    _ground_gate(G, rep)
    q = G.codespace_dim
    r = subgroup_nu(G, nu).codespace_dim
    E = rep.eigenvalues
    E0 = float(E[0])
    partial = float(E[:r].sum())
    gap = rep.gap(q)
    lhs = float(np.linalg.norm(projector(G, cap) - rep.ground_projector(q)))
    inputs = {"q": q, "r": r, "e_norm": rep.e_norm, "partial_sum": partial, "E0": E0, "gap": gap}
    thm = BoundEvaluation("theorem", lhs, q / rep.e_norm * (partial / r - E0), inputs)
    cor = BoundEvaluation("corollary", lhs, q * rep.e_norm**-2 * ((r - q) / r) * gap, inputs)
    return thm, cor


@dataclass(frozen=True)
class TraceIdentity:
    lhs: float
    rhs: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.lhs - self.rhs) <= self.tolerance


def trace_identity(G: StabilizerGroup, nu: int, h: PauliSum, cap: int | None = None) -> TraceIdentity:
    """``Trace(P_G H) = (q/r) Trace(P_{G_nu} H)`` for ``nu``-local traceless ``h``."""
    _check_dense_cap(G.n, cap)
    _eta_gate(G, nu, h)
    H = sum_to_dense(h, cap)
    Gnu = subgroup_nu(G, nu)
    q, r = G.codespace_dim, Gnu.codespace_dim
    lhs = float(np.trace(projector(G, cap) @ H).real)
    rhs = q / r * float(np.trace(projector(Gnu, cap) @ H).real)
    return TraceIdentity(lhs, rhs, TRACE_TOL)


__all__ = [
    "BoundEvaluation",
    "SpanCertificate",
    "SpectralReport",
    "VanishingTraceCertificate",
    "ExtensionTraceCertificate",
    "TraceIdentity",
    "check_corollary3_span",
    "check_gap_pinch",
    "check_theorem1",
    "check_theorem2",
    "code_hamiltonian",
    "diagonalize",
    "random_local_hamiltonian",
    "trace_identity",
]
