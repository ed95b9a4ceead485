"""Surface codes from cellulations of closed surfaces.

A :class:`Cellulation` lists edges as vertex pairs (parallel edges allowed,
loops rejected) and faces as closed edge walks.  Qubit ``i`` is edge ``i``;
faces give X checks and vertex stars give Z checks.  Indices are 0-based in
the API; error messages use 1-based ids to match the file format.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .gf2 import BitMatrix, rank
from .pauli import PauliOperator
from .stabilizer import StabilizerGroup


def _face_walk(face: Sequence[int], edges: Sequence[tuple[int, int]]) -> list[int] | None:
    """Vertex sequence ``v0, v1, ..., v_k = v0`` traced by ``face``, or ``None`` if it is not a closed walk."""
    first = edges[face[0]]
    for start, nxt in (first, first[::-1]):
        walk = [start, nxt]
        for e in face[1:]:
            u, v = edges[e]
            if u == walk[-1]:
                walk.append(v)
            elif v == walk[-1]:
                walk.append(u)
            else:
                break
        else:
            if walk[-1] == walk[0]:
                return walk
    return None


@dataclass(frozen=True)
class Cellulation:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "faces", tuple(tuple(int(e) for e in f) for f in self.faces))
        self._validate()

    def _validate(self) -> None:
        V, E = self.n_vertices, len(self.edges)
        if V < 1 or E < 1 or not self.faces:
            raise ValidationError("cellulation needs at least one vertex, edge and face")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < V and 0 <= v < V):
                raise ValidationError(f"edge {i + 1} has an endpoint outside 1..{V}")
            if u == v:
                raise ValidationError(f"edge {i + 1} is a self-loop")
        uses = Counter()
        for f, face in enumerate(self.faces):
            if not face:
                raise ValidationError(f"face {f + 1} is empty")
            for e in face:
                if not 0 <= e < E:
                    raise ValidationError(f"face {f + 1} references unknown edge {e + 1}")
            if len(set(face)) != len(face):
                raise ValidationError(f"face {f + 1} repeats an edge")
            if _face_walk(face, self.edges) is None:
                raise ValidationError(f"face {f + 1} is not a closed edge walk")
            uses.update(face)
        for e in range(E):
            if uses[e] != 2:
                raise ValidationError(f"edge {e + 1} lies on {uses[e]} faces, expected 2")
        # connectivity over the 1-skeleton
        adj = defaultdict(list)
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != V:
            missing = min(set(range(V)) - seen)
            raise ValidationError(f"cellulation is disconnected (vertex {missing + 1} unreachable)")

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.n_vertices, len(self.edges), len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        V, E, F = self.counts
        return V - E + F

    def valences(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def face_sizes(self) -> list[int]:
        return [len(f) for f in self.faces]

    def star(self, v: int) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if v in (a, b)]

    def edge_faces(self) -> list[tuple[int, int]]:
        where = defaultdict(list)
        for f, face in enumerate(self.faces):
            for e in face:
                where[e].append(f)
        return [tuple(where[e]) for e in range(len(self.edges))]


@dataclass(frozen=True)
class BoundaryPair:
    D_X: BitMatrix
    D_Z: BitMatrix

    def commute(self) -> bool:
        return (self.D_X.T @ self.D_Z).is_zero()


def boundary_matrices(c: Cellulation) -> BoundaryPair:
    """``D_X`` (edges x faces) and ``D_Z`` (edges x vertices) over GF(2)."""
    V, E, F = c.counts
    dx = np.zeros((E, F), dtype=np.uint8)
    for f, face in enumerate(c.faces):
        dx[list(face), f] = 1
    dz = np.zeros((E, V), dtype=np.uint8)
    for e, (u, v) in enumerate(c.edges):
        dz[e, u] = 1
        dz[e, v] = 1
    return BoundaryPair(BitMatrix(dx), BitMatrix(dz))


def surface_check_matrix(c: Cellulation) -> BitMatrix:
    """Full (redundant) check matrix ``diag(D_X^T, D_Z^T)``: face rows first, then vertex rows."""
    bp = boundary_matrices(c)
    V, E, F = c.counts
    A = np.zeros((F + V, 2 * E), dtype=np.uint8)
    A[:F, :E] = bp.D_X.T.data
    A[F:, E:] = bp.D_Z.T.data
    return BitMatrix(A)


def homology_dim(c: Cellulation) -> int:
    """``dim H_1(surface; F_2) = |E| - rank D_X - rank D_Z``."""
    bp = boundary_matrices(c)
    return len(c.edges) - rank(bp.D_X) - rank(bp.D_Z)


def build_code(c: Cellulation) -> StabilizerGroup:
    """Face X-checks followed by vertex Z-checks, all with sign +.

    Dependent checks (the product of all faces, of all stars) are dropped by
    the group constructor; the check matrix spans the rows of
    :func:`surface_check_matrix`.
    """
    bp = boundary_matrices(c)
    if not bp.commute():
        raise ValidationError("face and vertex checks do not commute")
    E = len(c.edges)
    zero = np.zeros(E, dtype=np.uint8)
    gens = [PauliOperator.from_bits(col, zero) for col in bp.D_X.T.data]
    gens += [PauliOperator.from_bits(zero, col) for col in bp.D_Z.T.data]
    return StabilizerGroup(gens, n=E)


def dual(c: Cellulation) -> Cellulation:
    """Dual cellulation: a vertex per face, an edge per edge, a face per vertex star.

    Dual face ``v`` lists the edges around ``v`` in the cyclic order given by
    the corners of the faces meeting at ``v``; this needs the link of every
    vertex to be a single cycle.
    """
    edge_faces = c.edge_faces()
    # corners: consecutive edges of a face walk meet at a vertex
    corner = defaultdict(list)
    for face in c.faces:
        walk = _face_walk(face, c.edges)
        k = len(face)
        for i in range(k):
            a, b = face[i], face[(i + 1) % k]
            v = walk[i + 1]
            corner[(v, a)].append(b)
            corner[(v, b)].append(a)
    new_faces = []
    for v in range(c.n_vertices):
        star = c.star(v)
        cycle = [star[0]]
        prev = None
        cur = star[0]
        while True:
            options = list(corner[(v, cur)])
            if prev is not None and prev in options:
                options.remove(prev)
            nxt = options[0]
            if nxt == cycle[0]:
                break
            cycle.append(nxt)
            prev, cur = cur, nxt
            if len(cycle) > len(star):
                break
        if sorted(cycle) != sorted(star):
            raise ValidationError(f"link of vertex {v + 1} is not a single cycle")
        new_faces.append(tuple(cycle))
    return Cellulation(len(c.faces), tuple(edge_faces), tuple(new_faces))


def toric(L: int) -> Cellulation:
    """``L x L`` square cellulation of the torus.

    Vertex ``(x, y)`` is ``y*L + x``; horizontal edge ``(x, y) -> (x+1, y)`` is
    ``y*L + x`` and vertical edge ``(x, y) -> (x, y+1)`` is ``L*L + y*L + x``.
    """
    if L < 2:
        raise ValueError(f"toric lattice size must be >= 2, got {L}")
    vid = lambda x, y: (y % L) * L + (x % L)  # noqa: E731
    h = lambda x, y: (y % L) * L + (x % L)  # noqa: E731
    vv = lambda x, y: L * L + (y % L) * L + (x % L)  # noqa: E731
    edges = [None] * (2 * L * L)
    for y in range(L):
        for x in range(L):
            edges[h(x, y)] = (vid(x, y), vid(x + 1, y))
            edges[vv(x, y)] = (vid(x, y), vid(x, y + 1))
    faces = [
        (h(x, y), vv(x + 1, y), h(x, y + 1), vv(x, y)) for y in range(L) for x in range(L)
    ]
    return Cellulation(L * L, tuple(edges), tuple(faces))


def theta() -> Cellulation:
    """Sphere from two vertices joined by three parallel edges; three bigon faces."""
    return Cellulation(2, ((0, 1), (0, 1), (0, 1)), ((0, 1), (1, 2), (2, 0)))


def valence_counterexample() -> Cellulation:
    """Sphere whose code has a weight-2 element although every valence and face size is >= 3.

    Two parallel edges ``a-b`` form an equator.  Each hemisphere is a disc
    bounded by it, triangulated with two interior vertices ``c``, ``d``::

        (a b c), (a c d), (c d b), (a d b)

    The equator bounds either hemisphere, so X on its two edges is the
    product of one hemisphere's face checks.
    """
    a, b = 0, 1
    edges = [(a, b), (a, b)]
    faces = []
    for c, d in ((2, 3), (4, 5)):
        base = len(edges)
        ac, cb, ad, db, cd = range(base, base + 5)
        edges += [(a, c), (c, b), (a, d), (d, b), (c, d)]
        faces += [(0, ac, cb), (ac, cd, ad), (cd, db, cb), (1, ad, db)]
    return Cellulation(6, tuple(edges), tuple(faces))


def subdivide_edge(c: Cellulation, e: int) -> Cellulation:
    """Insert a new vertex in the middle of edge ``e``; the new half is appended as the last edge."""
    if not 0 <= e < len(c.edges):
        raise ValidationError(f"edge {e + 1} does not exist")
    u, v = c.edges[e]
    w = c.n_vertices
    new = len(c.edges)
    edges = list(c.edges)
    edges[e] = (u, w)
    edges.append((w, v))
    faces = []
    for face in c.faces:
        if e not in face:
            faces.append(face)
            continue
        walk = _face_walk(face, c.edges)
        i = face.index(e)
        forward = walk[i] == u
        pair = (e, new) if forward else (new, e)
        faces.append(face[:i] + pair + face[i + 1:])
    return Cellulation(w + 1, tuple(edges), tuple(faces))


__all__ = [
    "BoundaryPair",
    "Cellulation",
    "boundary_matrices",
    "build_code",
    "dual",
    "homology_dim",
    "subdivide_edge",
    "surface_check_matrix",
    "theta",
    "toric",
    "valence_counterexample",
]
