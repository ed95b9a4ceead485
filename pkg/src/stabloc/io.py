"""Text formats for check matrices and cellulations.

Check matrix::

    3 2
    +100|001
    +001|010

Cellulation (1-based ids)::

    VERTICES 2
    EDGES
    1 1 2
    ...
    FACES
    1 1 2
    ...

Blank lines and ``#`` comments are ignored in both.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .pauli import PauliOperator
from .stabilizer import GeneratorSet, StabilizerGroup
from .surface import Cellulation


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_check_matrix(text: str) -> tuple[int, list[PauliOperator]]:
    """Return ``(n, generators)`` exactly as listed (no reduction)."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty check-matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"header must be 'n m', got {header!r}", lineno)
    n, m = int(parts[0]), int(parts[1])
    if n < 1:
        raise ParseError("n must be positive", lineno)
    rows = lines[1:]
    if len(rows) != m:
        where = rows[-1][0] if rows else lineno
        raise ParseError(f"header declares {m} rows, found {len(rows)}", where)
    gens = []
    for lineno, line in rows:
        sign_ch, body = line[0], line[1:]
        if sign_ch not in "+-−":
            raise ParseError(f"row must start with '+' or '-', got {sign_ch!r}", lineno)
        halves = body.split("|")
        if len(halves) != 2 or len(halves[0]) != n or len(halves[1]) != n:
            raise ParseError(f"row must be {n} x-bits '|' {n} z-bits", lineno)
        if set(halves[0] + halves[1]) - {"0", "1"}:
            raise ParseError("bits must be 0 or 1", lineno)
        x = sum(1 << k for k, ch in enumerate(halves[0]) if ch == "1")
        z = sum(1 << k for k, ch in enumerate(halves[1]) if ch == "1")
        gens.append(PauliOperator.hermitian(n, x, z, 1 if sign_ch == "+" else -1))
    return n, gens


def format_check_matrix(n: int, generators) -> str:
    out = [f"{n} {len(generators)}"]
    for g in generators:
        xs = "".join("1" if g.x >> k & 1 else "0" for k in range(n))
        zs = "".join("1" if g.z >> k & 1 else "0" for k in range(n))
        out.append(("+" if g.sign > 0 else "-") + xs + "|" + zs)
    return "\n".join(out) + "\n"


def load_group(path, strict: bool = True) -> GeneratorSet:
    """Read a check-matrix file into a :class:`StabilizerGroup` (or a bare :class:`GeneratorSet`)."""
    n, gens = parse_check_matrix(Path(path).read_text())
    return StabilizerGroup(gens, n=n) if strict else GeneratorSet(gens, n=n)


def parse_cellulation(text: str) -> Cellulation:
    section = None
    n_vertices = None
    edges: dict[int, tuple[int, int]] = {}
    faces: dict[int, tuple[int, ...]] = {}
    for lineno, line in _lines(text):
        head = line.split()
        key = head[0].upper()
        if key in ("VERTICES", "EDGES", "FACES"):
            section = key
            if key == "VERTICES" and len(head) > 1:
                n_vertices = _int(head[1], lineno)
            elif len(head) > 1:
                raise ParseError(f"unexpected text after {key}", lineno)
            continue
        nums = [_int(t, lineno) for t in head]
        if section == "VERTICES":
            if n_vertices is not None or len(nums) != 1:
                raise ParseError("VERTICES takes a single count", lineno)
            n_vertices = nums[0]
        elif section == "EDGES":
            if len(nums) != 3:
                raise ParseError("edge lines are 'id u v'", lineno)
            if nums[0] in edges:
                raise ParseError(f"duplicate edge id {nums[0]}", lineno)
            edges[nums[0]] = (nums[1] - 1, nums[2] - 1)
        elif section == "FACES":
            if len(nums) < 2:
                raise ParseError("face lines are 'id e1 e2 ...'", lineno)
            if nums[0] in faces:
                raise ParseError(f"duplicate face id {nums[0]}", lineno)
            faces[nums[0]] = tuple(e - 1 for e in nums[1:])
        else:
            raise ParseError("data before any section header", lineno)
    if n_vertices is None:
        raise ParseError("missing VERTICES count")
    for name, table in (("edge", edges), ("face", faces)):
        if sorted(table) != list(range(1, len(table) + 1)):
            raise ParseError(f"{name} ids must be exactly 1..{len(table)}")
    return Cellulation(
        n_vertices,
        tuple(edges[i] for i in range(1, len(edges) + 1)),
        tuple(faces[i] for i in range(1, len(faces) + 1)),
    )


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def format_cellulation(c: Cellulation) -> str:
    out = [f"VERTICES {c.n_vertices}", "EDGES"]
    out += [f"{i + 1} {u + 1} {v + 1}" for i, (u, v) in enumerate(c.edges)]
    out.append("FACES")
    out += [f"{i + 1} " + " ".join(str(e + 1) for e in f) for i, f in enumerate(c.faces)]
    return "\n".join(out) + "\n"


def load_cellulation(path) -> Cellulation:
    return parse_cellulation(Path(path).read_text())
