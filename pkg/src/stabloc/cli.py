"""``stabloc`` command-line interface.

Exit status: 0 all verdicts pass, 1 usage or parse error, 2 unmet hypothesis
or exhausted budget, 3 a certified bound was violated.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from . import io as sio
from .errors import BudgetExceeded, ParseError, PreconditionError, ResourceError, ValidationError
from .locality import css_locality, delta, delta_oracle, eta, eta_oracle
from .pauli import PauliSum
from .spectral import (
    check_corollary3_span,
    check_gap_pinch,
    check_theorem1,
    check_theorem2,
    random_local_hamiltonian,
    trace_identity,
)
from .stabilizer import StabilizerGroup, ordered_generators
from .surface import build_code, homology_dim, toric, valence_counterexample

SCHEMA = "1"
EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class RunReport:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.verdicts: list[dict] = []
        self.timing: dict[str, float] = {}
        self.text: list[str] = []

    def verdict(self, name: str, passed: bool, measured, tolerance) -> None:
        self.verdicts.append(
            {"name": name, "pass": bool(passed), "measured": measured, "tolerance": tolerance}
        )

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = self.timing.get(name, 0.0) + time.perf_counter() - t0

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.verdicts)

    def to_json(self) -> str:
        body = {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "verdicts": self.verdicts,
            "timing": self.timing,
        }
        return json.dumps(body, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = list(self.text)
        for v in self.verdicts:
            mark = "PASS" if v["pass"] else "FAIL"
            lines.append(f"[{mark}] {v['name']}: measured {v['measured']} (tolerance {v['tolerance']})")
        return "\n".join(lines)


def _subset_text(subset) -> str:
    return "{" + ",".join(str(q + 1) for q in subset) + "}"


# metric commands


def _metric(args, kind: str) -> RunReport:
    rep = RunReport(kind, {"path": str(args.path), "oracle": args.oracle, "budget": args.budget})
    with rep.phase("parse"):
        # delta only needs the check matrix, so anticommuting generator lists are accepted
        G = sio.load_group(args.path, strict=kind == "eta")
    run = delta if kind == "delta" else eta
    with rep.phase("algorithm"):
        r = run(G, budget=args.budget)
    rep.results = r.as_dict()
    rep.results["n"] = G.n
    rep.results["m"] = G.m
    line = f"{kind} = {r.value}"
    if args.oracle:
        with rep.phase("oracle"):
            o = (delta_oracle if kind == "delta" else eta_oracle)(G)
        agree = o.value == r.value
        rep.results["oracle_value"] = o.value
        rep.verdict(f"{kind}_oracle_agreement", agree, o.value, 0)
        line += " (oracle agrees)" if agree else f" (oracle reports {o.value})"
    rep.text.append(line)
    if kind == "delta":
        rep.text.append(f"witness = {r.witness.label}")
        rep.text.append(f"subset = {_subset_text(r.subset)}")
    else:
        rep.text.append("witness = " + ", ".join(g.label for g in r.witness))
    rep.text.append(f"subsets examined = {r.subsets_examined}")
    return rep


# surface


def cmd_surface(args) -> RunReport:
    rep = RunReport("surface", {"kind": args.kind, "arg": args.arg, "emit": args.emit})
    with rep.phase("build"):
        if args.kind == "toric":
            if args.arg is None:
                raise UsageError("surface toric needs L")
            c = toric(_int_arg(args.arg, "L"))
        elif args.kind == "from":
            if args.arg is None:
                raise UsageError("surface from needs a cellulation file")
            c = sio.load_cellulation(args.arg)
        else:
            c = valence_counterexample()
        G = build_code(c)
    V, E, F = c.counts
    h1 = homology_dim(c)
    rep.results = {
        "vertices": V,
        "edges": E,
        "faces": F,
        "n": G.n,
        "m": G.m,
        "q": G.codespace_dim,
        "euler_characteristic": c.euler_characteristic,
        "homology_dim": h1,
        "min_valence": min(c.valences()),
        "min_face_size": min(c.face_sizes()),
    }
    rep.verdict("codespace_matches_homology", G.codespace_dim == 2**h1, G.codespace_dim, 0)
    if args.kind == "counterexample":
        with rep.phase("delta"):
            d = delta(G)
        rep.results["delta"] = d.value
        rep.results["delta_witness"] = d.witness.label
    if args.emit:
        Path(args.emit).write_text(sio.format_check_matrix(G.n, G.generators))
    rep.text.append(
        f"n = {G.n}, m = {G.m}, q = {G.codespace_dim}, chi = {c.euler_characteristic}, dim H1 = {h1}"
    )
    rep.text.append(f"min valence = {rep.results['min_valence']}, min face size = {rep.results['min_face_size']}")
    if "delta" in rep.results:
        rep.text.append(f"delta = {rep.results['delta']}")
    return rep


def _int_arg(s: str, name: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {s!r}") from None


# verify


def _hamiltonian(n: int, k: int, seed: int, qubits=None) -> PauliSum:
    if k <= 0:
        return PauliSum.zero(n)
    if qubits is not None:
        k = min(k, len(qubits))
    return random_local_hamiltonian(n, k, seed, qubits=qubits)


def _default_nu(G: StabilizerGroup, nu: int | None) -> int:
    if nu is not None:
        return nu
    e = eta(G).value
    if e < 2:
        raise PreconditionError(f"eta(G) = {e}: no nu >= 1 lies below it")
    return e - 1


def _parse_b(s: str | None, length: int):
    if s is None:
        return list(itertools.product((0, 1), repeat=length))
    s = s.strip()
    if set(s) - {"0", "1"}:
        raise UsageError(f"--b must be a bit string, got {s!r}")
    return [tuple(int(ch) for ch in s)]


def verify_theorem1(G, args, rep):
    d = delta(G).value if G.m else math.inf
    k = G.n if math.isinf(d) else d - 1
    worst_trace, worst_exp = 0.0, math.inf
    ok_trace = ok_witness = True
    tol = None
    for i in range(args.trials):
        h = _hamiltonian(G.n, k, args.seed + i)
        c = check_theorem1(G, h)
        tol = c.tolerance if tol is None else max(tol, c.tolerance)
        worst_trace = max(worst_trace, abs(c.trace))
        worst_exp = min(worst_exp, c.expectation)
        ok_trace &= c.trace_ok
        ok_witness &= c.witness_ok
    rep.results = {"delta": None if math.isinf(d) else d, "locality": k, "trials": args.trials}
    rep.verdict("trace_vanishes", ok_trace, worst_trace, tol)
    rep.verdict("codespace_not_in_negative_space", ok_witness, worst_exp, -1e-9)


def verify_theorem2(G, args, rep):
    nu = _default_nu(G, args.nu)
    ordered, s = ordered_generators(G, nu)
    patterns = _parse_b(args.b, len(ordered) - s)
    worst, tol, ok = 0.0, 0.0, True
    member = nonmember = 0
    for b in patterns:
        for i in range(args.trials):
            c = check_theorem2(G, nu, b, _hamiltonian(G.n, nu, args.seed + i))
            worst = max(worst, c.difference)
            tol = max(tol, c.tolerance)
            ok &= c.passed
            member += c.case_member
            nonmember += c.case_nonmember
    rep.results = {
        "nu": nu,
        "s": s,
        "t": len(ordered),
        "extensions_checked": len(patterns),
        "trials": args.trials,
        "terms_in_group": member,
        "terms_outside_group": nonmember,
    }
    rep.verdict("extension_blind_traces", ok, worst, tol)


def verify_corollary3(G, args, rep):
    nu = _default_nu(G, args.nu)
    c = check_corollary3_span(G, nu)
    rep.results = c.as_dict()
    rep.verdict("extension_sum_rank_equals_local_codespace", c.rank == c.local_codespace_dim, c.rank, 0)
    rep.text.append(c.conclusion)


def verify_gap_pinch(G, args, rep):
    nu = _default_nu(G, args.nu)
    # keep log2(q) qubits free so a generic Hamiltonian has a q-fold ground space
    free = G.n - G.m
    active = list(range(G.n - free))
    worst = {"theorem": math.inf, "corollary": math.inf}
    ok = {"theorem": True, "corollary": True}
    ident_ok, ident_worst = True, 0.0
    used = skipped = 0
    for i in range(args.trials):
        h = _hamiltonian(G.n, nu, args.seed + i, qubits=active)
        try:
            bounds = check_gap_pinch(G, nu, h)
        except PreconditionError:
            skipped += 1
            continue
        used += 1
        for b in bounds:
            worst[b.name] = min(worst[b.name], b.slack)
            ok[b.name] &= b.satisfied
        ti = trace_identity(G, nu, h)
        ident_ok &= ti.passed
        ident_worst = max(ident_worst, abs(ti.lhs - ti.rhs))
    if not used:
        raise PreconditionError("no trial Hamiltonian had a ground space of dimension q")
    rep.results = {"nu": nu, "instances": used, "skipped": skipped, "trials": args.trials}
    rep.verdict("theorem_bound", ok["theorem"], worst["theorem"], -1e-9)
    rep.verdict("corollary_bound", ok["corollary"], worst["corollary"], -1e-9)
    rep.verdict("trace_identity", ident_ok, ident_worst, 1e-9)


def verify_css(G, args, rep):
    c = css_locality(G)
    rep.results = c.as_dict()
    dmin = min(v for v in (c.delta_x, c.delta_z) if v is not None)
    rep.verdict("delta_is_min", c.delta == dmin, c.delta, 0)
    rep.verdict("eta_is_max", c.eta == max(c.eta_x, c.eta_z), c.eta, 0)


VERIFIERS = {
    "theorem1": verify_theorem1,
    "theorem2": verify_theorem2,
    "corollary3": verify_corollary3,
    "gap-pinch": verify_gap_pinch,
    "css": verify_css,
}


def cmd_verify(args) -> RunReport:
    rep = RunReport(
        f"verify {args.which}",
        {"path": str(args.path), "seed": args.seed, "trials": args.trials, "nu": args.nu, "b": args.b},
    )
    with rep.phase("parse"):
        G = sio.load_group(args.path)
    with rep.phase("verify"):
        VERIFIERS[args.which](G, args, rep)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stabloc", description="Locality of stabilizer codes")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for kind in ("delta", "eta"):
        sp = sub.add_parser(kind, help=f"compute {kind}(G) from a check-matrix file")
        sp.add_argument("path")
        sp.add_argument("--oracle", action="store_true", help="cross-check by full enumeration")
        sp.add_argument("--budget", type=int, default=None, help="max subsets examined")
        sp.add_argument("--format", choices=("text", "json"), default="text")
    sp = sub.add_parser("surface", help="build a surface code")
    sp.add_argument("kind", choices=("toric", "from", "counterexample"))
    sp.add_argument("arg", nargs="?")
    sp.add_argument("--emit", metavar="FILE")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp = sub.add_parser("verify", help="certify a theorem numerically")
    sp.add_argument("which", choices=tuple(VERIFIERS))
    sp.add_argument("path")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--nu", type=int, default=None)
    sp.add_argument("--b", default=None, help="sign-flip bit string for theorem2")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("delta", "eta"):
            rep = _metric(args, args.command)
        elif args.command == "surface":
            rep = cmd_surface(args)
        else:
            rep = cmd_verify(args)
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (PreconditionError, ValidationError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK if rep.passed else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
