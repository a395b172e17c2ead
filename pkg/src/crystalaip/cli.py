"""Command-line front end.

Exit codes: 0 when the command succeeds or answers YES, 1 for a negative
outcome such as NO or a failed claim, 2 for bad arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .aip import DEFAULT_SEARCH_CAP, aip_level_k, brute_homomorphism, clique, variable_count
from .album import mine_crystal, realize_with_trace, verify_crystal
from .corpus import generate
from .errors import BalanceError, CapacityError, CrystalAipError, RealismError
from .fooling import (
    certify_main_theorem_witness,
    constant_table,
    first_coordinate_table,
    is_alternating,
    is_polymorphism,
    parity_table,
)
from .io import (
    album_from_json,
    parse_digraph_spec,
    read_json,
    tensor_from_json,
    tensor_to_json,
    write_json,
)

MAX_FOOL_VARIABLES = 50_000


class UsageError(CrystalAipError):
    pass


@dataclass
class Claim:
    name: str
    anchor: str
    expected: object
    observed: object
    wall_time: float

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "wall_time": round(self.wall_time, 6),
        }


@dataclass
class Report:
    command: str
    seed: int
    digest: str
    claims: list[Claim] = field(default_factory=list)

    def check(self, name: str, anchor: str, expected, fn) -> Claim:
        t0 = time.perf_counter()
        observed = fn()
        claim = Claim(name, anchor, expected, observed, time.perf_counter() - t0)
        self.claims.append(claim)
        return claim

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_json(self) -> dict:
        return {
            "tool_version": __version__,
            "command": self.command,
            "seed": self.seed,
            "input_digest": self.digest,
            "claims": [c.to_json() for c in self.claims],
        }


def _digest(parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, str):
            try:
                with open(part, "rb") as fh:
                    h.update(fh.read())
                continue
            except OSError:
                pass
        h.update(repr(part).encode())
    return h.hexdigest()


class _Out:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def __call__(self, *msg):
        if not self.quiet:
            print(*msg)


def cmd_realize(args, out, report: Report) -> int:
    album = album_from_json(read_json(args.album))
    try:
        C, trace = realize_with_trace(album)
    except RealismError as exc:
        i, j, r, s = exc.quadruple
        print(f"not realistic: i={list(i)} j={list(j)} r={list(r)} s={list(s)}: {exc}", file=sys.stderr)
        report.claims.append(Claim("album is realistic", "compatible pictures", True, False, 0.0))
        return 1
    write_json(args.out, tensor_to_json(C))
    if args.trace:
        write_json(args.trace, {"steps": trace.to_json()})
    out(f"realized tensor of shape {list(C.shape)} -> {args.out}")
    return 0


def cmd_crystal(args, out, report: Report) -> int:
    M = tensor_from_json(read_json(args.matrix))
    try:
        C = mine_crystal(M, args.dim)
    except BalanceError as exc:
        print(f"unbalanced matrix: {exc}", file=sys.stderr)
        return 1
    report.check("crystal projections equal M", "every increasing pair projection is M",
                 True, lambda: verify_crystal(C, M))
    write_json(args.out, tensor_to_json(C))
    out(f"{args.dim}-dimensional crystal -> {args.out}")
    return 0 if report.all_pass else 1


def cmd_verify_crystal(args, out, report: Report) -> int:
    C = tensor_from_json(read_json(args.tensor))
    M = tensor_from_json(read_json(args.matrix))
    claim = report.check("crystal projections equal M", "every increasing pair projection is M",
                         True, lambda: verify_crystal(C, M))
    out("crystal OK" if claim.passed else "not a crystal of M")
    return 0 if claim.passed else 1


def cmd_aip(args, out, report: Report) -> int:
    G = parse_digraph_spec(args.g)
    H = parse_digraph_spec(args.h)
    verdict = aip_level_k(G, H, args.level)
    report.claims.append(Claim(f"AIP^{args.level}(G, H)", "integer feasibility of AIP1-AIP4",
                               verdict.label, verdict.label, 0.0))
    if args.witness:
        write_json(args.witness, verdict.witness_json())
    out(verdict.label)
    return 0 if verdict.answer else 1


def cmd_fool(args, out, report: Report) -> int:
    c, d, k = args.c, args.d, args.level
    if not 3 <= c <= d:
        raise UsageError(f"need 3 <= c <= d, got c={c}, d={d}")
    if k < 2:
        raise UsageError(f"need level >= 2, got {k}")
    G = clique(d + 1)
    estimate = variable_count(G, clique(c), k)
    if estimate > MAX_FOOL_VARIABLES:
        raise CapacityError(
            f"AIP system for K{d + 1} vs K{c} at level {k} has {estimate} variables "
            f"(limit {MAX_FOOL_VARIABLES})"
        )
    if d ** (d + 1) > DEFAULT_SEARCH_CAP:
        raise CapacityError(
            f"brute-force search K{d + 1} -> K{d} has {d ** (d + 1)} maps "
            f"(limit {DEFAULT_SEARCH_CAP})"
        )
    report.check(f"AIP^{k}(K{d + 1}, K{c}) by direct solve",
                 "loopless digraphs are accepted against K_n for n >= 3", "YES",
                 lambda: aip_level_k(G, clique(c), k).label)
    report.check(f"crystal witness for K{d + 1}, n={c}, k={k}",
                 "xi is a homomorphism into the free Z_aff structure", True,
                 lambda: bool(certify_main_theorem_witness(G, c, k)))
    report.check(f"K{d + 1} -> K{d} by brute force", "K_{d+1} is not d-colourable", None,
                 lambda: brute_homomorphism(G, clique(d)))
    for claim in report.claims:
        out(f"[{'PASS' if claim.passed else 'FAIL'}] {claim.name}: observed {claim.observed}")
    if args.report:
        write_json(args.report, report.to_json())
    return 0 if report.all_pass else 1


_TABLES = {
    "parity": (parity_table, True, True),
    "constant": (lambda L, labels=(0, 1): constant_table(L, labels[0], labels), True, False),
    "first": (first_coordinate_table, False, True),
}


def cmd_polymorphism(args, out, report: Report) -> int:
    make, alt_expected, poly_expected = _TABLES[args.check]
    L = args.arity
    report.check(f"{args.check} is alternating (L={L})", "odd-arity alternating function",
                 alt_expected, lambda: is_alternating(make(L), L))
    report.check(f"{args.check} is a polymorphism of K2 (L={L})", "homomorphism K2^L -> K2",
                 poly_expected, lambda: is_polymorphism(make(L, (1, 2)), L, clique(2)))
    for claim in report.claims:
        out(f"[{'PASS' if claim.passed else 'FAIL'}] {claim.name}: observed {claim.observed}")
    return 0 if report.all_pass else 1


def cmd_corpus(args, out, report: Report) -> int:
    files = generate(args.seed, args.out)
    out(f"wrote {len(files)} corpus files under {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crystalaip", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--json-report", dest="json_report")
    parser.add_argument("--quiet", action="store_true")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="realise an album of pictures")
    p.add_argument("--album", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("crystal", help="mine a q-dimensional crystal of a balanced matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_crystal)

    p = sub.add_parser("verify-crystal", help="check that a tensor is a crystal of a matrix")
    p.add_argument("--tensor", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_verify_crystal)

    p = sub.add_parser("aip", help="decide the k-th AIP level for (G, H)")
    p.add_argument("--g", required=True, help="digraph JSON file, or Cn / Kn")
    p.add_argument("--h", required=True, help="digraph JSON file, or Cn / Kn")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_aip)

    p = sub.add_parser("fool", help="certify that AIP level k accepts K_{d+1} against K_c")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_fool)

    p = sub.add_parser("polymorphism", help="alternating / polymorphism checks on K2")
    p.add_argument("--check", choices=sorted(_TABLES), default="parity")
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_polymorphism)

    p = sub.add_parser("corpus", help="generate the deterministic test corpus")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = _Out(args.quiet)
    inputs = [v for k, v in sorted(vars(args).items()) if k not in ("func", "quiet", "json_report")]
    report = Report(args.command, args.seed, _digest(inputs))
    try:
        code = args.func(args, out, report)
    except (CrystalAipError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json_report:
        try:
            write_json(args.json_report, report.to_json())
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
