"""Command-line driver: sweep, verify, classnum, report.

Exit codes: 0 clean, 1 survivor or table mismatch, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .classnum import class_number_analytic, class_number_forms, z2_candidates
from .enumeration import (
    find_solutions,
    gap_lemma_exceptions,
    multi_solution_prime_triples,
    parity_sweep,
    pillai_collisions,
    verify_conjecture_table,
)
from .modarith import is_prime, primes_in_range
from .sieve import (
    DEFAULT_BUDGET,
    DEFAULT_CAP,
    DEFAULT_MAX_MODULUS,
    ELIMINATED,
    EliminationCertificate,
    default_plan,
    eliminate_b,
    expected_certificates,
)
from .tables import GAP_EXCEPTION_VALUES, PARITY_EXCEPTIONS, PILLAI_VALUES, PRIME_TABLE

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# largest values reported for the full computation
KNOWN_MAX_MODULUS = 241
KNOWN_MAX_MODULI = 14


@dataclass
class SweepConfig:
    b_min: int
    b_max: int
    out_path: str
    max_modulus: int = DEFAULT_MAX_MODULUS
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    resume: bool = False
    exponent_bound: int = 64
    candidate_cap: int = DEFAULT_CAP

    def __post_init__(self) -> None:
        if self.b_min >= self.b_max:
            raise ValueError(f"b_min ({self.b_min}) must be below b_max ({self.b_max})")
        if self.jobs < 1 or self.budget < 1 or self.candidate_cap < 1:
            raise ValueError("jobs, budget and candidate cap must be positive")
        if self.max_modulus < 5:
            raise ValueError("max modulus must be >= 5")


def sweep_bs(b_min: int, b_max: int) -> Iterable[int]:
    """Primes b = 1 mod 12 in [b_min, b_max)."""
    for b in primes_in_range(max(b_min, 13), b_max):
        if b % 12 == 1:
            yield b


def _work(args: Tuple[int, Tuple[int, ...], int, int]) -> Tuple[int, List[str]]:
    b, plan, budget, cap = args
    return b, [c.to_json() for c in eliminate_b(b, plan, budget, cap)]


def read_certificates(path: str) -> Tuple[List[Tuple[int, str, EliminationCertificate]], List[Tuple[int, str]]]:
    """Parse a certificate file into (lineno, line, cert) and (lineno, error)."""
    good, bad = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            try:
                good.append((lineno, line, EliminationCertificate.from_json(line)))
            except (ValueError, TypeError, KeyError) as exc:
                bad.append((lineno, str(exc)))
    return good, bad


def _completed_prefix(path: str) -> Tuple[List[str], set]:
    """Lines of fully recorded b values and the set of those b."""
    good, _ = read_certificates(path)
    by_b: Dict[int, List[str]] = {}
    for _, line, cert in good:
        by_b.setdefault(cert.b, []).append(line)
    keep, done = [], set()
    for b, lines in by_b.items():
        try:
            complete = len(lines) == expected_certificates(b)
        except ValueError:
            complete = False
        if complete:
            keep.extend(lines)
            done.add(b)
    return keep, done


class _Summary:
    def __init__(self) -> None:
        self.eliminated = 0
        self.survivors: List[EliminationCertificate] = []
        self.max_used = 0
        self.max_modulus = 0
        self.n_b = 0

    def add(self, cert: EliminationCertificate) -> None:
        if cert.outcome == ELIMINATED:
            self.eliminated += 1
        else:
            self.survivors.append(cert)
        self.max_used = max(self.max_used, cert.moduli_used)
        self.max_modulus = max(self.max_modulus, cert.max_modulus)


def exact_follow_up(b: int, bound: int) -> List[Tuple[int, List[Tuple[int, int, int]]]]:
    """Exact search for c = 2^x1 + b^y1 (x1, y1 even, <= bound) with a
    second solution of 2^x + b^y = c^z.  Returns (c, solutions) hits."""
    hits = []
    for x1 in range(2, bound + 1, 2):
        for y1 in range(2, bound + 1, 2):
            c = 2**x1 + b**y1
            sols = find_solutions((2, b, c), bound)
            if len(sols) >= 2:
                hits.append((c, [tuple(s) for s in sols]))
    return hits


def cmd_sweep(cfg: SweepConfig, stream=None) -> int:
    stream = stream or sys.stdout
    plan = tuple(default_plan(cfg.max_modulus))
    done: set = set()
    try:
        if cfg.resume and os.path.exists(cfg.out_path):
            keep, done = _completed_prefix(cfg.out_path)
            tmp = cfg.out_path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.writelines(line + "\n" for line in keep)
            os.replace(tmp, cfg.out_path)
        out = open(cfg.out_path, "a" if cfg.resume else "w", encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot open {cfg.out_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    summary = _Summary()
    todo = [(b, plan, cfg.budget, cfg.candidate_cap) for b in sweep_bs(cfg.b_min, cfg.b_max) if b not in done]
    pool = Pool(cfg.jobs) if cfg.jobs > 1 and len(todo) > 1 else None
    try:
        results = pool.imap(_work, todo, chunksize=8) if pool else map(_work, todo)
        # single writer; one write per b keeps an interrupted file a valid prefix
        for b, lines in results:
            out.write("".join(line + "\n" for line in lines))
            out.flush()
            summary.n_b += 1
            for line in lines:
                summary.add(EliminationCertificate.from_json(line))
    except OSError as exc:
        print(f"error: writing {cfg.out_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if pool:
            pool.terminate()
        out.close()

    print(f"b values processed: {summary.n_b} (resumed past {len(done)})", file=stream)
    print(f"eliminated: {summary.eliminated}", file=stream)
    print(f"survivors: {len(summary.survivors)}", file=stream)
    print(f"max moduli used: {summary.max_used}", file=stream)
    print(f"max modulus touched: {summary.max_modulus}", file=stream)
    if summary.max_used > KNOWN_MAX_MODULI or summary.max_modulus > KNOWN_MAX_MODULUS:
        print(
            f"warning: exceeded {KNOWN_MAX_MODULI} moduli or modulus {KNOWN_MAX_MODULUS}",
            file=sys.stderr,
        )
    for cert in summary.survivors:
        print(f"SURVIVOR b={cert.b} case={cert.case} z2={cert.z2}: {cert.to_json()}", file=stream)
    for b in sorted({c.b for c in summary.survivors}):
        hits = exact_follow_up(b, cfg.exponent_bound)
        if hits:
            print(f"  b={b}: EXACT second solutions found: {hits}", file=stream)
        else:
            print(f"  b={b}: no exact second solution with exponents <= {cfg.exponent_bound}", file=stream)
    return EXIT_FAIL if summary.survivors else EXIT_OK


def cmd_verify(exponent_bound: int, stream=None) -> int:
    stream = stream or sys.stdout
    if exponent_bound < 16:
        print("error: exponent bound must be >= 16", file=sys.stderr)
        return EXIT_USAGE
    ok = True

    reports = verify_conjecture_table(exponent_bound)
    n_match = sum(r.match for r in reports)
    print(f"general table: {n_match}/{len(reports)} entries match", file=stream)
    for r in reports:
        for triple, exp, got in r.instances:
            if exp != got:
                ok = False
                print(f"  MISMATCH ({r.label}) {triple}: expected {sorted(exp)} found {sorted(got)}", file=stream)

    multi = multi_solution_prime_triples(100, exponent_bound)
    expected = {e.triple: e.solutions for e in PRIME_TABLE}
    found = {t: frozenset(tuple(s) for s in sols) for t, sols in multi.items()}
    print(f"prime triples below 100 with >= 2 solutions: {len(found)}", file=stream)
    if found != expected:
        ok = False
        for t in sorted(set(found) | set(expected)):
            if found.get(t) != expected.get(t):
                print(f"  MISMATCH {t}: expected {sorted(expected.get(t, ()))} found {sorted(found.get(t, ()))}", file=stream)

    bad = [(t, cls) for t, cls in parity_sweep(100, exponent_bound) if t not in PARITY_EXCEPTIONS]
    print(f"parity-class uniqueness violations (bases <= 100): {len(bad)}", file=stream)
    for t, cls in bad:
        ok = False
        print(f"  VIOLATION {t}: classes {[str(c) for c in cls]}", file=stream)

    pillai = pillai_collisions(exponent_bound)
    print(f"3^m - 2^n collisions: {sorted(pillai)}", file=stream)
    if pillai != PILLAI_VALUES:
        ok = False

    gaps = gap_lemma_exceptions(100, 30)
    stray = [(X, n) for X, n in gaps if X * X - 2**n not in GAP_EXCEPTION_VALUES]
    print(f"small |X^2 - 2^n| pairs: {gaps}", file=stream)
    if stray:
        ok = False
        print(f"  UNEXPECTED {stray}", file=stream)

    print("verify: OK" if ok else "verify: FAILED", file=stream)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classnum(b: int, stream=None) -> int:
    stream = stream or sys.stdout
    if not is_prime(b) or b % 4 != 1:
        print(f"error: {b} is not a prime = 1 mod 4", file=sys.stderr)
        return EXIT_USAGE
    h = class_number_forms(-4 * b)
    h_an = class_number_analytic(-4 * b)
    zs = z2_candidates(b)
    print(f"b={b} d={-4 * b}", file=stream)
    print(f"h (reduced forms) = {h}", file=stream)
    print(f"h (character sum) = {h_an}", file=stream)
    print(f"z2 candidates: {zs if zs else 'none'}", file=stream)
    if h != h_an:
        print("error: class number routes disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_report(cert_path: str, stream=None) -> int:
    stream = stream or sys.stdout
    try:
        good, bad = read_certificates(cert_path)
    except OSError as exc:
        print(f"error: cannot read {cert_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for lineno, err in bad:
        print(f"{cert_path}:{lineno}: malformed certificate: {err}", file=sys.stderr)
    summary = _Summary()
    hist: Counter = Counter()
    bs = set()
    for _, _, cert in good:
        summary.add(cert)
        hist[cert.moduli_used] += 1
        bs.add(cert.b)
    print(f"certificates: {len(good)} (malformed: {len(bad)})", file=stream)
    print(f"distinct b: {len(bs)}", file=stream)
    print(f"eliminated: {summary.eliminated}", file=stream)
    print(f"survivors: {len(summary.survivors)}", file=stream)
    print(f"max modulus: {summary.max_modulus}", file=stream)
    print("moduli used histogram:", file=stream)
    for k in sorted(hist):
        print(f"  {k:3d}: {hist[k]}", file=stream)
    for cert in summary.survivors:
        print(f"SURVIVOR b={cert.b} case={cert.case} z2={cert.z2}", file=stream)
    return EXIT_FAIL if summary.survivors else EXIT_OK


def _load_config(path: Optional[str]) -> Dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    aliases = {"max_prime": "max_modulus", "out": "out_path"}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    return {aliases.get(k, k): v for k, v in cfg.items()}


def build_parser(sweep_defaults: Optional[Dict] = None) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ternary-exp",
        description="Search and elimination tools for 2^x + b^y = c^z style equations over primes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="sieve every prime b = 1 mod 12 in a range")
    sw.add_argument("--config", help="JSON file of flag defaults (flags override it)")
    sw.add_argument("--b-min", type=int, default=13)
    sw.add_argument("--b-max", type=int, default=1000)
    sw.add_argument("--max-prime", dest="max_modulus", type=int, default=DEFAULT_MAX_MODULUS,
                    help="largest sieve modulus (default %(default)s)")
    sw.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="moduli per (b, case, z2)")
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--out", dest="out_path", default="certificates.jsonl")
    sw.add_argument("--resume", action="store_true")
    sw.add_argument("--exponent-bound", type=int, default=64)
    sw.add_argument("--candidate-cap", type=int, default=DEFAULT_CAP)
    if sweep_defaults:
        sw.set_defaults(**sweep_defaults)

    vf = sub.add_parser("verify", help="check the known solution tables and lemma values")
    vf.add_argument("--exponent-bound", type=int, default=64)

    cn = sub.add_parser("classnum", help="class number of -4b and admissible z2")
    cn.add_argument("b", type=int)

    rp = sub.add_parser("report", help="summarize a certificate file")
    rp.add_argument("cert_path")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    defaults = None
    if known.config and argv and argv[0] == "sweep":
        try:
            defaults = _load_config(known.config)
        except (OSError, ValueError) as exc:
            print(f"error: bad config {known.config}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    args = build_parser(defaults).parse_args(argv)

    if args.command == "sweep":
        try:
            cfg = SweepConfig(
                b_min=args.b_min,
                b_max=args.b_max,
                out_path=args.out_path,
                max_modulus=args.max_modulus,
                budget=args.budget,
                jobs=args.jobs,
                resume=args.resume,
                exponent_bound=args.exponent_bound,
                candidate_cap=args.candidate_cap,
            )
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return cmd_sweep(cfg)
    if args.command == "verify":
        return cmd_verify(args.exponent_bound)
    if args.command == "classnum":
        return cmd_classnum(args.b)
    return cmd_report(args.cert_path)


if __name__ == "__main__":
    sys.exit(main())
