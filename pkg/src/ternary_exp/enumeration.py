"""Brute-force solutions of a^x + b^y = c^z and desk-scale lemma checks.

All equality decisions are made on exact Python ints.  The bulk search
first compares residues modulo two 32-bit primes (a necessary condition for
equality) and only confirms the rare matches with big-integer arithmetic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, NamedTuple, Sequence, Set, Tuple, Union

import numpy as np

from .modarith import is_prime, primes_in_range
from .tables import GENERAL_TABLE, TableEntry

MAX_BOUND = 1000

_MOD1 = 4294967291
_MOD2 = 4294967279


@dataclass(frozen=True)
class Triple:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 2:
            raise ValueError(f"bases must exceed 1: {self.astuple()}")
        if gcd(self.a, self.b) != 1 or gcd(self.a, self.c) != 1 or gcd(self.b, self.c) != 1:
            raise ValueError(f"bases are not pairwise coprime: {self.astuple()}")

    def astuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)


TripleLike = Union[Triple, Sequence[int]]


class ParityClass(NamedTuple):
    x_parity: str
    y_parity: str

    def __str__(self) -> str:
        return f"({self.x_parity}, {self.y_parity})"


class Solution(NamedTuple):
    x: int
    y: int
    z: int


def _triple(t: TripleLike) -> Triple:
    return t if isinstance(t, Triple) else Triple(*t)


def _check_bound(bound: int) -> None:
    if not 1 <= bound <= MAX_BOUND:
        raise ValueError(f"bound must be in [1, {MAX_BOUND}], got {bound}")


def parity_class(s: Sequence[int]) -> ParityClass:
    name = ("even", "odd")
    return ParityClass(name[s[0] % 2], name[s[1] % 2])


def _residues(base: int, bound: int, m: int) -> np.ndarray:
    out = np.empty(bound, dtype=np.uint64)
    r = 1
    for i in range(bound):
        r = r * base % m
        out[i] = r
    return out


def _keys(base: int, bound: int) -> np.ndarray:
    return _residues(base, bound, _MOD1) | (_residues(base, bound, _MOD2) << np.uint64(32))


def solutions_by_c(a: int, b: int, cs: Iterable[int], bound: int) -> Dict[int, List[Solution]]:
    """Solutions with max(x, y, z) <= bound for every c in ``cs`` at once.

    Coprimality is not checked here; callers pick valid triples.
    """
    _check_bound(bound)
    cs = list(cs)
    targets: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for c in cs:
        for z, k in enumerate(_keys(c, bound).tolist(), start=1):
            targets[k].append((c, z))
    if not targets:
        return {}
    ka1 = _residues(a, bound, _MOD1)
    ka2 = _residues(a, bound, _MOD2)
    kb1 = _residues(b, bound, _MOD1)
    kb2 = _residues(b, bound, _MOD2)
    s1 = (ka1[:, None] + kb1[None, :]) % np.uint64(_MOD1)
    s2 = (ka2[:, None] + kb2[None, :]) % np.uint64(_MOD2)
    keys = s1 | (s2 << np.uint64(32))
    hits = np.argwhere(np.isin(keys, np.fromiter(targets, dtype=np.uint64)))
    found: Dict[int, List[Solution]] = {c: [] for c in cs}
    for i, j in hits.tolist():
        x, y = i + 1, j + 1
        total = a**x + b**y
        for c, z in targets[int(keys[i, j])]:
            if c**z == total:
                found[c].append(Solution(x, y, z))
    for sols in found.values():
        sols.sort()
    return found


def find_solutions(t: TripleLike, bound: int) -> List[Solution]:
    """All (x, y, z) with max(x, y, z) <= bound, sorted lexicographically."""
    t = _triple(t)
    return solutions_by_c(t.a, t.b, [t.c], bound)[t.c]


def count_by_class(solutions: Iterable[Sequence[int]]) -> Dict[ParityClass, int]:
    counts: Dict[ParityClass, int] = defaultdict(int)
    for s in solutions:
        counts[parity_class(s)] += 1
    return dict(counts)


def check_parity_uniqueness(t: TripleLike, bound: int) -> List[ParityClass]:
    """Parity classes holding two or more solutions (c must be an odd prime)."""
    t = _triple(t)
    if t.c % 2 == 0 or not is_prime(t.c):
        raise ValueError(f"c = {t.c} is not an odd prime")
    counts = count_by_class(find_solutions(t, bound))
    return sorted(k for k, n in counts.items() if n >= 2)


def parity_sweep(limit: int, bound: int) -> List[Tuple[Tuple[int, int, int], List[ParityClass]]]:
    """Run the parity-uniqueness check over every coprime a < b <= limit
    and odd prime c <= limit.  Returns the offending triples only."""
    odd_primes = [p for p in primes_in_range(3, limit + 1)]
    bad = []
    for a in range(2, limit + 1):
        for b in range(a + 1, limit + 1):
            if gcd(a, b) != 1:
                continue
            cs = [c for c in odd_primes if a % c and b % c]
            for c, sols in solutions_by_c(a, b, cs, bound).items():
                if len(sols) < 2:
                    continue
                classes = sorted(k for k, n in count_by_class(sols).items() if n >= 2)
                if classes:
                    bad.append(((a, b, c), classes))
    return sorted(bad)


def multi_solution_prime_triples(limit: int, bound: int) -> Dict[Tuple[int, int, int], List[Solution]]:
    """Distinct-prime triples a < b, max(a, b, c) < limit, with >= 2 solutions."""
    primes = list(primes_in_range(2, limit))
    out = {}
    for i, a in enumerate(primes):
        for b in primes[i + 1 :]:
            cs = [c for c in primes if c not in (a, b)]
            for c, sols in solutions_by_c(a, b, cs, bound).items():
                if len(sols) >= 2:
                    out[(a, b, c)] = sols
    return dict(sorted(out.items()))


@dataclass
class EntryReport:
    label: str
    # (triple, expected, found) for each instance; family (i) has several
    instances: List[Tuple[Tuple[int, int, int], frozenset, frozenset]] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return all(exp == got for _, exp, got in self.instances)


def verify_conjecture_table(bound: int) -> List[EntryReport]:
    if bound < 16:
        raise ValueError("bound must be >= 16 to cover the largest listed exponent")
    reports = []
    for label, entries in GENERAL_TABLE.items():
        rep = EntryReport(label)
        for e in entries:
            found = frozenset(tuple(s) for s in find_solutions(e.triple, bound))
            rep.instances.append((e.triple, e.solutions, found))
        reports.append(rep)
    return reports


def verify_entry(entry: TableEntry, bound: int) -> bool:
    return frozenset(tuple(s) for s in find_solutions(entry.triple, bound)) == entry.solutions


def pillai_collisions(exp_bound: int) -> Set[int]:
    """All d = 3^m - 2^n = 3^x - 2^y with m != x, exponents in [1, exp_bound]."""
    firsts: Dict[int, Set[int]] = defaultdict(set)
    for m in range(1, exp_bound + 1):
        p3 = 3**m
        for n in range(1, exp_bound + 1):
            firsts[p3 - 2**n].add(m)
    return {d for d, ms in firsts.items() if len(ms) >= 2}


def gap_lemma_exceptions(X_bound: int, n_bound: int) -> List[Tuple[int, int]]:
    """Odd X <= X_bound, 1 < n <= n_bound with |X^2 - 2^n| <= 2^(0.26 n)."""
    out = []
    for X in range(1, X_bound + 1, 2):
        sq = X * X
        for n in range(2, n_bound + 1):
            # |D| <= 2^(13n/50)  <=>  |D|^50 <= 2^(13n)
            if abs(sq - 2**n) ** 50 <= 1 << (13 * n):
                out.append((X, n))
    return out


def bennett_pairs(c: int, b: int, exp_bound: int) -> List[Tuple[int, int]]:
    """Pairs (z, y) with 0 < |c^z - b^y| < max(c^(z/2), b^(y/2)) / 4."""
    if b < 2 or c < 2:
        raise ValueError("bases must be >= 2")
    out = []
    y, by = 1, b  # b**y <= c**z < b**(y+1) maintained below when possible
    for z in range(1, exp_bound + 1):
        cz = c**z
        while by * b <= cz:
            y += 1
            by *= b
        # only the two powers of b bracketing c^z can be that close
        for yy, byy in ((y, by), (y + 1, by * b)):
            if yy > exp_bound:
                continue
            diff = cz - byy
            if diff and 16 * diff * diff < max(cz, byy):
                out.append((z, yy))
    return out


def bennett_pair_count(c: int, b: int, exp_bound: int) -> int:
    if exp_bound > 100:
        raise ValueError("exp_bound must be <= 100")
    return len(bennett_pairs(c, b, exp_bound))
