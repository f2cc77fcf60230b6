"""Modular elimination of hypothetical second solutions.

For a prime b = 1 mod 12 a counterexample has the shape

    2^x1 + b^y1 = c              x1, y1 even
    2^x2 + b^y2 = c^z2           x2 even, y2 odd, z2 odd > 1, z2 | h(-4b)

with (b, c) mod 24 in one of three branches, two of which pin x1 = 2 or
x2 = 2.  Modulo a small odd prime power q the powers of 2 and b are periodic,
so every unknown exponent only matters modulo the multiplicative orders of
2 and b.  We keep one global set of exponent-residue tuples modulo a growing
common modulus L and intersect in the constraint from each new q until the
set is empty (no counterexample for this b and z2) or the budget runs out.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .classnum import z2_candidates
from .modarith import (
    ResidueClass,
    carmichael_lambda,
    crt_merge,
    is_prime,
    lcm,
    multiplicative_order,
    prime_power_base,
)

EXPONENTS = ("x1", "y1", "x2", "y2")
PARITY = {"x1": 0, "y1": 0, "x2": 0, "y2": 1}

DEFAULT_MAX_MODULUS = 241
DEFAULT_BUDGET = 14
DEFAULT_CAP = 10**6

ELIMINATED = "eliminated"
SURVIVED = "survived"


@dataclass(frozen=True)
class CaseSplit:
    b_res24: int
    c_res24: int
    forced_x1: Optional[int] = None
    forced_x2: Optional[int] = None

    def __post_init__(self) -> None:
        key = (self.b_res24, self.c_res24)
        if key not in _CASE_FORCING:
            raise ValueError(f"(b, c) = {key} mod 24 is not an admissible branch")
        if (self.forced_x1, self.forced_x2) != _CASE_FORCING[key]:
            raise ValueError(f"branch {key} must force (x1, x2) = {_CASE_FORCING[key]}")
        # small representatives: a free x is >= 4, so 2^x = 16 mod 24
        x1 = self.forced_x1 or 4
        x2 = self.forced_x2 or 4
        b, c = self.b_res24, self.c_res24
        # y1 even, y2 odd, z2 odd and every unit squares to 1 mod 24
        if (2**x1 + b * b) % 24 != c or (2**x2 + b) % 24 != c:
            raise AssertionError(f"branch {key} is inconsistent mod 24")

    @property
    def label(self) -> Tuple[int, int]:
        return (self.b_res24, self.c_res24)

    @property
    def free(self) -> Tuple[str, ...]:
        """Names of the exponents carried as residues, in tuple order."""
        forced = {"x1": self.forced_x1, "x2": self.forced_x2}
        return tuple(n for n in EXPONENTS if forced.get(n) is None)

    def __str__(self) -> str:
        return f"({self.b_res24},{self.c_res24})"


_CASE_FORCING = {(13, 5): (2, None), (13, 17): (None, 2), (1, 17): (None, None)}

CASE_13_5 = CaseSplit(13, 5, forced_x1=2)
CASE_13_17 = CaseSplit(13, 17, forced_x2=2)
CASE_1_17 = CaseSplit(1, 17)
CASES = {c.label: c for c in (CASE_13_5, CASE_13_17, CASE_1_17)}


def case_split(b: int) -> List[CaseSplit]:
    if not is_prime(b):
        raise ValueError(f"{b} is not prime")
    if b % 12 != 1:
        raise ValueError(f"b = {b} is not 1 mod 12; no second solution is possible")
    if b % 24 == 13:
        return [CASE_13_5, CASE_13_17]
    return [CASE_1_17]


@dataclass(frozen=True)
class CandidateSet:
    """Residue tuples sharing one modulus.  Tuple order is ``case.free``."""

    modulus: int
    tuples: FrozenSet[Tuple[int, ...]] = frozenset()

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        for t in self.tuples:
            if any(not 0 <= r < self.modulus for r in t):
                raise ValueError(f"tuple {t} not reduced mod {self.modulus}")

    def __len__(self) -> int:
        return len(self.tuples)

    def __bool__(self) -> bool:
        return bool(self.tuples)

    def lift(self, modulus: int) -> "CandidateSet":
        """Same set of integer tuples, written modulo a multiple of the modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        k = modulus // self.modulus
        steps = [i * self.modulus for i in range(k)]
        out = set()
        for t in self.tuples:
            out.update(product(*[[r + s for s in steps] for r in t]))
        return CandidateSet(modulus, frozenset(out))

    def residue_classes(self, t: Tuple[int, ...]) -> Tuple[ResidueClass, ...]:
        return tuple(ResidueClass(r, self.modulus) for r in t)


def initial_set(case: CaseSplit) -> CandidateSet:
    """The parity-valid space modulo 2: one tuple, no other information."""
    return CandidateSet(2, frozenset({tuple(PARITY[n] for n in case.free)}))


def intersect(s1: CandidateSet, s2: CandidateSet) -> CandidateSet:
    """Tuples (mod lcm) that reduce to a member of each input."""
    m = lcm(s1.modulus, s2.modulus)
    g = gcd(s1.modulus, s2.modulus)
    groups: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = defaultdict(list)
    for t in s2.tuples:
        groups[tuple(r % g for r in t)].append(t)
    out = set()
    for t1 in s1.tuples:
        for t2 in groups.get(tuple(r % g for r in t1), ()):
            if len(t1) != len(t2):
                raise ValueError("tuples of different arity")
            merged = []
            for r1, r2 in zip(t1, t2):
                rc = crt_merge(ResidueClass(r1, s1.modulus), ResidueClass(r2, s2.modulus))
                # compatible mod g already, so the merge always succeeds
                assert rc is not None and rc.modulus == m
                merged.append(rc.residue)
            out.add(tuple(merged))
    return CandidateSet(m, frozenset(out))


class _Local:
    """Power tables for one (b, z2, q)."""

    def __init__(self, b: int, z2: int, q: int, prime_c: bool = True):
        if q < 3 or q % 2 == 0 or prime_power_base(q) is None:
            raise ValueError(f"sieve modulus {q} is not an odd prime power")
        if gcd(q, b) != 1:
            raise ValueError(f"sieve modulus {q} shares a factor with 2b = {2 * b}")
        self.q = q
        self.o2 = multiplicative_order(2, q)
        self.ob = multiplicative_order(b % q, q)
        self.modulus = lcm(2, self.o2, self.ob)
        self.pow2 = [pow(2, e, q) for e in range(self.o2)]
        self.powb = [pow(b, e, q) for e in range(self.ob)]
        self.powz = [pow(c, z2, q) for c in range(q)]
        if prime_c:
            # c is a prime >= 4 + b^2, so it is a unit mod any smaller p
            p = prime_power_base(q)
            if p < 4 + b * b:
                for c in range(0, q, p):
                    self.powz[c] = -1

    def lhs(self, x1: int, y1: int) -> int:
        """c^z2 mod q where c = 2^x1 + b^y1 (x1 < 0 means the forced value 2).

        Returns -1, which matches no right-hand side, for an excluded c.
        """
        p = 4 % self.q if x1 < 0 else self.pow2[x1 % self.o2]
        return self.powz[(p + self.powb[y1 % self.ob]) % self.q]

    def rhs(self, x2: int, y2: int) -> int:
        p = 4 % self.q if x2 < 0 else self.pow2[x2 % self.o2]
        return (p + self.powb[y2 % self.ob]) % self.q


def _split(case: CaseSplit) -> Tuple[List[str], List[str]]:
    free = case.free
    return [n for n in free if n in ("x1", "y1")], [n for n in free if n in ("x2", "y2")]


def _pairs(names: List[str], values: Dict[str, Sequence[int]], first: str, second: str):
    """Yield (free values tuple, (first, second) exponents) with -1 for forced."""
    a_vals = values[first] if first in names else [-1]
    b_vals = values[second]
    for a in a_vals:
        for v in b_vals:
            yield ((a, v) if first in names else (v,)), a, v


def local_candidates(
    b: int, z2: int, case: CaseSplit, q: int, prime_c: bool = True
) -> CandidateSet:
    """All parity-valid residue tuples satisfying both congruences mod q.

    The modulus is lcm(2, ord_q(2), ord_q(b)).  With ``prime_c`` the tuples
    giving c = 0 mod p (q = p^k) are dropped whenever p < 4 + b^2, since c
    is then a prime larger than p.
    """
    if b % 24 != case.b_res24:
        raise ValueError(f"b = {b} does not belong to branch {case}")
    loc = _Local(b, z2, q, prime_c)
    L = loc.modulus
    left, right = _split(case)
    values = {n: range(PARITY[n], L, 2) for n in EXPONENTS}
    by_value: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for free, x2, y2 in _pairs(right, values, "x2", "y2"):
        by_value[loc.rhs(x2, y2)].append(free)
    out = set()
    for free, x1, y1 in _pairs(left, values, "x1", "y1"):
        for tail in by_value.get(loc.lhs(x1, y1), ()):
            out.add(free + tail)
    return CandidateSet(L, frozenset(out))


class CapExceeded(Exception):
    pass


def refine(
    s: CandidateSet,
    b: int,
    z2: int,
    case: CaseSplit,
    q: int,
    cap: Optional[int] = None,
    prime_c: bool = True,
) -> CandidateSet:
    """Equivalent to intersect(s, local_candidates(b, z2, case, q, prime_c)).

    Lifts each tuple directly instead of materializing the local set, which
    can be large at q near 241 when four exponents are free.
    Raises CapExceeded if the result would hold more than ``cap`` tuples.
    """
    loc = _Local(b, z2, q, prime_c)
    L = s.modulus
    M = lcm(L, loc.modulus)
    steps = range(0, M, L)
    left, right = _split(case)
    nl = len(left)
    left_cache: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], int]]] = {}
    right_cache: Dict[Tuple[int, ...], Dict[int, List[Tuple[int, ...]]]] = {}
    out = set()
    for t in s.tuples:
        lkey, rkey = t[:nl], t[nl:]
        lefts = left_cache.get(lkey)
        if lefts is None:
            vals = {n: [r + k for k in steps] for n, r in zip(left, lkey)}
            lefts = [(free, loc.lhs(x1, y1)) for free, x1, y1 in _pairs(left, vals, "x1", "y1")]
            left_cache[lkey] = lefts
        rights = right_cache.get(rkey)
        if rights is None:
            vals = {n: [r + k for k in steps] for n, r in zip(right, rkey)}
            rights = defaultdict(list)
            for free, x2, y2 in _pairs(right, vals, "x2", "y2"):
                rights[loc.rhs(x2, y2)].append(free)
            right_cache[rkey] = rights
        for head, v in lefts:
            for tail in rights.get(v, ()):
                out.add(head + tail)
        if cap is not None and len(out) > cap:
            raise CapExceeded(q)
    return CandidateSet(M, frozenset(out))


@lru_cache(maxsize=None)
def _default_plan(max_modulus: int) -> Tuple[int, ...]:
    # odd prime powers; 3 carries no information once b = 1 mod 12
    pool = [q for q in range(5, max_modulus + 1, 2) if prime_power_base(q) is not None]
    lam = {q: carmichael_lambda(q) for q in pool}
    plan = []
    L = 2
    while pool:
        # grow the exponent modulus as slowly as possible; primes before powers
        q = min(pool, key=lambda q: (lcm(L, lam[q]), prime_power_base(q) != q, q))
        pool.remove(q)
        plan.append(q)
        L = lcm(L, lam[q])
    return tuple(plan)


def default_plan(max_modulus: int = DEFAULT_MAX_MODULUS) -> List[int]:
    if max_modulus < 5:
        raise ValueError("max_modulus must be >= 5")
    return list(_default_plan(max_modulus))


@dataclass
class EliminationCertificate:
    b: int
    case: Tuple[int, int]
    z2: Optional[int]
    # (modulus, surviving count); None marks a modulus that was skipped
    steps: List[Tuple[int, Optional[int]]] = field(default_factory=list)
    outcome: str = SURVIVED
    moduli_used: int = 0

    def to_json(self) -> str:
        rec = {
            "b": self.b,
            "case": list(self.case),
            "z2": self.z2,
            "steps": [list(s) for s in self.steps],
            "outcome": self.outcome,
            "moduli_used": self.moduli_used,
        }
        return json.dumps(rec, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "EliminationCertificate":
        rec = json.loads(line)
        if not isinstance(rec, dict) or list(rec) != ["b", "case", "z2", "steps", "outcome", "moduli_used"]:
            raise ValueError("certificate fields missing or out of order")
        if rec["outcome"] not in (ELIMINATED, SURVIVED):
            raise ValueError(f"unknown outcome {rec['outcome']!r}")
        case = tuple(rec["case"])
        if case not in CASES:
            raise ValueError(f"unknown case {case}")
        steps = []
        for s in rec["steps"]:
            if len(s) != 2 or not isinstance(s[0], int) or not (s[1] is None or isinstance(s[1], int)):
                raise ValueError(f"bad step {s!r}")
            steps.append((s[0], s[1]))
        if not isinstance(rec["b"], int) or not (rec["z2"] is None or isinstance(rec["z2"], int)):
            raise ValueError("b and z2 must be integers")
        if not isinstance(rec["moduli_used"], int):
            raise ValueError("moduli_used must be an integer")
        return cls(rec["b"], case, rec["z2"], steps, rec["outcome"], rec["moduli_used"])

    @property
    def max_modulus(self) -> int:
        return max((q for q, n in self.steps if n is not None), default=0)


def sieve_trace(
    b: int,
    z2: int,
    case: CaseSplit,
    plan: Sequence[int],
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    prime_c: bool = True,
) -> Iterator[Tuple[int, Optional[CandidateSet]]]:
    """Run the sieve, yielding (q, set after q) or (q, None) for a skipped q.

    Moduli that would push the set over ``cap`` are retried once after the
    rest of the plan; if they still overflow they are skipped.
    """
    s = initial_set(case)
    used = 0
    queue = list(plan)
    deferred: List[int] = []
    retrying = False
    while used < budget:
        if not queue:
            if retrying or not deferred:
                return
            queue, deferred, retrying = deferred, [], True
        q = queue.pop(0)
        if gcd(q, 2 * b) != 1:
            yield q, None
            continue
        try:
            s = refine(s, b, z2, case, q, cap, prime_c)
        except CapExceeded:
            if not retrying:
                deferred.append(q)
            yield q, None
            continue
        used += 1
        yield q, s
        if not s:
            return


def eliminate(
    b: int,
    z2: int,
    case: CaseSplit,
    plan: Sequence[int],
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    prime_c: bool = True,
) -> EliminationCertificate:
    cert = EliminationCertificate(b, case.label, z2)
    last: Optional[CandidateSet] = None
    for q, s in sieve_trace(b, z2, case, plan, budget, cap, prime_c):
        if s is None:
            cert.steps.append((q, None))
            continue
        cert.steps.append((q, len(s)))
        cert.moduli_used += 1
        last = s
    cert.outcome = ELIMINATED if last is not None and not last else SURVIVED
    return cert


def eliminate_b(
    b: int,
    plan: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    prime_c: bool = True,
) -> List[EliminationCertificate]:
    """One certificate per (case, z2); a z2-free certificate per case when
    the class number has no odd divisor > 1."""
    cases = case_split(b)
    if plan is None:
        plan = default_plan()
    zs = z2_candidates(b)
    certs = []
    for case in cases:
        if not zs:
            certs.append(EliminationCertificate(b, case.label, None, [], ELIMINATED, 0))
            continue
        for z2 in zs:
            certs.append(eliminate(b, z2, case, plan, budget, cap, prime_c))
    return certs


def expected_certificates(b: int) -> int:
    return len(case_split(b)) * max(1, len(z2_candidates(b)))
