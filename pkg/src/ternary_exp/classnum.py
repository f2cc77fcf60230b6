"""Class numbers of imaginary quadratic discriminants.

Two independent routes: counting reduced primitive binary quadratic forms,
and the finite character sum of the analytic class number formula.  The
sieve only needs the first; the second exists to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import List, Tuple

import numpy as np

from .modarith import divisors, factorize, is_prime


@dataclass(frozen=True)
class Discriminant:
    value: int

    def __post_init__(self) -> None:
        if self.value >= 0:
            raise ValueError(f"discriminant must be negative, got {self.value}")
        if self.value % 4 not in (0, 1):
            raise ValueError(f"{self.value} is not 0 or 1 mod 4")

    @property
    def is_fundamental(self) -> bool:
        d = self.value
        if d % 4 == 1:
            return _squarefree(-d)
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(-m)


def _squarefree(n: int) -> bool:
    return all(k == 1 for k in factorize(n).values())


def _as_disc(d) -> Discriminant:
    return d if isinstance(d, Discriminant) else Discriminant(int(d))


def reduced_forms(d, boundary: str = "nonneg") -> List[Tuple[int, int, int]]:
    """All reduced primitive forms (A, B, C) with B^2 - 4AC = d.

    ``boundary`` picks the sign of B on the boundary |B| = A or A = C:
    "nonneg" keeps B >= 0 (the usual convention), "nonpos" keeps B <= 0.
    Both give one representative per class.
    """
    if boundary not in ("nonneg", "nonpos"):
        raise ValueError(f"unknown boundary convention {boundary!r}")
    disc = _as_disc(d).value
    n = -disc
    forms: List[Tuple[int, int, int]] = []
    # A <= sqrt(|d|/3) for reduced forms
    for a in range(1, isqrt(n // 3) + 1):
        bs = np.arange(-a, a + 1, dtype=np.int64)
        bs = bs[(bs - disc) % 2 == 0]
        num = bs * bs - disc
        ok = num % (4 * a) == 0
        bs, num = bs[ok], num[ok]
        cs = num // (4 * a)
        ok = cs >= a
        # boundary: |B| == A or A == C admits only one sign of B
        edge = (np.abs(bs) == a) | (cs == a)
        if boundary == "nonneg":
            ok &= ~edge | (bs >= 0)
        else:
            ok &= ~edge | (bs <= 0)
        ok &= np.gcd(np.gcd(a, bs), cs) == 1
        forms.extend((a, int(b), int(c)) for b, c in zip(bs[ok], cs[ok]))
    return forms


@lru_cache(maxsize=4096)
def _count_forms(disc: int) -> int:
    return len(reduced_forms(disc))


def class_number_forms(d) -> int:
    """Number of reduced primitive forms of discriminant d."""
    return _count_forms(_as_disc(d).value)


def _character_table(disc: int) -> np.ndarray:
    """Values of the Kronecker character (disc/.) on 0..|disc|-1.

    Built from the prime-discriminant factorization of a fundamental
    discriminant, so it does not go through Jacobi reciprocity.
    """
    n = -disc
    a = np.arange(n, dtype=np.int64)
    chi = np.ones(n, dtype=np.int64)
    fac = factorize(n)
    odd = [p for p in fac if p != 2]
    for p in odd:
        leg = -np.ones(p, dtype=np.int64)
        leg[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
        leg[0] = 0
        chi *= leg[a % p]
    k2 = fac.get(2, 0)
    if k2:
        # the 2-part is -4, 8 or -8; its sign makes the product equal disc
        odd_part = 1
        for p in odd:
            odd_part *= p if p % 4 == 1 else -p
        two_part = disc // odd_part
        if two_part == -4:
            tab = np.array([0, 1, 0, -1])
        elif two_part == 8:
            tab = np.array([0, 1, 0, -1, 0, -1, 0, 1])
        elif two_part == -8:
            tab = np.array([0, 1, 0, 1, 0, -1, 0, -1])
        else:
            raise ValueError(f"{disc} is not fundamental")
        chi *= tab[a % len(tab)]
    return chi


def class_number_analytic(d) -> int:
    disc = _as_disc(d)
    if not disc.is_fundamental:
        raise ValueError(f"{disc.value} is not a fundamental discriminant")
    n = -disc.value
    units = {3: 6, 4: 4}.get(n, 2)
    chi = _character_table(disc.value)
    s = int(np.dot(chi, np.arange(n, dtype=np.int64)))
    # h = -(w / 2|d|) * sum chi(a) a
    h, rem = divmod(-units * s, 2 * n)
    if rem or h <= 0:
        raise ArithmeticError(f"character sum gave non-integral class number for {disc.value}")
    return h


def z2_candidates(b: int) -> List[int]:
    """Odd divisors > 1 of the class number of discriminant -4b."""
    if b % 2 == 0 or not is_prime(b):
        raise ValueError(f"{b} is not an odd prime")
    if b % 4 != 1:
        raise ValueError(f"{b} is not 1 mod 4")
    h = class_number_forms(-4 * b)
    return [t for t in divisors(h) if t > 1 and t % 2 == 1]
