"""Modular and 2-adic arithmetic primitives.

Everything here is exact integer arithmetic on Python ints; nothing wraps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Dict, Iterator, List, Optional


@dataclass(frozen=True, order=True)
class ResidueClass:
    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced mod {self.modulus}")

    def __str__(self) -> str:
        return f"{self.residue} mod {self.modulus}"


def pow_mod(base: int, exponent: int, modulus: int) -> int:
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    if modulus == 1:
        return 0
    # square-and-multiply, left to right
    result = 1
    base %= modulus
    for bit in bin(exponent)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result


def v2(n: int) -> int:
    """2-adic valuation: the largest t with 2**t dividing n."""
    if n == 0:
        raise ValueError("v2(0) is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def factorize(n: int) -> Dict[int, int]:
    """Trial-division factorization; intended for small n only."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: Dict[int, int] = {}
    if n % 2 == 0:
        k = v2(n)
        out[2] = k
        n >>= k
    p = 3
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def prime_power_base(q: int) -> Optional[int]:
    """Return p if q == p**k for a prime p and k >= 1, else None."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    return next(iter(f))


def divisors(n: int) -> List[int]:
    ds = [1]
    for p, k in factorize(n).items():
        ds = [d * p**i for d in ds for i in range(k + 1)]
    return sorted(ds)


def lcm(*args: int) -> int:
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out


def carmichael_lambda(m: int) -> int:
    if m < 1:
        raise ValueError("m must be >= 1")
    out = 1
    for p, k in factorize(m).items():
        if p == 2:
            lam = 1 if k == 1 else 2 if k == 2 else 2 ** (k - 2)
        else:
            lam = p ** (k - 1) * (p - 1)
        out = lcm(out, lam)
    return out


def multiplicative_order(a: int, m: int) -> int:
    if m < 1:
        raise ValueError("m must be >= 1")
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    if m == 1:
        return 1
    # the order divides lambda(m); strip prime factors while a^(t/p) stays 1
    t = carmichael_lambda(m)
    for p in factorize(t):
        while t % p == 0 and pow(a, t // p, m) == 1:
            t //= p
    return t


def crt_merge(r1: ResidueClass, r2: ResidueClass) -> Optional[ResidueClass]:
    """Combine two residue classes; None when they are incompatible."""
    m1, m2 = r1.modulus, r2.modulus
    g = gcd(m1, m2)
    diff = r2.residue - r1.residue
    if diff % g:
        return None
    m = m1 // g * m2
    if g == m2:
        return r1
    # r1 + m1*t == r2 (mod m2)  =>  t == diff/g * inv(m1/g) (mod m2/g)
    n2 = m2 // g
    t = (diff // g) * pow(m1 // g, -1, n2) % n2
    return ResidueClass((r1.residue + m1 * t) % m, m)


def primes_in_range(lo: int, hi: int, segment: int = 1 << 16) -> Iterator[int]:
    """Yield primes p with lo <= p < hi using a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return
    root = isqrt(hi - 1)
    base = bytearray([1]) * (root + 1)
    base[:2] = b"\x00\x00"
    for i in range(2, isqrt(root) + 1):
        if base[i]:
            base[i * i :: i] = bytearray(len(range(i * i, root + 1, i)))
    small = [i for i in range(2, root + 1) if base[i]]
    for start in range(lo, hi, segment):
        stop = min(start + segment, hi)
        seg = bytearray([1]) * (stop - start)
        for p in small:
            first = max(p * p, (start + p - 1) // p * p)
            if first >= stop:
                continue
            seg[first - start :: p] = bytearray(len(range(first, stop, p)))
        for i, flag in enumerate(seg):
            if flag:
                yield start + i
