"""Known multi-solution triples for a^x + b^y = c^z."""

from __future__ import annotations

from typing import Dict, FrozenSet, NamedTuple, Tuple

Exps = Tuple[int, int, int]


class TableEntry(NamedTuple):
    label: str
    triple: Tuple[int, int, int]
    solutions: FrozenSet[Exps]


def family_i(r: int) -> TableEntry:
    """The infinite family (2, 2^r - 1, 2^r + 1), r >= 2."""
    if r < 2:
        raise ValueError("family (i) needs r >= 2")
    return TableEntry(
        f"i[r={r}]",
        (2, 2**r - 1, 2**r + 1),
        frozenset({(1, 1, 1), (r + 2, 2, 2)}),
    )


FAMILY_I_R = tuple(range(2, 9))

# all coprime bases, a < b; entry (i) is expanded over FAMILY_I_R
GENERAL_TABLE: Dict[str, Tuple[TableEntry, ...]] = {
    "i": tuple(family_i(r) for r in FAMILY_I_R),
    "ii": (TableEntry("ii", (2, 3, 11), frozenset({(1, 2, 1), (3, 1, 1)})),),
    "iii": (TableEntry("iii", (2, 3, 35), frozenset({(3, 3, 1), (5, 1, 1)})),),
    "iv": (TableEntry("iv", (2, 3, 259), frozenset({(4, 5, 1), (8, 1, 1)})),),
    "v": (TableEntry("v", (2, 5, 3), frozenset({(1, 2, 3), (2, 1, 2)})),),
    "vi": (TableEntry("vi", (2, 5, 133), frozenset({(3, 3, 1), (7, 1, 1)})),),
    "vii": (TableEntry("vii", (2, 7, 3), frozenset({(1, 1, 2), (5, 2, 4)})),),
    "viii": (TableEntry("viii", (2, 89, 91), frozenset({(1, 1, 1), (13, 1, 2)})),),
    "ix": (TableEntry("ix", (2, 91, 8283), frozenset({(1, 2, 1), (13, 1, 1)})),),
    "x": (TableEntry("x", (3, 5, 2), frozenset({(1, 1, 3), (1, 3, 7), (3, 1, 5)})),),
    "xi": (TableEntry("xi", (3, 10, 13), frozenset({(1, 1, 1), (7, 1, 3)})),),
    "xii": (TableEntry("xii", (3, 13, 2), frozenset({(1, 1, 4), (5, 1, 8)})),),
    "xiii": (TableEntry("xiii", (3, 13, 2200), frozenset({(1, 3, 1), (7, 1, 1)})),),
}

# distinct primes, a < b
PRIME_TABLE: Tuple[TableEntry, ...] = (
    TableEntry("i", (2, 3, 5), frozenset({(1, 1, 1), (4, 2, 2)})),
    TableEntry("ii", (2, 3, 11), frozenset({(1, 2, 1), (3, 1, 1)})),
    TableEntry("iii", (2, 5, 3), frozenset({(1, 2, 3), (2, 1, 2)})),
    TableEntry("iv", (2, 7, 3), frozenset({(1, 1, 2), (5, 2, 4)})),
    TableEntry("v", (3, 5, 2), frozenset({(1, 1, 3), (1, 3, 7), (3, 1, 5)})),
    TableEntry("vi", (3, 13, 2), frozenset({(1, 1, 4), (5, 1, 8)})),
)

# the only triples allowed two solutions in one parity class when c is an odd prime
PARITY_EXCEPTIONS = frozenset({(3, 10, 13), (10, 3, 13)})

PILLAI_VALUES = frozenset({1, -5, -13})
GAP_EXCEPTION_VALUES = frozenset({1, -7})
