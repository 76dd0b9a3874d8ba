"""Counting valid initial tapes: words of length L over {1, _} with exactly
n-1 blanks, no two blanks adjacent, and no blank at either end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import DomainError, ResourceLimitError
from .machine import BLANK, ONE

ENUMERATION_LIMIT = 24

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
ASYMPTOTE_INTERCEPT = 0.476393


def max_parts(L: int) -> int:
    """Upper summation bound ceil(L/2) + 1."""
    return -(-L // 2) + 1


@lru_cache(maxsize=None)
def count_valid(L: int, n: int) -> int:
    """f(L, n) by the recursion f(L+1, n) = f(L, n) + f(L-1, n-1)."""
    if L < 1 or n < 1:
        return 0
    if n == 1:
        return 1
    if L < 2 * n - 1:
        return 0
    return count_valid(L - 1, n) + count_valid(L - 2, n - 1)


def is_valid_word(word: str, n: int) -> bool:
    return (
        word.count(BLANK) == n - 1
        and BLANK * 2 not in word
        and not word.startswith(BLANK)
        and not word.endswith(BLANK)
    )


def enumerate_valid(L: int, n: int) -> list[str]:
    """Every word of length L with n-1 blanks that passes the adjacency and
    end conditions, in lexicographic order ('1' < '_')."""
    if L > ENUMERATION_LIMIT:
        raise ResourceLimitError(f"enumeration is limited to L <= {ENUMERATION_LIMIT}, got {L}")
    if L < 1 or n < 1:
        return []
    words = []
    for blanks in combinations(range(L), n - 1):
        cells = [ONE] * L
        for b in blanks:
            cells[b] = BLANK
        word = "".join(cells)
        if is_valid_word(word, n):
            words.append(word)
    return sorted(words)


@lru_cache(maxsize=None)
def fib(L: int) -> int:
    if L < 1:
        raise DomainError(f"Fib is indexed from 1, got {L}")
    a, b = 1, 1
    for _ in range(L - 1):
        a, b = b, a + b
    return a


def check_fib_identity(L: int) -> bool:
    return sum(count_valid(L, n) for n in range(1, max_parts(L) + 1)) == fib(L)


def _binom(a: int, b: int) -> int:
    return math.comb(a, b) if a >= 0 and b >= 0 else 0


@dataclass(frozen=True)
class ClosedFormCheck:
    L: int
    n: int
    value: int
    count: int

    @property
    def matches(self) -> bool:
        return self.value == self.count


def closed_form_paper(L: int, n: int) -> ClosedFormCheck:
    """binom(L-n+1, n-1) as printed, alongside the recursion's value."""
    return ClosedFormCheck(L, n, _binom(L - n + 1, n - 1), count_valid(L, n))


def closed_form_corrected(L: int, n: int) -> int:
    """binom(L-n, n-1): compositions of the L-n+1 ones into n nonempty runs."""
    if L < 1 or n < 1:
        return 0
    return _binom(L - n, n - 1)


def printed_ratio(L: int, n: int) -> float | None:
    """(n+1)(L-n) / ((L-2n-1)(L-2n)), or None where the denominator vanishes."""
    den = (L - 2 * n - 1) * (L - 2 * n)
    return None if den == 0 else (n + 1) * (L - n) / den


def argmax_threshold(L: int) -> float:
    return (7 + 5 * L - math.sqrt(9 + 10 * L + 5 * L * L)) / 10


def argmax_asymptote(L: int) -> float:
    return (7 - math.sqrt(5) + (5 - math.sqrt(5)) * L) / 10


@dataclass(frozen=True)
class ArgmaxReport:
    L: int
    n: int
    counts: tuple[int, ...]
    threshold: float
    asymptote: float

    @property
    def gap(self) -> float:
        return self.n - self.threshold


def argmax_n(L: int) -> ArgmaxReport:
    """Smallest n maximizing count_valid(L, n), with the printed threshold
    and its linear asymptote for comparison."""
    if L < 1:
        raise DomainError(f"L must be positive, got {L}")
    counts = tuple(count_valid(L, n) for n in range(1, max_parts(L) + 1))
    best = counts.index(max(counts)) + 1
    return ArgmaxReport(L, best, counts, argmax_threshold(L), argmax_asymptote(L))


def count_rows(L: int, parts: int | None = None) -> list[tuple[int, int, int, int, bool]]:
    """CSV rows (L, n, count, paper_closed_form, match_flag)."""
    ns = [parts] if parts is not None else range(1, max_parts(L) + 1)
    rows = []
    for n in ns:
        chk = closed_form_paper(L, n)
        rows.append((L, n, chk.count, chk.value, chk.matches))
    return rows
