"""The tower of cyclic groups G_i = C_{2^i} in their self-similar labeling.

Tables are built recursively from the level below: the top-left quadrant of
G_i is G_{i-1}, the off-diagonal quadrants are G_{i-1} shifted by 2^{i-1}, and
the bottom-right quadrant is G_{i-1} with its rows permuted by the twist
matrix T(i-1).  The generator of G_i (i >= 1) is the element 2^{i-1}.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceLimitError

DEFAULT_MAX_LEVEL = 12


def max_level() -> int:
    """Largest level for which dense tables may be materialized."""
    raw = os.environ.get("MASA_MAX_LEVEL")
    if raw is None:
        return DEFAULT_MAX_LEVEL
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"MASA_MAX_LEVEL must be an integer, got {raw!r}") from None


def _check_level(i: int, *, positive: bool = False) -> None:
    if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
        raise DomainError(f"level must be an integer, got {i!r}")
    if i < 0 or (positive and i == 0):
        raise DomainError(f"level must be {'positive' if positive else 'nonnegative'}, got {i}")
    limit = max_level()
    if i > limit:
        raise ResourceLimitError(
            f"level {i} exceeds the dense-table limit {limit} (set MASA_MAX_LEVEL to raise it)"
        )


def _check_element(i: int, x: int, name: str = "element") -> None:
    if not 0 <= x < 2**i:
        raise DomainError(f"{name} {x} is not in G_{i} = [0, {2**i})")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TwistMatrix:
    level: int
    entries: np.ndarray

    @property
    def permutation(self) -> tuple[int, ...]:
        """sigma with entries[r, sigma[r]] == 1."""
        return tuple(int(c) for c in np.argmax(self.entries, axis=1))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


@dataclass(frozen=True, eq=False)
class GroupTable:
    level: int
    entries: np.ndarray

    @property
    def order(self) -> int:
        return 2**self.level

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


@dataclass(frozen=True)
class Orbit:
    level: int
    start: int
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, k: int) -> int:
        return self.elements[k]

    def __iter__(self):
        return iter(self.elements)


@lru_cache(maxsize=None)
def _twist_entries(i: int) -> np.ndarray:
    if i == 0:
        return _frozen(np.ones((1, 1), dtype=np.uint8))
    half = 2 ** (i - 1)
    out = np.zeros((2 * half, 2 * half), dtype=np.uint8)
    out[:half, half:] = np.eye(half, dtype=np.uint8)
    out[half:, :half] = _twist_entries(i - 1)
    return _frozen(out)


def twist(i: int) -> TwistMatrix:
    """Twist permutation matrix T(i) of size 2^i."""
    _check_level(i)
    return TwistMatrix(i, _twist_entries(i))


@lru_cache(maxsize=None)
def _table_entries(i: int) -> np.ndarray:
    if i == 0:
        return _frozen(np.zeros((1, 1), dtype=np.uint16))
    half = 2 ** (i - 1)
    prev = _table_entries(i - 1)
    sigma = np.argmax(_twist_entries(i - 1), axis=1)
    out = np.empty((2 * half, 2 * half), dtype=np.uint16)
    out[:half, :half] = prev
    out[:half, half:] = prev + half
    out[half:, :half] = prev + half
    # T(i-1).G_{i-1}: row r of the product is row sigma(r) of G_{i-1}
    out[half:, half:] = prev[sigma]
    return _frozen(out)


def group_table(i: int) -> GroupTable:
    """Cayley table of G_i; entries[a, b] is the product a.b."""
    _check_level(i)
    return GroupTable(i, _table_entries(i))


def generator_element(i: int) -> int:
    if i < 1:
        raise DomainError("G_0 is trivial and has no generator element")
    return 2 ** (i - 1)


@lru_cache(maxsize=None)
def _generator_row(i: int) -> tuple[int, ...]:
    if i == 1:
        return (1, 0)
    half = 2 ** (i - 1)
    return tuple(range(half, 2 * half)) + _generator_row(i - 1)


def identity_sequence(n: int) -> tuple[int, ...]:
    """(0, 1, ..., n-1)."""
    return tuple(range(n))


def generator(i: int) -> tuple[int, ...]:
    """Row of the generator in the table of G_i, built from the concatenation
    recurrence mu_{i+1} = (I_{2^i} + 2^i) ++ mu_i without touching any table.

    mu_0 = (0) is degenerate (G_0 has a single element and no generator) and
    is rejected.
    """
    if not isinstance(i, int) or i < 1:
        raise DomainError(f"generator needs a positive level, got {i!r}; mu_0 = (0) is degenerate")
    _check_level(i)
    return _generator_row(i)


def multiply(i: int, a: int, b: int) -> int:
    _check_level(i)
    _check_element(i, a)
    _check_element(i, b)
    return int(_table_entries(i)[a, b])


def orbit(i: int, x: int) -> Orbit:
    """O_i(x) = (x, mu.x, mu^2.x, ..., mu^{2^i - 1}.x)."""
    _check_level(i)
    _check_element(i, x)
    if i == 0:
        return Orbit(0, x, (x,))
    table = _table_entries(i)
    mu = generator_element(i)
    seq = [x]
    for _ in range(2**i - 1):
        seq.append(int(table[mu, seq[-1]]))
    return Orbit(i, x, tuple(seq))


# Orbit-position arithmetic.  Element x of G_i sits at position
# bitreverse_i(x) of orbit(i, 0), so translation by mu^k is "reverse, add k,
# reverse".  Works at any level without materializing a table.


def _bit_reverse(x: int, bits: int) -> int:
    return int(format(x, f"0{bits}b")[::-1], 2) if bits else 0


def orbit_position(i: int, x: int) -> int:
    """Index of x in orbit(i, 0)."""
    _check_element(i, x)
    return _bit_reverse(x, i)


def orbit_element(i: int, position: int) -> int:
    """Element at `position` (taken mod 2^i) of orbit(i, 0)."""
    if i < 0:
        raise DomainError(f"level must be nonnegative, got {i}")
    return _bit_reverse(position % (2**i), i)


def generator_shift(i: int, x: int, k: int) -> int:
    """mu_i^k . x computed by orbit-position arithmetic."""
    return orbit_element(i, orbit_position(i, x) + k)
