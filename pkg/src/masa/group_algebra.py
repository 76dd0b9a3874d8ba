"""Finitely supported vectors in l2(G_i) and the left regular action on them."""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType

import numpy as np

from . import group_tower as gt
from .errors import DomainError

ZERO_THRESHOLD = 1e-15


@dataclass(frozen=True)
class GroupVector:
    """Complex amplitudes over the elements of G_i, kept in normal form.

    Build through :meth:`from_amplitudes` (or :func:`delta`) so that zero
    amplitudes are dropped and keys are range-checked.
    """

    level: int
    amplitudes: Mapping[int, complex] = field(default_factory=dict)

    @classmethod
    def from_amplitudes(cls, level: int, amplitudes, threshold: float = ZERO_THRESHOLD):
        if level < 0:
            raise DomainError(f"level must be nonnegative, got {level}")
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        acc: dict[int, complex] = {}
        size = 2**level
        for g, a in items:
            g = int(g)
            if not 0 <= g < size:
                raise DomainError(f"element {g} is not in G_{level} = [0, {size})")
            acc[g] = acc.get(g, 0j) + complex(a)
        clean = {g: acc[g] for g in sorted(acc) if abs(acc[g]) >= threshold}
        return cls(level, MappingProxyType(clean))

    @classmethod
    def zero(cls, level: int) -> "GroupVector":
        return cls.from_amplitudes(level, {})

    def __getitem__(self, g: int) -> complex:
        return self.amplitudes.get(g, 0j)

    def __eq__(self, other):
        if not isinstance(other, GroupVector):
            return NotImplemented
        return self.level == other.level and dict(self.amplitudes) == dict(other.amplitudes)

    def __hash__(self):
        return hash((self.level, tuple(self.amplitudes.items())))

    def __add__(self, other: "GroupVector") -> "GroupVector":
        _same_level(self, other)
        return GroupVector.from_amplitudes(
            self.level, list(self.amplitudes.items()) + list(other.amplitudes.items())
        )

    def __rmul__(self, scalar: complex) -> "GroupVector":
        return GroupVector.from_amplitudes(
            self.level, {g: scalar * a for g, a in self.amplitudes.items()}
        )

    def isclose(self, other: "GroupVector", atol: float = 1e-12) -> bool:
        """Same support and amplitudes within `atol`."""
        _same_level(self, other)
        if support(self) != support(other):
            return False
        return all(abs(a - other[g]) <= atol for g, a in self.amplitudes.items())

    def to_array(self) -> np.ndarray:
        out = np.zeros(2**self.level, dtype=complex)
        for g, a in self.amplitudes.items():
            out[g] = a
        return out

    def triples(self) -> list[tuple[int, float, float]]:
        """(element, real, imag) triples in ascending element order."""
        return [(g, a.real, a.imag) for g, a in self.amplitudes.items()]


def delta(level: int, g: int) -> GroupVector:
    """Point mass at g."""
    return GroupVector.from_amplitudes(level, {g: 1.0})


def _same_level(*vectors: GroupVector) -> None:
    levels = {v.level for v in vectors}
    if len(levels) != 1:
        raise DomainError(f"level mismatch: {sorted(levels)}")


def _check_vector_level(i: int, v: GroupVector) -> None:
    if v.level != i:
        raise DomainError(f"vector lives at level {v.level}, expected {i}")


@lru_cache(maxsize=None)
def _inverses(i: int) -> tuple[int, ...]:
    table = gt.group_table(i).entries
    return tuple(int(np.flatnonzero(row == 0)[0]) for row in table)


def inverse(i: int, g: int) -> int:
    """Inverse of g in G_i, read off the table row of g."""
    gt._check_element(i, g)
    return _inverses(i)[g]


def left_translate(i: int, g: int, v: GroupVector) -> GroupVector:
    """lambda_g v: the amplitude of h moves to g.h."""
    _check_vector_level(i, v)
    table = gt.group_table(i).entries
    gt._check_element(i, g)
    return GroupVector.from_amplitudes(
        i, {int(table[g, h]): a for h, a in v.amplitudes.items()}
    )


def convolve(i: int, a: GroupVector, b: GroupVector) -> GroupVector:
    """(a * b)(g) = sum_h a(h) b(h^-1 g)."""
    _check_vector_level(i, a)
    _check_vector_level(i, b)
    table = gt.group_table(i).entries
    terms = [
        (int(table[h, k]), ah * bk)
        for h, ah in a.amplitudes.items()
        for k, bk in b.amplitudes.items()
    ]
    return GroupVector.from_amplitudes(i, terms)


def inner(a: GroupVector, b: GroupVector) -> complex:
    """<a, b> = sum_g a(g) conj(b(g))."""
    _same_level(a, b)
    return sum((x * b[g].conjugate() for g, x in a.amplitudes.items()), 0j)


def norm(a: GroupVector) -> float:
    return math.sqrt(math.fsum(abs(x) ** 2 for x in a.amplitudes.values()))


def trace(a: GroupVector) -> complex:
    """Amplitude of the identity element 0."""
    return a[0]


def support(a: GroupVector) -> frozenset[int]:
    return frozenset(a.amplitudes)


def generator_power(i: int, k: int, v: GroupVector) -> GroupVector:
    """mu_i^k v in one pass, shifting orbit positions by k."""
    _check_vector_level(i, v)
    if k < 0:
        raise DomainError(f"power must be nonnegative, got {k}")
    if i == 0:
        return v
    return GroupVector.from_amplitudes(
        i, {gt.generator_shift(i, h, k): a for h, a in v.amplitudes.items()}
    )


def superpose(level: int, terms: Iterable[tuple[int, complex]]) -> GroupVector:
    """Sum of amplitude * delta(element) over `terms`."""
    return GroupVector.from_amplitudes(level, list(terms))
