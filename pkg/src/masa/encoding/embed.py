"""Interpretation of tree nodes as vectors of l2(G_N).

Branch j occupies consecutive positions j*(h+1) + t of the generator orbit
of 0 in G_N, so one left translation by the generator advances every branch
by one step at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import group_tower as gt
from ..group_algebra import GroupVector, generator_power, left_translate, superpose
from ..errors import DomainError, ResourceLimitError
from .tree import Node, VirtualTree


@dataclass(frozen=True)
class BasisAssignment:
    level: int
    branches: int
    h: int
    offset: int = 0

    @property
    def stride(self) -> int:
        return self.h + 1

    @property
    def size(self) -> int:
        return self.branches * self.stride

    def position(self, j: int, t: int) -> int:
        if not (0 <= j < self.branches and 0 <= t <= self.h):
            raise DomainError(f"pair (branch {j}, step {t}) is outside the assignment")
        return self.offset + j * self.stride + t

    def element(self, j: int, t: int) -> int:
        return gt.orbit_element(self.level, self.position(j, t))

    def pairs(self) -> dict[tuple[int, int], int]:
        return {(j, t): self.element(j, t) for j in range(self.branches) for t in range(self.h + 1)}

    def verify(self) -> None:
        """Injectivity, capacity and the one-step property, checked against the table."""
        if self.offset + self.size > 2**self.level:
            raise DomainError(f"G_{self.level} cannot host {self.size} pairs at offset {self.offset}")
        pairs = self.pairs()
        if len(set(pairs.values())) != len(pairs):
            raise DomainError("basis assignment is not injective")
        mu = gt.generator_element(self.level)
        for (j, t), g in pairs.items():
            if t < self.h and gt.multiply(self.level, mu, g) != pairs[(j, t + 1)]:
                raise DomainError(f"generator does not map pair ({j}, {t}) to ({j}, {t + 1})")


def _level_for(count: int) -> int:
    N = max(1, (count - 1).bit_length())  # ceil(log2(count)), at least 1
    if N > gt.max_level():
        raise ResourceLimitError(f"{count} basis pairs need G_{N}, above the limit {gt.max_level()}")
    return N


def assign_basis(vt: VirtualTree) -> BasisAssignment:
    B = len(vt.branches)
    ba = BasisAssignment(_level_for(B * (vt.h + 1)), B, vt.h)
    ba.verify()
    return ba


def assign_basis_union(trees) -> list[BasisAssignment]:
    """Assignments for several trees laid side by side in one shared G_N."""
    sizes = [len(vt.branches) * (vt.h + 1) for vt in trees]
    N = _level_for(sum(sizes))
    out, offset = [], 0
    for vt, size in zip(trees, sizes):
        ba = BasisAssignment(N, len(vt.branches), vt.h, offset)
        ba.verify()
        out.append(ba)
        offset += size
    return out


def alpha(vt: VirtualTree, x, c_prime, x_prime) -> float:
    """sqrt(1 + delta(x, x')) / sqrt(|leaves| + 1); independent of c'."""
    same = 1 if tuple(x) == tuple(x_prime) else 0
    return math.sqrt(1 + same) / math.sqrt(len(vt.leaves()) + 1)


def basis_vector(vt: VirtualTree, ba: BasisAssignment, node: Node, x) -> GroupVector:
    """[(c, x)]: the point mass hosting node c on x's branch."""
    node = vt.locate(node, x)
    j = vt.branch(x).index
    return superpose(ba.level, [(ba.element(j, vt.h - node.depth), 1.0)])


def embed_config(vt: VirtualTree, ba: BasisAssignment, c, x) -> GroupVector:
    """[[c]]_x: superposition over the level of c, weighted towards x."""
    node = vt.locate(c, x)
    t = vt.h - node.depth
    terms = []
    for c_prime in vt.level(node):
        for x_prime in sorted(vt.inputs_at(c_prime)):
            j = vt.branch(x_prime).index
            terms.append((ba.element(j, t), alpha(vt, x, c_prime, x_prime)))
    return superpose(ba.level, terms)


def embed_at(vt: VirtualTree, ba: BasisAssignment, x, t: int) -> GroupVector:
    """embed_config of the node at step index t of x's branch."""
    return embed_config(vt, ba, vt.branch_nodes(x)[t], x)


def embed_input(vt: VirtualTree, ba: BasisAssignment, x) -> GroupVector:
    """[[x]]: the leaf embedding advanced k_x generator steps."""
    b = vt.branch(x)
    leaf = vt.branch_nodes(x)[0]
    return generator_power(ba.level, b.k, embed_config(vt, ba, leaf, x))


def step_operator(ba: BasisAssignment, v: GroupVector) -> GroupVector:
    """Left translation by the generator of G_N."""
    if v.level != ba.level:
        raise DomainError(f"vector lives at level {v.level}, assignment at {ba.level}")
    return left_translate(ba.level, gt.generator_element(ba.level), v)


def step_power(ba: BasisAssignment, k: int, v: GroupVector) -> GroupVector:
    for _ in range(k):
        v = step_operator(ba, v)
    return v
