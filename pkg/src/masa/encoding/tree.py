"""Computational trees and their padded (virtual) versions.

A tree collects the computations of every length-L input that ends in the
final configuration c_F(y).  Branches are stored leaf to root and padded with
virtual configurations to a common number of transitions h; nodes at equal
(depth, configuration) are identified across branches.

Depth is measured from the root (the final configuration); the position
along a branch measured from its leaf is called the step index t = h - depth.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Union

from .. import counting
from ..errors import BudgetExceeded, DomainError, MachineFault
from ..machine import Computation, Configuration, Machine, decode_input, default_max_steps, run


@dataclass(frozen=True, order=True)
class VirtualConfig:
    """Padding marker c_0^{-k}(x); carries no tape."""

    input: tuple[int, ...]
    k: int

    def __str__(self) -> str:
        return f"c0^-{self.k}{self.input}"


NodeContent = Union[Configuration, VirtualConfig]


@dataclass(frozen=True)
class Node:
    depth: int
    content: NodeContent

    @property
    def virtual(self) -> bool:
        return isinstance(self.content, VirtualConfig)


@dataclass(frozen=True)
class LengthSurvey:
    """Outcome of running a machine on every input of one length."""

    L: int
    computations: dict
    faults: dict

    def outputs(self) -> list[int]:
        return sorted({c.output for c in self.computations.values() if c.output is not None})


def survey(M: Machine, L: int, max_steps: int | None = None) -> LengthSurvey:
    """Run M on every input x with |x| = L.

    Budget exhaustion on any input is an error: a tree is only sound with
    complete knowledge of the machine at this length.  Head underflows are
    recorded and the input is left out of every tree.
    """
    comps, faults = {}, {}
    for n in range(1, counting.max_parts(L) + 1):
        for word in counting.enumerate_valid(L, n):
            x = decode_input(word)
            budget = max_steps if max_steps is not None else default_max_steps(x)
            try:
                comp = run(M, x, budget)
            except MachineFault as exc:
                faults[x] = str(exc)
                continue
            if not comp.halted:
                raise BudgetExceeded(f"input {x} did not halt within {budget} steps", input_vector=x)
            comps[x] = comp
    return LengthSurvey(L, comps, faults)


@dataclass(frozen=True)
class InputSet:
    y: int
    L: int
    computations: dict

    @property
    def inputs(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.computations))

    def __len__(self) -> int:
        return len(self.computations)

    def __iter__(self):
        return iter(self.inputs)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.computations


def inputs_for(M: Machine, y: int, L: int, max_steps: int | None = None, *, surveyed: LengthSurvey | None = None) -> InputSet:
    s = surveyed if surveyed is not None else survey(M, L, max_steps)
    keep = {x: c for x, c in s.computations.items() if c.final and c.output == y}
    return InputSet(y, L, keep)


@dataclass(frozen=True)
class Branch:
    index: int
    input: tuple[int, ...]
    computation: Computation
    k: int

    @property
    def h(self) -> int:
        """Number of transitions of the real computation."""
        return self.computation.transitions

    @property
    def configurations(self) -> tuple[Configuration, ...]:
        return self.computation.configurations

    def content_at(self, t: int) -> NodeContent:
        if t < self.k:
            return VirtualConfig(self.input, self.k - t)
        return self.configurations[t - self.k]

    def step_of(self, content: NodeContent) -> int:
        """Step index t of `content` on this branch."""
        if isinstance(content, VirtualConfig):
            if content.input == self.input and 1 <= content.k <= self.k:
                return self.k - content.k
        else:
            for i, c in enumerate(self.configurations):
                if c == content:
                    return self.k + i
        raise DomainError(f"{content} is not on the branch of input {self.input}")


class VirtualTree:
    """Regular padded tree of all computations of M with output y and input length L."""

    def __init__(self, machine: Machine, y: int, L: int, inputs: InputSet):
        if len(inputs) == 0:
            raise DomainError(f"no tree for y={y}, L={L}: no input of length {L} computes {y}")
        self.machine = machine
        self.y = y
        self.L = L
        self.h = max(c.transitions for c in inputs.computations.values())
        self.branches = tuple(
            Branch(j, x, inputs.computations[x], self.h - inputs.computations[x].transitions)
            for j, x in enumerate(inputs.inputs)
        )
        self._by_input = {b.input: b for b in self.branches}
        self._inputs_at: dict[Node, set] = defaultdict(set)
        for b in self.branches:
            for t in range(self.h + 1):
                self._inputs_at[self.node(b, t)].add(b.input)
        levels: dict[int, list[Node]] = defaultdict(list)
        for node in self._inputs_at:
            levels[node.depth].append(node)
        self._levels = {d: tuple(sorted(ns, key=_node_key)) for d, ns in levels.items()}

    def node(self, branch: Branch, t: int) -> Node:
        return Node(self.h - t, branch.content_at(t))

    @property
    def inputs(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b.input for b in self.branches)

    @property
    def nodes(self) -> tuple[Node, ...]:
        return tuple(n for d in sorted(self._levels) for n in self._levels[d])

    @property
    def root(self) -> Node:
        (root,) = self._levels[0]
        return root

    def branch(self, x) -> Branch:
        try:
            return self._by_input[tuple(x)]
        except KeyError:
            raise DomainError(f"input {tuple(x)} is not in the tree for y={self.y}, L={self.L}") from None

    def branch_nodes(self, x) -> tuple[Node, ...]:
        """Nodes of x's branch from leaf (t = 0) to root (t = h)."""
        b = self.branch(x)
        return tuple(self.node(b, t) for t in range(self.h + 1))

    def _check_node(self, node: Node) -> None:
        if node not in self._inputs_at:
            raise DomainError(f"node {node} is not in the tree")

    def depth(self, node: Node) -> int:
        self._check_node(node)
        return node.depth

    def level(self, node: Node) -> tuple[Node, ...]:
        self._check_node(node)
        return self._levels[node.depth]

    def level_at(self, depth: int) -> tuple[Node, ...]:
        return self._levels.get(depth, ())

    def inputs_at(self, node: Node) -> frozenset:
        """Inputs whose branch meets the subtree rooted at `node`."""
        self._check_node(node)
        return frozenset(self._inputs_at[node])

    def leaves(self) -> tuple[tuple[Node, tuple[int, ...]], ...]:
        return tuple((self.node(b, 0), b.input) for b in self.branches)

    def locate(self, content, x) -> Node:
        """Node holding `content` on x's branch (content may already be a Node)."""
        b = self.branch(x)
        if isinstance(content, Node):
            t = self.h - content.depth
            if not 0 <= t <= self.h or b.content_at(t) != content.content:
                raise DomainError(f"{content} is not on the branch of input {b.input}")
            return content
        return self.node(b, b.step_of(content))


def _node_key(node: Node):
    c = node.content
    if isinstance(c, VirtualConfig):
        return (1, c.input, c.k, "", 0, "")
    return (0, (), 0, c.state, c.head, c.tape)


def build_virtual_tree(M: Machine, y: int, L: int, max_steps: int | None = None, *, surveyed: LengthSurvey | None = None) -> VirtualTree:
    return VirtualTree(M, y, L, inputs_for(M, y, L, max_steps, surveyed=surveyed))


def leaves(vt: VirtualTree):
    return vt.leaves()
