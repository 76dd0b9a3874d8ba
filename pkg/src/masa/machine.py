"""Deterministic one-way-tape Turing machines over the unary alphabet.

Tapes are strings over ``"1"`` and ``"_"`` (blank), cell 1 first, with no
trailing blanks.  The final state is spelled ``"F"``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import DomainError, MachineFault, MachineFormatError, UsageError

ONE = "1"
BLANK = "_"
SYMBOLS = (ONE, BLANK)
FINAL = "F"
MOVES = (-1, 1)

SHIPPED = ("succ", "add", "zero", "proj")


def canonical_tape(tape: str) -> str:
    return tape.rstrip(BLANK)


@dataclass(frozen=True)
class Action:
    next: str
    move: int
    write: str


@dataclass(frozen=True)
class Machine:
    states: tuple[str, ...]
    start: str
    transitions: Mapping[tuple[str, str], Action]
    name: str = ""
    # largest iterated-exponential height m documented for the machine, if any
    kalmar_m: int | None = None
    description: str = ""

    def __post_init__(self):
        problems = validate(self.states, self.start, self.transitions)
        if problems:
            raise MachineFormatError("; ".join(problems))
        object.__setattr__(self, "transitions", MappingProxyType(dict(self.transitions)))

    def action(self, state: str, symbol: str) -> Action:
        return self.transitions[(state, symbol)]

    def to_json(self) -> dict:
        out: dict = {"name": self.name} if self.name else {}
        if self.description:
            out["description"] = self.description
        if self.kalmar_m is not None:
            out["kalmar_m"] = self.kalmar_m
        out["states"] = list(self.states)
        out["start"] = self.start
        out["transitions"] = [
            {"state": q, "read": s, "next": a.next, "move": a.move, "write": a.write}
            for q in self.states
            for s in SYMBOLS
            for a in [self.transitions[(q, s)]]
        ]
        return out

    def digest(self) -> str:
        """sha256 of the behaviour-defining fields."""
        body = {k: v for k, v in self.to_json().items() if k in ("states", "start", "transitions")}
        blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def validate(states: Sequence[str], start: str, transitions: Mapping) -> list[str]:
    problems = []
    if FINAL in states:
        problems.append(f"final state {FINAL!r} must not be listed in states")
    if len(set(states)) != len(states):
        problems.append("duplicate state names")
    if start not in states:
        problems.append(f"start state {start!r} is not in states")
    for q in states:
        for s in SYMBOLS:
            if (q, s) not in transitions:
                problems.append(f"missing transition for (state={q!r}, read={s!r})")
    for (q, s), a in transitions.items():
        if q == FINAL:
            problems.append(f"final state {FINAL!r} has an outgoing transition on {s!r}")
        elif q not in states:
            problems.append(f"transition from unknown state {q!r}")
        if a.next != FINAL and a.next not in states:
            problems.append(f"transition ({q!r}, {s!r}) targets unknown state {a.next!r}")
        if a.move not in MOVES:
            problems.append(f"transition ({q!r}, {s!r}) has move {a.move!r}, expected -1 or +1")
        if a.write not in SYMBOLS:
            problems.append(f"transition ({q!r}, {s!r}) writes {a.write!r}")
    return problems


def machine_from_json(data: Mapping, *, source: str = "<machine>") -> Machine:
    if not isinstance(data, Mapping):
        raise MachineFormatError(f"{source}: top level must be an object")
    for key in ("states", "start", "transitions"):
        if key not in data:
            raise MachineFormatError(f"{source}: missing field {key!r}")
    states = data["states"]
    if not isinstance(states, list) or not all(isinstance(q, str) for q in states):
        raise MachineFormatError(f"{source}: 'states' must be a list of strings")
    transitions: dict[tuple[str, str], Action] = {}
    problems = []
    for idx, rec in enumerate(data["transitions"]):
        where = f"{source}: transitions[{idx}]"
        if not isinstance(rec, Mapping):
            problems.append(f"{where}: expected an object")
            continue
        missing = [k for k in ("state", "read", "next", "move", "write") if k not in rec]
        if missing:
            problems.append(f"{where}: missing {', '.join(missing)}")
            continue
        key = (rec["state"], rec["read"])
        if rec["read"] not in SYMBOLS:
            problems.append(f"{where}: read must be '1' or '_', got {rec['read']!r}")
        if key in transitions:
            problems.append(f"{where}: duplicate transition for {key}")
        transitions[key] = Action(rec["next"], rec["move"], rec["write"])
    problems += [f"{source}: {p}" for p in validate(states, data["start"], transitions)]
    if problems:
        raise MachineFormatError("\n".join(problems))
    return Machine(
        states=tuple(states),
        start=data["start"],
        transitions=transitions,
        name=data.get("name", ""),
        kalmar_m=data.get("kalmar_m"),
        description=data.get("description", ""),
    )


def load_machine(path) -> Machine:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MachineFormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise UsageError(f"cannot read machine file {path}: {exc.strerror}") from None
    return machine_from_json(data, source=str(path))


def shipped_machine(name: str) -> Machine:
    if name not in SHIPPED:
        raise DomainError(f"no shipped machine {name!r}; choose from {', '.join(SHIPPED)}")
    text = resources.files("masa.machines").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return machine_from_json(json.loads(text), source=f"shipped:{name}")


def resolve_machine(spec: str) -> Machine:
    """A shipped machine name or a path to a machine file."""
    if spec in SHIPPED and not Path(spec).exists():
        return shipped_machine(spec)
    if not Path(spec).exists():
        raise UsageError(f"{spec!r} is neither a shipped machine ({', '.join(SHIPPED)}) nor an existing file")
    return load_machine(spec)


@dataclass(frozen=True)
class Configuration:
    state: str
    head: int
    tape: str

    def __post_init__(self):
        if self.head < 1:
            raise DomainError(f"head position must be >= 1, got {self.head}")
        object.__setattr__(self, "tape", canonical_tape(self.tape))

    def read(self) -> str:
        return self.tape[self.head - 1] if self.head <= len(self.tape) else BLANK

    def __str__(self) -> str:
        return f"({self.state}, {self.head}, {self.tape or BLANK})"


def input_length(x: Sequence[int]) -> int:
    _check_input(x)
    return sum(x) + 2 * len(x) - 1


def _check_input(x: Sequence[int]) -> None:
    if len(x) == 0:
        raise DomainError("input vector must have at least one entry")
    if any(int(v) != v or v < 0 for v in x):
        raise DomainError(f"input entries must be natural numbers, got {tuple(x)}")


def encode_input(x: Sequence[int]) -> str:
    _check_input(x)
    return BLANK.join(ONE * (v + 1) for v in x)


def decode_input(word: str) -> tuple[int, ...]:
    """Inverse of encode_input on valid words."""
    runs = word.split(BLANK)
    if not word or any(r == "" or set(r) != {ONE} for r in runs):
        raise DomainError(f"{word!r} is not a valid input tape")
    return tuple(len(r) - 1 for r in runs)


def initial_config(M_or_start, x: Sequence[int]) -> Configuration:
    start = M_or_start.start if isinstance(M_or_start, Machine) else M_or_start
    return Configuration(start, 1, encode_input(x))


def final_tape(y: int) -> str:
    if y < 0:
        raise DomainError(f"output must be a natural number, got {y}")
    return ONE * (y + 1)


def final_config(y: int) -> Configuration:
    return Configuration(FINAL, 1, final_tape(y))


def is_final(c: Configuration) -> bool:
    return c.state == FINAL and c.head == 1


def decode_output(tape: str) -> int | None:
    """Leading-ones count minus one, or None if the tape is not a single run."""
    tape = canonical_tape(tape)
    if not tape or set(tape) != {ONE}:
        return None
    return len(tape) - 1


def step(M: Machine, c: Configuration) -> Configuration:
    if c.state == FINAL:
        raise UsageError(f"cannot step the halted configuration {c}")
    a = M.action(c.state, c.read())
    head = c.head + a.move
    if head < 1:
        raise MachineFault(f"head moved left of cell 1 from {c}")
    cells = list(c.tape.ljust(c.head, BLANK))
    cells[c.head - 1] = a.write
    return Configuration(a.next, head, "".join(cells))


@dataclass(frozen=True)
class Computation:
    configurations: tuple[Configuration, ...]
    halted: bool
    input: tuple[int, ...] = field(default=())

    @property
    def transitions(self) -> int:
        return len(self.configurations) - 1

    @property
    def last(self) -> Configuration:
        return self.configurations[-1]

    @property
    def final(self) -> bool:
        """Halted in a proper final configuration (q_F, 1, f)."""
        return self.halted and is_final(self.last)

    @property
    def output(self) -> int | None:
        return decode_output(self.last.tape) if self.final else None

    def warnings(self) -> list[str]:
        out = []
        if self.halted and not is_final(self.last):
            out.append(f"halted with head at cell {self.last.head}, not cell 1")
        if self.halted and decode_output(self.last.tape) is None:
            out.append(f"final tape {self.last.tape or BLANK!r} is not a single run of ones")
        return out


def default_max_steps(x: Sequence[int]) -> int:
    return 10 * 2 ** input_length(x)


def run(M: Machine, x: Sequence[int], max_steps: int | None = None) -> Computation:
    """Run M on x for at most max_steps transitions.

    A computation that has not reached the final state within the budget is
    returned with ``halted=False``; a head underflow raises MachineFault.
    """
    if max_steps is None:
        max_steps = default_max_steps(x)
    if max_steps < 1:
        raise DomainError(f"max_steps must be positive, got {max_steps}")
    c = initial_config(M, x)
    configs = [c]
    while c.state != FINAL and len(configs) <= max_steps:
        try:
            c = step(M, c)
        except MachineFault as exc:
            raise MachineFault(f"{exc} on input {tuple(x)}", configs) from None
        configs.append(c)
    return Computation(tuple(configs), c.state == FINAL, tuple(x))


def halt_space(comp: Computation) -> int:
    if not comp.configurations:
        raise DomainError("empty computation")
    return max(max(c.head, len(c.tape)) for c in comp.configurations)
