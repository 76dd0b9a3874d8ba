import itertools
import json

import pytest
from hypothesis import given, strategies as st

from masa.errors import DomainError, MachineFault, MachineFormatError, UsageError
from masa.machine import (
    FINAL,
    Action,
    Configuration,
    Machine,
    decode_input,
    encode_input,
    final_tape,
    halt_space,
    initial_config,
    input_length,
    is_final,
    load_machine,
    machine_from_json,
    run,
    shipped_machine,
    step,
)
from masa.suites import ORACLES, library_inputs


def tiny(transitions, states=("q",)):
    return Machine(tuple(states), states[0], {k: Action(*v) for k, v in transitions.items()})


def test_input_length():
    assert input_length((2,)) == 3
    assert input_length((0, 0)) == 3
    assert input_length((2, 3)) == 8
    with pytest.raises(DomainError):
        input_length(())


def test_encode_input():
    assert encode_input((2,)) == "111"
    assert encode_input((0,)) == "1"
    assert encode_input((2, 3)) == "111_1111"
    with pytest.raises(DomainError):
        encode_input(())


@given(st.lists(st.integers(0, 12), min_size=1, max_size=5).filter(lambda x: sum(x) <= 12))
def test_encoding_length_and_roundtrip(x):
    word = encode_input(x)
    assert len(word) == input_length(x)
    assert decode_input(word) == tuple(x)


def test_initial_config():
    M = shipped_machine("succ")
    assert initial_config(M, (2,)) == Configuration("q0", 1, "111")
    assert initial_config(M, (0,)) == Configuration("q0", 1, "1")
    assert initial_config(M, (1, 1)) == Configuration("q0", 1, "11_11")


def test_step_examples():
    M = tiny({("q", "1"): (FINAL, -1, "1"), ("q", "_"): (FINAL, 1, "_")})
    assert step(M, Configuration("q", 2, "11")) == Configuration(FINAL, 1, "11")
    M = tiny({("q", "1"): ("q", 1, "_"), ("q", "_"): ("q", 1, "_")})
    assert step(M, Configuration("q", 1, "11")) == Configuration("q", 2, "_1")
    with pytest.raises(MachineFormatError):
        tiny({("q", "1"): ("q", 1, "1"), ("q", "_"): ("r", -1, "_")}, states=("q", "r"))
    with pytest.raises(MachineFault):
        step(tiny({("q", "1"): ("q", 1, "1"), ("q", "_"): ("q", -1, "_")}), Configuration("q", 1, ""))


def test_step_changes_at_most_one_cell():
    M = shipped_machine("add")
    comp = run(M, (2, 3))
    for a, b in zip(comp.configurations, comp.configurations[1:]):
        n = max(len(a.tape), len(b.tape))
        diff = [k for k in range(n) if a.tape.ljust(n, "_")[k] != b.tape.ljust(n, "_")[k]]
        assert diff in ([], [a.head - 1])


def test_step_on_final_is_usage_error():
    with pytest.raises(UsageError):
        step(shipped_machine("succ"), Configuration(FINAL, 1, "11"))


def test_run_succ():
    comp = run(shipped_machine("succ"), (2,))
    assert comp.halted and comp.final
    assert comp.last.tape == "1111"
    assert comp.output == 3
    assert halt_space(comp) >= 4


def test_run_underflow_fault(fixtures_dir):
    M = load_machine(fixtures_dir / "underflow.json")
    with pytest.raises(MachineFault) as info:
        run(M, (0,))
    assert len(info.value.configurations) == 1


def test_run_loop_reports_nontermination(fixtures_dir):
    comp = run(load_machine(fixtures_dir / "loop.json"), (0,), max_steps=10)
    assert not comp.halted
    assert len(comp.configurations) == 11


def test_run_is_deterministic():
    M = shipped_machine("proj")
    assert run(M, (3, 1, 2)) == run(M, (3, 1, 2))


def test_final_tape_and_is_final():
    assert final_tape(0) == "1"
    assert final_tape(3) == "1111"
    assert all(len(final_tape(y)) == y + 1 for y in range(101))
    assert is_final(Configuration(FINAL, 1, "11"))
    assert not is_final(Configuration(FINAL, 2, "11"))
    assert not is_final(Configuration("q0", 1, "11"))


def test_halt_space():
    from masa.machine import Computation

    assert halt_space(Computation((Configuration("q0", 1, "111"),), False)) == 3
    comp = Computation((Configuration("q0", 1, "11111"), Configuration("q0", 7, "11111")), False)
    assert halt_space(comp) == 7


def test_configuration_canonical_and_head():
    assert Configuration("q", 1, "1__").tape == "1"
    with pytest.raises(DomainError):
        Configuration("q", 0, "1")


def test_halting_away_from_cell_one_warns():
    comp = run(shipped_machine("add"), (0,))
    assert comp.halted and not comp.final
    assert any("head at cell" in w for w in comp.warnings())


@pytest.mark.parametrize("name", sorted(ORACLES))
def test_shipped_library_against_arithmetic(name):
    M = shipped_machine(name)
    arity, f = ORACLES[name]
    inputs = list(library_inputs(arity, 10))
    assert inputs
    for x in inputs:
        comp = run(M, x)
        assert comp.final, (x, comp.last)
        assert comp.output == f(x), x


def test_library_inputs_cover_length_bound():
    # brute force: every vector with sum + 2n - 1 <= 10
    expected = {
        x
        for n in range(1, 6)
        for x in itertools.product(range(11), repeat=n)
        if sum(x) + 2 * n - 1 <= 10
    }
    assert set(library_inputs(None, 10)) == expected


def test_loader_rejects_missing_transition(fixtures_dir):
    with pytest.raises(MachineFormatError, match=r"missing transition for \(state='q1', read='_'\)"):
        load_machine(fixtures_dir / "missing_transition.json")


def test_loader_rejects_final_state_listed_and_sink_violation():
    data = json.loads(json.dumps(shipped_machine("succ").to_json()))
    data["states"].append("F")
    with pytest.raises(MachineFormatError, match="must not be listed"):
        machine_from_json(data)
    data = shipped_machine("succ").to_json()
    data["transitions"].append({"state": "F", "read": "1", "next": "q0", "move": 1, "write": "1"})
    with pytest.raises(MachineFormatError, match=r"transitions\[8\]|outgoing"):
        machine_from_json(data)


def test_loader_positional_diagnostics():
    data = shipped_machine("succ").to_json()
    data["transitions"][3]["move"] = 0
    data["transitions"][5]["read"] = "x"
    with pytest.raises(MachineFormatError) as info:
        machine_from_json(data, source="m.json")
    msg = str(info.value)
    assert "m.json: transitions[5]" in msg
    assert "move 0" in msg


def test_loader_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    with pytest.raises(MachineFormatError, match="line 1"):
        load_machine(p)


def test_json_roundtrip_and_digest():
    M = shipped_machine("add")
    again = machine_from_json(M.to_json())
    assert again.transitions == M.transitions
    assert again.digest() == M.digest()
    assert len(M.digest()) == 64
