"""Machine syntax, bounded stepping, and full runs against closed forms."""

import pytest

from interax import (
    BoundViolation,
    Configuration,
    DTM,
    Halted,
    ModelError,
    Outcome,
    initial_config,
    run_tm,
    tm_step,
    validate_dtm,
)
from interax.fixtures import even_a, first_last


def words(alphabet, max_len):
    out = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + s for w in frontier for s in alphabet]
        out.extend(frontier)
    return out


class TestValidateDtm:
    def test_fixture_machines_clean(self):
        assert validate_dtm(even_a()).ok
        assert validate_dtm(first_last()).ok

    def test_delta_not_total(self):
        m = even_a()
        delta = dict(m.delta)
        del delta[("even", "b")]
        report = validate_dtm(DTM(m.tape_alphabet, m.input_alphabet, m.blank, m.states, m.initial, m.accept, m.reject, delta))
        assert any("delta not total" in f.message for f in report.findings)

    def test_blank_in_input_alphabet(self):
        m = even_a()
        report = validate_dtm(
            DTM(m.tape_alphabet, ("a", "b"), m.blank, m.states, m.initial, m.accept, m.reject, dict(m.delta))
        )
        assert any("blank in input alphabet" in f.message for f in report.findings)

    def test_delta_on_halt_state(self):
        m = even_a()
        delta = dict(m.delta)
        delta[("accept", "a")] = ("accept", "a", 1)
        report = validate_dtm(DTM(m.tape_alphabet, m.input_alphabet, m.blank, m.states, m.initial, m.accept, m.reject, delta))
        assert any(f.rule == "delta-on-halt" for f in report.findings)

    def test_bad_move_value(self):
        m = even_a()
        delta = dict(m.delta)
        delta[("even", "a")] = ("odd", "a", 0)
        report = validate_dtm(DTM(m.tape_alphabet, m.input_alphabet, m.blank, m.states, m.initial, m.accept, m.reject, delta))
        assert any(f.rule == "delta-bad-move" for f in report.findings)

    def test_accept_equals_reject(self):
        m = even_a()
        report = validate_dtm(
            DTM(m.tape_alphabet, m.input_alphabet, m.blank, m.states, m.initial, "accept", "accept", dict(m.delta))
        )
        assert any(f.rule == "halt-states-equal" for f in report.findings)


class TestInitialConfig:
    def test_two_symbol_word(self):
        c = initial_config(even_a(), "aa")
        assert c == Configuration("even", ("b", "a", "a", "b"), 1)

    def test_empty_word_two_cells(self):
        c = initial_config(even_a(), "")
        assert c == Configuration("even", ("b", "b"), 1)

    def test_symbol_outside_input_alphabet(self):
        with pytest.raises(ModelError, match="outside the input alphabet"):
            initial_config(even_a(), "ba")  # b is a tape symbol, not an input


class TestTmStep:
    def test_first_step_on_aa(self):
        m = even_a()
        after = tm_step(m, initial_config(m, "aa"))
        assert after == Configuration("odd", ("b", "a", "a", "b"), 2)

    def test_halt_state_reports_halted(self):
        m = even_a()
        assert tm_step(m, Configuration("accept", ("b", "b"), 0)) == Halted(True)
        assert tm_step(m, Configuration("reject", ("b", "b"), 0)) == Halted(False)

    def test_bound_violation_moving_right_off_tape(self):
        m = even_a()
        # reading "a" at the last cell moves right, off the tape
        assert tm_step(m, Configuration("even", ("b", "a"), 1)) == BoundViolation(2)
        assert tm_step(m, Configuration("even", ("b", "a", "a", "a"), 3)) == BoundViolation(4)

    def test_tape_length_preserved_and_single_cell_write(self):
        m = first_last()
        c = initial_config(m, "010")
        while True:
            nxt = tm_step(m, c)
            if not isinstance(nxt, Configuration):
                break
            assert len(nxt.tape) == len(c.tape)
            changed = [i for i in range(len(c.tape)) if c.tape[i] != nxt.tape[i]]
            assert changed in ([], [c.head])
            c = nxt


class TestRunTm:
    def test_even_a_hand_checked_runs(self):
        m = even_a()
        assert run_tm(m, "aa").outcome is Outcome.ACCEPT
        assert run_tm(m, "aa").steps == 3
        assert run_tm(m, "a").outcome is Outcome.REJECT
        assert run_tm(m, "a").steps == 2
        assert run_tm(m, "").outcome is Outcome.ACCEPT
        assert run_tm(m, "").steps == 1

    def test_even_a_closed_form_to_length_six(self):
        m = even_a()
        for w in words(["a"], 6):
            expected = Outcome.ACCEPT if len(w) % 2 == 0 else Outcome.REJECT
            assert run_tm(m, w).outcome is expected

    def test_first_last_closed_form_to_length_six(self):
        m = first_last()
        for w in words(["0", "1"], 6):
            expected = (
                Outcome.ACCEPT if w == "" or w[0] == w[-1] else Outcome.REJECT
            )
            assert run_tm(m, w).outcome is expected, w

    def test_step_limit_on_looping_machine(self):
        loop = DTM(
            tape_alphabet=("a", "b"),
            input_alphabet=("a",),
            blank="b",
            states=("go", "back", "accept", "reject"),
            initial="go",
            accept="accept",
            reject="reject",
            delta={
                ("go", "a"): ("back", "a", 1),
                ("go", "b"): ("back", "b", 1),
                ("back", "a"): ("go", "a", -1),
                ("back", "b"): ("go", "b", -1),
            },
        )
        assert validate_dtm(loop).ok
        result = run_tm(loop, "a")
        assert result.outcome is Outcome.STEP_LIMIT
        # default limit equals the count of distinct configurations
        assert result.steps == 4 * 2**3 * 3

    def test_bound_violation_outcome(self):
        runaway = DTM(
            tape_alphabet=("a", "b"),
            input_alphabet=("a",),
            blank="b",
            states=("go", "accept", "reject"),
            initial="go",
            accept="accept",
            reject="reject",
            delta={("go", "a"): ("go", "a", 1), ("go", "b"): ("go", "b", 1)},
        )
        assert run_tm(runaway, "a").outcome is Outcome.BOUND_VIOLATION

    def test_determinism_single_outcome_per_config(self):
        m = first_last()
        c = initial_config(m, "01")
        seen = {tm_step(m, c) for _ in range(5)}
        assert len(seen) == 1
