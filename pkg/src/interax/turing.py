"""Deterministic Turing machines with a linear-bounded runtime guard.

Machines run on a tape of exactly n+2 cells (0 through n+1 for an input of
length n).  Whether a machine really is linear bounded is semantic and
undecidable in general, so the simulator enforces the bound at runtime: a
step that would move the head off either end yields a BoundViolation outcome
instead of growing the tape.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import ModelError
from .validation import ValidationReport


@dataclass(frozen=True)
class DTM:
    """A deterministic Turing machine.

    `delta` maps (state, read symbol) to (next state, written symbol, move)
    with move in {-1, +1}; it must be total on non-halt states and defined
    nowhere else.
    """

    tape_alphabet: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    blank: str
    states: tuple[str, ...]
    initial: str
    accept: str
    reject: str
    delta: Mapping[tuple[str, str], tuple[str, str, int]]


@dataclass(frozen=True)
class Configuration:
    """Machine state, the n+2 tape symbols, and the head cell index."""

    state: str
    tape: tuple[str, ...]
    head: int


@dataclass(frozen=True)
class Halted:
    accepting: bool


@dataclass(frozen=True)
class BoundViolation:
    """The step would move the head to `head`, outside the tape."""

    head: int


class Outcome(Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    BOUND_VIOLATION = "bound_violation"
    STEP_LIMIT = "step_limit"


@dataclass(frozen=True)
class RunResult:
    outcome: Outcome
    steps: int
    final: Configuration


def validate_dtm(machine: DTM) -> ValidationReport:
    """Check alphabets, distinguished states, and delta totality/domain."""
    report = ValidationReport()
    m = machine

    for label, symbols in (("tape", m.tape_alphabet), ("input", m.input_alphabet)):
        dupes = {s for s in symbols if symbols.count(s) > 1}
        for s in sorted(dupes):
            report.add("duplicate-symbol", f"{label} alphabet lists {s} twice")
    dupes = {s for s in m.states if m.states.count(s) > 1}
    for s in sorted(dupes):
        report.add("duplicate-state", f"state {s} listed twice")

    tape = set(m.tape_alphabet)
    for s in m.input_alphabet:
        if s not in tape:
            report.add("input-outside-tape", f"input symbol {s} not in tape alphabet")
    if m.blank not in tape:
        report.add("blank-missing", f"blank {m.blank} not in tape alphabet")
    if m.blank in set(m.input_alphabet):
        report.add("blank-in-input", f"blank in input alphabet: {m.blank}")

    states = set(m.states)
    for role, name in (
        ("initial", m.initial),
        ("accept", m.accept),
        ("reject", m.reject),
    ):
        if name not in states:
            report.add("missing-state", f"{role} state {name} not declared")
    if m.accept == m.reject:
        report.add("halt-states-equal", "accept and reject states coincide")

    halt = {m.accept, m.reject}
    for p in m.states:
        if p in halt:
            continue
        for g in m.tape_alphabet:
            if (p, g) not in m.delta:
                report.add("delta-not-total", f"delta not total: no rule for ({p}, {g})")
    for (p, g), (p2, w, move) in sorted(m.delta.items()):
        if p in halt:
            report.add("delta-on-halt", f"delta defined on halt state ({p}, {g})")
        if p not in states:
            report.add("delta-unknown-state", f"delta rule for unknown state {p}")
        if g not in tape:
            report.add("delta-unknown-symbol", f"delta rule reads unknown symbol {g}")
        if p2 not in states:
            report.add("delta-unknown-state", f"delta rule targets unknown state {p2}")
        if w not in tape:
            report.add("delta-unknown-symbol", f"delta rule writes unknown symbol {w}")
        if move not in (-1, 1):
            report.add("delta-bad-move", f"delta rule ({p}, {g}) has move {move}")

    return report


def initial_config(machine: DTM, word: str) -> Configuration:
    """Blank, the input on cells 1..n, blank; head on cell 1 (which holds the
    blank when the input is empty)."""
    symbols = list(word)
    allowed = set(machine.input_alphabet)
    for s in symbols:
        if s not in allowed:
            raise ModelError(f"input symbol {s!r} outside the input alphabet")
    tape = (machine.blank, *symbols, machine.blank)
    return Configuration(machine.initial, tape, 1)


def tm_step(machine: DTM, config: Configuration):
    """One move: Configuration, Halted, or BoundViolation."""
    if config.state == machine.accept:
        return Halted(True)
    if config.state == machine.reject:
        return Halted(False)
    key = (config.state, config.tape[config.head])
    rule = machine.delta.get(key)
    if rule is None:
        raise ModelError(f"delta has no rule for {key}")
    state, written, move = rule
    head = config.head + move
    if head < 0 or head >= len(config.tape):
        return BoundViolation(head)
    tape = list(config.tape)
    tape[config.head] = written
    return Configuration(state, tuple(tape), head)


def default_step_limit(machine: DTM, word: str) -> int:
    """Number of distinct configurations: a run longer than this loops."""
    cells = len(word) + 2
    return len(machine.states) * len(machine.tape_alphabet) ** cells * cells


def run_tm(machine: DTM, word: str, max_steps: int | None = None) -> RunResult:
    """Iterate tm_step from the initial configuration and classify the end."""
    limit = default_step_limit(machine, word) if max_steps is None else max_steps
    config = initial_config(machine, word)
    steps = 0
    while True:
        result = tm_step(machine, config)
        if isinstance(result, Halted):
            outcome = Outcome.ACCEPT if result.accepting else Outcome.REJECT
            return RunResult(outcome, steps, config)
        if isinstance(result, BoundViolation):
            return RunResult(Outcome.BOUND_VIOLATION, steps, config)
        if steps + 1 > limit:
            return RunResult(Outcome.STEP_LIMIT, steps, config)
        steps += 1
        config = result


def canonicalize_dtm(machine: DTM) -> DTM:
    """Sorted alphabets and state list; the rule table is order-free."""
    return DTM(
        tape_alphabet=tuple(sorted(set(machine.tape_alphabet))),
        input_alphabet=tuple(sorted(set(machine.input_alphabet))),
        blank=machine.blank,
        states=tuple(sorted(set(machine.states))),
        initial=machine.initial,
        accept=machine.accept,
        reject=machine.reject,
        delta=dict(machine.delta),
    )
