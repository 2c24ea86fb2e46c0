"""Compile a linear-bounded machine and an input word into a line-shaped
interaction system whose global runs mirror the machine's computation.

One component per tape cell (0 through n+1).  A cell's local state pairs a
head marker with the cell's symbol: the marker is the machine state while the
head sits on that cell and a reserved off-cell marker otherwise.  Each delta
rule becomes, per feasible cell position, one two-party interaction between
the cell the head leaves and the cell it moves onto.

Naming grammar (fixed so serialized systems are diffable):
  local states    "<marker>,<symbol>"
  leave ports     "L:<state>:<symbol>"   (head moves away, rule argument pair)
  arrive ports    "A:<state>:<symbol>"   (head moves onto, same rule argument)
  interactions    "mv:<state>:<symbol>:<from-cell>:<to-cell>"
  halt extension  "halt:*" ports, states, and interactions
"""

from __future__ import annotations

from .errors import ModelError
from .model import (
    Interaction,
    InteractionModel,
    InteractionSystem,
    LocalBehavior,
    PortId,
    canonicalize_system,
)
from .semantics import GlobalState, StatePredicate
from .turing import DTM, Configuration, validate_dtm

HALT_SND = "halt:snd"
HALT_RCV = "halt:rcv"
HALT_RELAY = "halt:relay"
HALT_WAIT = "halt:wait"
HALT_FWD = "halt:fwd"
HALT_TURN = "halt:turn"
HALT_DONE = "halt:done"


def head_marker(machine: DTM) -> str:
    """The off-cell marker, padded until it collides with no machine state."""
    marker = "s"
    while marker in machine.states:
        marker += "_"
    return marker


def cell_names(n: int) -> tuple[str, ...]:
    """Component names for cells 0..n+1, zero-padded to sort in cell order."""
    width = len(str(n + 1))
    return tuple(f"{i:0{width}d}" for i in range(n + 2))


def cell_state(marker: str, symbol: str) -> str:
    return f"{marker},{symbol}"


def leave_port(state: str, symbol: str) -> str:
    return f"L:{state}:{symbol}"


def arrive_port(state: str, symbol: str) -> str:
    return f"A:{state}:{symbol}"


def _non_halt_states(machine: DTM) -> list[str]:
    halt = {machine.accept, machine.reject}
    return [p for p in machine.states if p not in halt]


def _delta_items(machine: DTM) -> list[tuple[str, str, str, str, int]]:
    """Delta rules in declared (state, symbol) order: (p, g, p2, w, move)."""
    out = []
    for p in _non_halt_states(machine):
        for g in machine.tape_alphabet:
            p2, w, move = machine.delta[(p, g)]
            out.append((p, g, p2, w, move))
    return out


def _leave_allowed(i: int, last: int, move: int) -> bool:
    # boundary cells omit ports whose move would leave the tape
    if i == 0:
        return move == 1
    if i == last:
        return move == -1
    return True


def _arrive_allowed(i: int, last: int, move: int) -> bool:
    if i == 0:
        return move == -1
    if i == last:
        return move == 1
    return True


def compile_lsa(machine: DTM, word: str) -> InteractionSystem:
    """Build the cell system for `machine` on `word`.

    The result validates cleanly, classifies as a line, and steps in lockstep
    with the machine: mapping a non-halt configuration through
    `config_to_gstate` yields a global state with exactly one enabled
    interaction, whose successor is the image of the next configuration.
    """
    validate_dtm(machine).raise_if_failed("machine")
    allowed = set(machine.input_alphabet)
    for s in word:
        if s not in allowed:
            raise ModelError(f"input symbol {s!r} outside the input alphabet")

    n = len(word)
    last = n + 1
    cells = cell_names(n)
    marker = head_marker(machine)
    rules = _delta_items(machine)

    ports: dict[str, tuple[str, ...]] = {}
    behaviors: dict[str, LocalBehavior] = {}
    all_states = tuple(
        cell_state(p, g)
        for p in (*machine.states, marker)
        for g in machine.tape_alphabet
    )
    if len(set(all_states)) != (len(machine.states) + 1) * len(machine.tape_alphabet):
        raise ModelError("ambiguous state naming: rendered cell states collide")

    for i, cell in enumerate(cells):
        cell_ports: list[str] = []
        transitions: set[tuple[str, str, str]] = set()
        for p, g, p2, w, move in rules:
            if _leave_allowed(i, last, move):
                port = leave_port(p, g)
                cell_ports.append(port)
                transitions.add((cell_state(p, g), port, cell_state(marker, w)))
            if _arrive_allowed(i, last, move):
                port = arrive_port(p, g)
                cell_ports.append(port)
                for held in machine.tape_alphabet:
                    transitions.add(
                        (cell_state(marker, held), port, cell_state(p2, held))
                    )
        if i == 0 or i == last:
            symbol = machine.blank
        else:
            symbol = word[i - 1]
        if i == 1:
            initial = cell_state(machine.initial, word[0] if n >= 1 else machine.blank)
        else:
            initial = cell_state(marker, symbol)
        ports[cell] = tuple(cell_ports)
        behaviors[cell] = LocalBehavior(
            states=all_states,
            ports=tuple(cell_ports),
            transitions=frozenset(transitions),
            initial=initial,
        )

    interactions = []
    for p, g, _, _, move in rules:
        for i in range(n + 2):
            j = i + move
            if 0 <= j <= last:
                port_pair = [
                    PortId(cells[i], leave_port(p, g)),
                    PortId(cells[j], arrive_port(p, g)),
                ]
                port_pair.sort(key=lambda pid: pid.component)
                interactions.append(
                    Interaction(
                        f"mv:{p}:{g}:{cells[i]}:{cells[j]}",
                        tuple(port_pair),
                    )
                )
    model = InteractionModel(cells, ports, tuple(interactions))
    return InteractionSystem(model, behaviors)


def accept_predicate(machine: DTM, word: str) -> list[StatePredicate]:
    """One predicate per (cell, tape symbol): that cell carries the accept
    marker with that symbol.  The disjunction is the compiled system's
    acceptance target."""
    preds = []
    for cell in cell_names(len(word)):
        for g in machine.tape_alphabet:
            preds.append(StatePredicate.of({cell: cell_state(machine.accept, g)}))
    return preds


def config_to_gstate(machine: DTM, word: str, config: Configuration) -> GlobalState:
    """The proof bijection: the head cell renders (state, symbol), every
    other cell the off-cell marker with its symbol."""
    n = len(word)
    if len(config.tape) != n + 2:
        raise ModelError(
            f"tape length mismatch: {len(config.tape)} cells for a word of length {n}"
        )
    marker = head_marker(machine)
    return tuple(
        cell_state(config.state if i == config.head else marker, g)
        for i, g in enumerate(config.tape)
    )


def gstate_to_config(machine: DTM, word: str, gstate: GlobalState) -> Configuration:
    """Inverse of `config_to_gstate`; requires exactly one on-cell marker."""
    n = len(word)
    if len(gstate) != n + 2:
        raise ModelError(
            f"global state has {len(gstate)} entries, expected {n + 2}"
        )
    marker = head_marker(machine)
    decode = {}
    for p in (*machine.states, marker):
        for g in machine.tape_alphabet:
            decode[cell_state(p, g)] = (p, g)
    heads = []
    tape = []
    for i, name in enumerate(gstate):
        if name not in decode:
            raise ModelError(f"not a cell state: {name!r}")
        p, g = decode[name]
        tape.append(g)
        if p != marker:
            heads.append((i, p))
    if len(heads) != 1:
        raise ModelError(
            f"not a configuration state: {len(heads)} head markers present"
        )
    head, state = heads[0]
    return Configuration(state, tuple(tape), head)


def _recover_word(machine: DTM, sys_m: InteractionSystem) -> str:
    marker = head_marker(machine)
    cells = sys_m.model.components
    n = len(cells) - 2
    if n < 0:
        raise ModelError("not in compiled shape: fewer than two components")
    symbols = []
    for i in range(1, n + 1):
        name = sys_m.behaviors[cells[i]].initial
        prefix_initial = cell_state(machine.initial, "")
        prefix_marker = cell_state(marker, "")
        if i == 1 and name.startswith(prefix_initial):
            symbols.append(name[len(prefix_initial):])
        elif name.startswith(prefix_marker):
            symbols.append(name[len(prefix_marker):])
        else:
            raise ModelError(f"not in compiled shape: unexpected initial {name!r}")
    return "".join(symbols)


def extend_halt_propagation(
    sys_m: InteractionSystem, machine: DTM
) -> tuple[InteractionSystem, GlobalState]:
    """Add a halt cascade so one distinguished global state (every cell done)
    is reachable exactly when some cell can reach the accept marker.

    Two fresh ports per cell drive two waves of two-party neighbor
    interactions: the accepting cell announces the halt toward cell 0, cell 0
    turns the wave around, and the return sweep moves every cell into the
    done state.  An idle cell cannot tell from which side a wave reaches it,
    so its receive transition branches nondeterministically; the wrong branch
    merely strands the run, it never unlocks the cascade ahead of acceptance.
    The extension only touches neighbor pairs, so the line shape survives.
    """
    if len(sys_m.model.components) < 2:
        raise ModelError("not in compiled shape: fewer than two components")
    word = _recover_word(machine, sys_m)
    if canonicalize_system(compile_lsa(machine, word)) != canonicalize_system(sys_m):
        raise ModelError("not in compiled shape: system differs from a fresh compile")

    cells = sys_m.model.components
    last = len(cells) - 1
    marker = head_marker(machine)
    accept_states = [cell_state(machine.accept, g) for g in machine.tape_alphabet]
    idle_states = [cell_state(marker, g) for g in machine.tape_alphabet]

    behaviors: dict[str, LocalBehavior] = {}
    for i, cell in enumerate(cells):
        b = sys_m.behaviors[cell]
        transitions = set(b.transitions)
        if i == 0:
            extra_states = (HALT_TURN, HALT_DONE)
            for s in idle_states:
                transitions.add((s, HALT_RCV, HALT_TURN))
            transitions.add((HALT_TURN, HALT_SND, HALT_DONE))
            for s in accept_states:
                transitions.add((s, HALT_SND, HALT_DONE))
        elif i == last:
            extra_states = (HALT_WAIT, HALT_DONE)
            for s in accept_states:
                transitions.add((s, HALT_SND, HALT_WAIT))
            for s in idle_states:
                transitions.add((s, HALT_RCV, HALT_DONE))
            transitions.add((HALT_WAIT, HALT_RCV, HALT_DONE))
        else:
            extra_states = (HALT_RELAY, HALT_WAIT, HALT_FWD, HALT_DONE)
            for s in accept_states:
                transitions.add((s, HALT_SND, HALT_WAIT))
            for s in idle_states:
                transitions.add((s, HALT_RCV, HALT_RELAY))
                transitions.add((s, HALT_RCV, HALT_FWD))
            transitions.add((HALT_RELAY, HALT_SND, HALT_WAIT))
            transitions.add((HALT_WAIT, HALT_RCV, HALT_FWD))
            transitions.add((HALT_FWD, HALT_SND, HALT_DONE))
        behaviors[cell] = LocalBehavior(
            states=(*b.states, *extra_states),
            ports=(*b.ports, HALT_SND, HALT_RCV),
            transitions=frozenset(transitions),
            initial=b.initial,
        )

    ports = {
        cell: (*sys_m.model.ports[cell], HALT_SND, HALT_RCV) for cell in cells
    }
    interactions = list(sys_m.model.interactions)
    for i in range(1, last + 1):
        interactions.append(
            Interaction(
                f"halt:left:{cells[i]}",
                (PortId(cells[i - 1], HALT_RCV), PortId(cells[i], HALT_SND)),
            )
        )
        interactions.append(
            Interaction(
                f"halt:right:{cells[i]}",
                (PortId(cells[i - 1], HALT_SND), PortId(cells[i], HALT_RCV)),
            )
        )
    model = InteractionModel(cells, ports, tuple(interactions))
    distinguished = tuple(HALT_DONE for _ in cells)
    return InteractionSystem(model, behaviors), distinguished
