"""Composed global semantics and explicit-state reachability.

A global state is a tuple of local state names, one per component, in the
model's component order.  Interactions fire atomically: every participant
takes a local transition labeled by its port, every other component keeps its
state.  Exploration is breadth-first with a canonical expansion order
(interaction name ascending, then successor state ascending by local state
indices), so reachable sets, traces, and counters are reproducible.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ModelError
from .model import InteractionSystem, validate_system

GlobalState = tuple[str, ...]

DEFAULT_MAX_STATES = 1_000_000


@dataclass(frozen=True)
class StatePredicate:
    """Exact-state constraints per component; unlisted components match any
    state.  Build with `StatePredicate.of({"S": "busy", "c1": "*"})`; a "*"
    value is the explicit wildcard."""

    constraints: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, constraints: Mapping[str, str]) -> "StatePredicate":
        exact = {c: s for c, s in dict(constraints).items() if s != "*"}
        return cls(tuple(sorted(exact.items())))

    def as_dict(self) -> dict[str, str]:
        return dict(self.constraints)


@dataclass
class ReachableSet:
    """Result of `explore`: the reachable states, the number of transition
    edges generated, and whether the fixpoint completed within the bound."""

    states: set[GlobalState]
    transitions: int
    complete: bool


@dataclass
class ReachResult:
    """Result of `is_reachable`.  `trace` is a shortest witness (interaction
    names) when reachable, else None.  `complete` is False only when the
    search was truncated by `max_states` before finding a witness."""

    reachable: bool
    trace: list[str] | None
    states_explored: int
    transitions_explored: int
    complete: bool


class _Engine:
    """Index-packed view of a validated system for the search loops."""

    def __init__(self, sys: InteractionSystem):
        model = sys.model
        self.components = model.components
        self.state_names = [sys.behaviors[c].states for c in model.components]
        self.state_index = [
            {s: k for k, s in enumerate(states)} for states in self.state_names
        ]
        comp_order = {c: k for k, c in enumerate(model.components)}

        # per component: (state index, port) -> ascending target indices
        self.moves: list[dict[tuple[int, str], tuple[int, ...]]] = []
        for ci, c in enumerate(model.components):
            b = sys.behaviors[c]
            index = self.state_index[ci]
            table: dict[tuple[int, str], list[int]] = {}
            for src, port, dst in b.transitions:
                table.setdefault((index[src], port), []).append(index[dst])
            self.moves.append({k: tuple(sorted(set(v))) for k, v in table.items()})

        inters = []
        for a in model.interactions:
            parts = tuple(
                sorted((comp_order[p.component], p.port) for p in a.ports)
            )
            inters.append((a.name, parts))
        inters.sort(key=lambda t: t[0])
        self.interactions = inters

        self.initial = tuple(
            self.state_index[ci][sys.behaviors[c].initial]
            for ci, c in enumerate(model.components)
        )

    def pack(self, q: GlobalState) -> tuple[int, ...]:
        if len(q) != len(self.components):
            raise ModelError(
                f"global state has {len(q)} entries, expected {len(self.components)}"
            )
        packed = []
        for ci, s in enumerate(q):
            k = self.state_index[ci].get(s)
            if k is None:
                raise ModelError(
                    f"no such state: {s!r} in component {self.components[ci]}"
                )
            packed.append(k)
        return tuple(packed)

    def unpack(self, q: tuple[int, ...]) -> GlobalState:
        return tuple(self.state_names[ci][k] for ci, k in enumerate(q))

    def enabled(self, q: tuple[int, ...]) -> list[tuple[str, tuple[tuple[int, str], ...]]]:
        out = []
        for name, parts in self.interactions:
            if all((q[ci], port) in self.moves[ci] for ci, port in parts):
                out.append((name, parts))
        return out

    def successors(self, q: tuple[int, ...]) -> list[tuple[str, tuple[int, ...]]]:
        """All (interaction name, successor) pairs in canonical order."""
        out = []
        for name, parts in self.enabled(q):
            choice_sets = [self.moves[ci][(q[ci], port)] for ci, port in parts]
            indices = [ci for ci, _ in parts]
            for combo in itertools.product(*choice_sets):
                succ = list(q)
                for ci, target in zip(indices, combo):
                    succ[ci] = target
                out.append((name, tuple(succ)))
        out.sort()
        return out


def _engine(sys: InteractionSystem) -> _Engine:
    validate_system(sys).raise_if_failed("system")
    return _Engine(sys)


def enabled_interactions(sys: InteractionSystem, q: GlobalState) -> frozenset[str]:
    """Names of interactions whose every participant enables its port in q."""
    eng = _engine(sys)
    packed = eng.pack(q)
    return frozenset(name for name, _ in eng.enabled(packed))


def step(sys: InteractionSystem, q: GlobalState, interaction: str) -> GlobalState:
    """Fire one interaction.  Participants move along their local transition
    (lowest target-state index when the local relation is nondeterministic);
    everyone else keeps its state.  Raises when the interaction is disabled,
    naming the blocking components."""
    eng = _engine(sys)
    packed = eng.pack(q)
    for name, parts in eng.interactions:
        if name != interaction:
            continue
        blockers = [
            eng.components[ci]
            for ci, port in parts
            if (packed[ci], port) not in eng.moves[ci]
        ]
        if blockers:
            raise ModelError(
                f"interaction disabled: {interaction} blocked by {', '.join(blockers)}"
            )
        succ = list(packed)
        for ci, port in parts:
            succ[ci] = eng.moves[ci][(packed[ci], port)][0]
        return eng.unpack(tuple(succ))
    raise ModelError(f"no such interaction: {interaction!r}")


def successors(
    sys: InteractionSystem, q: GlobalState
) -> list[tuple[str, GlobalState]]:
    """All global transitions out of q, including every resolution of local
    nondeterminism, sorted by (interaction name, successor)."""
    eng = _engine(sys)
    packed = eng.pack(q)
    return [(name, eng.unpack(s)) for name, s in eng.successors(packed)]


def _expand_layer(
    eng: _Engine,
    layer: list[tuple[int, ...]],
    pool: ThreadPoolExecutor | None,
) -> list[list[tuple[str, tuple[int, ...]]]]:
    if pool is not None and len(layer) > 1:
        return list(pool.map(eng.successors, layer))
    return [eng.successors(q) for q in layer]


def explore(
    sys: InteractionSystem,
    max_states: int | None = None,
    workers: int = 1,
) -> ReachableSet:
    """Breadth-first fixpoint from the global initial state.

    The reachable set is independent of `workers`: layers are expanded in
    frontier order and merged in submission order, so the result equals the
    sequential exploration.  When `max_states` (default 1,000,000) is hit,
    discovery stops and the completion flag is False.
    """
    limit = DEFAULT_MAX_STATES if max_states is None else max_states
    eng = _engine(sys)
    visited = {eng.initial}
    frontier = [eng.initial]
    transitions = 0
    truncated = False
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            next_frontier: list[tuple[int, ...]] = []
            for succs in _expand_layer(eng, frontier, pool):
                transitions += len(succs)
                for _, q2 in succs:
                    if q2 in visited:
                        continue
                    if len(visited) >= limit:
                        truncated = True
                        continue
                    visited.add(q2)
                    next_frontier.append(q2)
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown()
    return ReachableSet(
        states={eng.unpack(q) for q in visited},
        transitions=transitions,
        complete=not truncated,
    )


def resolve_predicate(
    sys: InteractionSystem, constraints: Mapping[str, str]
) -> StatePredicate:
    """Build a predicate against a system, rejecting unknown names."""
    pred = StatePredicate.of(constraints)
    comp_index = {c: k for k, c in enumerate(sys.model.components)}
    for comp, state in pred.constraints:
        if comp not in comp_index:
            raise ModelError(f"predicate names unknown component {comp!r}")
        if state not in sys.behaviors[comp].states:
            raise ModelError(
                f"predicate names unknown state {state!r} of component {comp}"
            )
    return pred


def satisfies(sys: InteractionSystem, pred: StatePredicate, q: GlobalState) -> bool:
    """Does the global state meet every exact constraint of the predicate?"""
    comp_index = {c: k for k, c in enumerate(sys.model.components)}
    if len(q) != len(comp_index):
        raise ModelError(
            f"global state has {len(q)} entries, expected {len(comp_index)}"
        )
    for comp, state in pred.constraints:
        if comp not in comp_index:
            raise ModelError(f"predicate names unknown component {comp!r}")
        if q[comp_index[comp]] != state:
            return False
    return True


def _predicate_indices(
    eng: _Engine, sys: InteractionSystem, target: StatePredicate
) -> list[tuple[int, int]]:
    comp_index = {c: k for k, c in enumerate(eng.components)}
    out = []
    for comp, state in target.constraints:
        if comp not in comp_index:
            raise ModelError(f"predicate names unknown component {comp!r}")
        ci = comp_index[comp]
        si = eng.state_index[ci].get(state)
        if si is None:
            raise ModelError(
                f"predicate names unknown state {state!r} of component {comp}"
            )
        out.append((ci, si))
    return out


def is_reachable(
    sys: InteractionSystem,
    target: StatePredicate | Sequence[StatePredicate],
    max_states: int | None = None,
    workers: int = 1,
) -> ReachResult:
    """Decide whether a state satisfying `target` (any member, when a list is
    given) is reachable, returning a shortest witness trace when it is.

    Truncated searches that found nothing report reachable=False with
    complete=False.
    """
    limit = DEFAULT_MAX_STATES if max_states is None else max_states
    targets = [target] if isinstance(target, StatePredicate) else list(target)
    if not targets:
        raise ModelError("empty target disjunction")
    eng = _engine(sys)
    needs = [_predicate_indices(eng, sys, t) for t in targets]

    def matches(q: tuple[int, ...]) -> bool:
        return any(all(q[ci] == si for ci, si in need) for need in needs)

    if matches(eng.initial):
        return ReachResult(True, [], 1, 0, True)

    parents: dict[tuple[int, ...], tuple[tuple[int, ...], str]] = {}
    visited = {eng.initial}
    frontier = [eng.initial]
    transitions = 0
    truncated = False
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            next_frontier: list[tuple[int, ...]] = []
            for q1, succs in zip(frontier, _expand_layer(eng, frontier, pool)):
                transitions += len(succs)
                for name, q2 in succs:
                    if q2 in visited:
                        continue
                    if len(visited) >= limit:
                        truncated = True
                        continue
                    visited.add(q2)
                    parents[q2] = (q1, name)
                    if matches(q2):
                        trace: list[str] = []
                        node = q2
                        while node != eng.initial:
                            node, via = parents[node]
                            trace.append(via)
                        trace.reverse()
                        return ReachResult(
                            True, trace, len(visited), transitions, True
                        )
                    next_frontier.append(q2)
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown()
    return ReachResult(False, None, len(visited), transitions, not truncated)


def replay_trace(
    sys: InteractionSystem, trace: Iterable[str]
) -> set[GlobalState]:
    """All states reachable from the initial state by firing exactly the
    given interaction names in order, under every resolution of local
    nondeterminism.  Raises if some step is impossible from every state of
    the current set."""
    eng = _engine(sys)
    current = {eng.initial}
    for k, name in enumerate(trace):
        following: set[tuple[int, ...]] = set()
        for q in current:
            for via, q2 in eng.successors(q):
                if via == name:
                    following.add(q2)
        if not following:
            raise ModelError(f"trace step {k} ({name}) is not fireable")
        current = following
    return {eng.unpack(q) for q in current}
