"""Independent truth sources: brute-force reachability over the enumerated
product, seeded random system generation, and the two end-to-end equivalence
checkers.

The brute-force fixpoint shares no machinery with `semantics.explore`: it
materializes the full product space up front, recomputes interaction
enabledness per state straight from the definitions, and sweeps until no new
state appears.  A frontier or hashing bug in the engine therefore cannot
hide here.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .errors import ModelError
from .model import (
    Interaction,
    InteractionModel,
    InteractionSystem,
    LocalBehavior,
    PortId,
)
from .reduce_linear import (
    accept_predicate,
    compile_lsa,
    config_to_gstate,
)
from .reduce_star import project_state, starify
from .semantics import GlobalState, _Engine, is_reachable
from .turing import DTM, Configuration, Halted, Outcome, initial_config, run_tm, tm_step

BRUTE_FORCE_LIMIT = 10_000

# documented seed batches for the randomized equivalence checks
STAR_EQUIVALENCE_SEEDS = tuple(range(100))
ENGINE_EQUIVALENCE_SEEDS = tuple(range(200))


@dataclass(frozen=True)
class GenParams:
    """Knobs for `gen_random_system`; every bound is inclusive and >= 1."""

    seed: int
    max_components: int = 4
    max_states: int = 3
    max_ports: int = 4
    max_interactions: int = 6
    max_interaction_size: int = 3


@dataclass(frozen=True)
class Verdict:
    agree: bool
    details: str


def brute_force_reachable(sys: InteractionSystem) -> set[GlobalState]:
    """Least fixpoint of the global transition relation over the complete
    enumerated product (guarded at 10,000 product states)."""
    components = sys.model.components
    behaviors = [sys.behaviors[c] for c in components]
    product_size = math.prod(len(set(b.states)) for b in behaviors)
    if product_size > BRUTE_FORCE_LIMIT:
        raise ModelError(
            f"product too large for brute force: {product_size} > {BRUTE_FORCE_LIMIT}"
        )

    local: list[dict[tuple[str, str], list[str]]] = []
    for b in behaviors:
        table: dict[tuple[str, str], list[str]] = {}
        for src, port, dst in b.transitions:
            table.setdefault((src, port), []).append(dst)
        local.append({k: sorted(set(v)) for k, v in table.items()})

    order = {c: k for k, c in enumerate(components)}
    participant_lists = [
        [(order[p.component], p.port) for p in a.ports] for a in sys.model.interactions
    ]

    product = set(itertools.product(*[tuple(set(b.states)) for b in behaviors]))
    initial = tuple(b.initial for b in behaviors)
    if initial not in product:
        raise ModelError("initial state outside the product (invalid system)")

    reachable = {initial}
    changed = True
    while changed:
        changed = False
        for q in sorted(reachable):
            for parts in participant_lists:
                options = []
                for ci, port in parts:
                    targets = local[ci].get((q[ci], port))
                    if not targets:
                        options = None
                        break
                    options.append((ci, targets))
                if options is None:
                    continue
                for combo in itertools.product(*[t for _, t in options]):
                    succ = list(q)
                    for (ci, _), target in zip(options, combo):
                        succ[ci] = target
                    succ_t = tuple(succ)
                    if succ_t not in reachable:
                        if succ_t not in product:
                            raise ModelError(
                                "successor outside the product (invalid system)"
                            )
                        reachable.add(succ_t)
                        changed = True
    return reachable


def gen_random_system(params: GenParams) -> InteractionSystem:
    """A pseudo-random valid system, deterministic for a given seed.

    Interactions are drawn first and port families collect exactly the ports
    the interactions use, so every port is covered by construction.  Local
    relations are sometimes nondeterministic and some ports may never be
    enabled; both are legal."""
    for name in (
        "max_components",
        "max_states",
        "max_ports",
        "max_interactions",
        "max_interaction_size",
    ):
        if getattr(params, name) < 1:
            raise ModelError(f"{name} must be >= 1")
    rng = random.Random(params.seed)
    n_comp = rng.randint(1, params.max_components)
    comps = [f"k{j}" for j in range(n_comp)]
    pool = [f"p{j}" for j in range(params.max_ports)]

    interactions: list[Interaction] = []
    seen: set[frozenset[PortId]] = set()
    order = {c: k for k, c in enumerate(comps)}
    for _ in range(rng.randint(1, params.max_interactions)):
        size = rng.randint(1, min(params.max_interaction_size, n_comp))
        members = rng.sample(comps, size)
        pids = tuple(
            sorted(
                (PortId(c, rng.choice(pool)) for c in members),
                key=lambda p: order[p.component],
            )
        )
        key = frozenset(pids)
        if key in seen:
            continue
        seen.add(key)
        interactions.append(Interaction(f"alpha_{len(interactions)}", pids))

    used: dict[str, list[str]] = {c: [] for c in comps}
    for a in interactions:
        for pid in a.ports:
            if pid.port not in used[pid.component]:
                used[pid.component].append(pid.port)
    ports = {c: tuple(sorted(used[c])) for c in comps}

    behaviors: dict[str, LocalBehavior] = {}
    for c in comps:
        n_states = rng.randint(1, params.max_states)
        states = tuple(f"q{j}" for j in range(n_states))
        transitions: set[tuple[str, str, str]] = set()
        for s in states:
            for port in ports[c]:
                roll = rng.random()
                if roll < 0.75:
                    transitions.add((s, port, rng.choice(states)))
                if roll < 0.2:
                    transitions.add((s, port, rng.choice(states)))
        behaviors[c] = LocalBehavior(states, ports[c], frozenset(transitions), states[0])

    model = InteractionModel(tuple(comps), ports, tuple(interactions))
    return InteractionSystem(model, behaviors)


def _lockstep_check(machine: DTM, word: str, sys_m: InteractionSystem) -> tuple[bool, str]:
    """Replay the full run: each non-halt configuration must enable exactly
    one interaction, whose successor is the image of the next configuration."""
    eng = _Engine(sys_m)
    config = initial_config(machine, word)
    step_no = 0
    while True:
        result = tm_step(machine, config)
        if isinstance(result, Halted):
            return True, f"lockstep held for {step_no} steps"
        if not isinstance(result, Configuration):
            return True, f"lockstep check stopped at step {step_no}: {result}"
        here = eng.pack(config_to_gstate(machine, word, config))
        succs = eng.successors(here)
        if len(succs) != 1:
            return False, (
                f"step {step_no}: {len(succs)} interactions enabled, expected 1"
            )
        expected = eng.pack(config_to_gstate(machine, word, result))
        if succs[0][1] != expected:
            return False, f"step {step_no}: successor mismatch via {succs[0][0]}"
        config = result
        step_no += 1


def check_theorem1(machine: DTM, word: str) -> Verdict:
    """Machine acceptance of the word versus reachability of the accept
    predicate in the compiled line system, plus the lockstep replay."""
    run = run_tm(machine, word)
    sys_m = compile_lsa(machine, word)
    reach = is_reachable(sys_m, accept_predicate(machine, word))
    lock_ok, lock_msg = _lockstep_check(machine, word, sys_m)
    tm_accepts = run.outcome is Outcome.ACCEPT
    agree = (tm_accepts == reach.reachable) and lock_ok
    details = (
        f"tm={run.outcome.value} in {run.steps} steps; "
        f"reachable={reach.reachable}; {lock_msg}"
    )
    return Verdict(agree, details)


def check_theorem2(sys: InteractionSystem) -> Verdict:
    """Brute-force reachable set of the system versus the hub-idle projection
    of the brute-force reachable set of its starification."""
    base = brute_force_reachable(sys)
    transformed = starify(sys)
    lifted = brute_force_reachable(transformed)
    projected = set()
    for q in lifted:
        p = project_state(transformed, q)
        if p is not None:
            projected.add(p)
    agree = projected == base
    details = (
        f"|reach|={len(base)} |reach'|={len(lifted)} |projected|={len(projected)}"
    )
    return Verdict(agree, details)
