"""Transform any interaction system into a hub-and-spokes system.

A fresh control component becomes the hub; every original component talks
only to it.  Each original interaction is simulated in two phases driven by
the hub: a check walk asking every participant whether its port is enabled
(components answer through ok/not-ok self-loops that never change their
state; any not-ok aborts back to the hub's idle state), then a fire walk
performing each port in order.  Reachability is preserved up to the hub
coordinate: projecting the hub-idle states of the transformed system onto
the original components yields exactly the original reachable set.

Name mangling (fixed, collision-checked):
  component side   "ok:<port>", "nok:<port>" added next to each port
  hub ports        "ok:<comp>.<port>", "nok:<comp>.<port>",
                   "fire:<comp>.<port>", "start:<interaction>"
  hub states       "idle", "chk:<interaction>:<k>", "fire:<interaction>:<k>"
"""

from __future__ import annotations

from .errors import ModelError
from .model import (
    Interaction,
    InteractionModel,
    InteractionSystem,
    LocalBehavior,
    PortId,
    enabled_ports,
    validate_system,
)
from .semantics import GlobalState

IDLE = "idle"


def _hub_name(model: InteractionModel) -> str:
    name = "cc"
    while name in model.components:
        name += "_"
    return name


def _ok(port: str) -> str:
    return f"ok:{port}"


def _nok(port: str) -> str:
    return f"nok:{port}"


def _hub_ok(pid: PortId) -> str:
    return f"ok:{pid}"


def _hub_nok(pid: PortId) -> str:
    return f"nok:{pid}"


def _hub_fire(pid: PortId) -> str:
    return f"fire:{pid}"


def _hub_start(name: str) -> str:
    return f"start:{name}"


def _ordered_ports(model: InteractionModel, a: Interaction) -> list[PortId]:
    order = {c: k for k, c in enumerate(model.components)}
    return sorted(a.ports, key=lambda p: order.get(p.component, len(order)))


def build_cc_behavior(model: InteractionModel) -> LocalBehavior:
    """The hub's behavior: one check-then-fire lobe per interaction, all
    sharing the idle state.  Per interaction with k ports that is 2k states
    and 3k+1 transitions; every non-idle state enables exactly one port."""
    states = [IDLE]
    transitions: set[tuple[str, str, str]] = set()
    ports: list[str] = []
    for comp in model.components:
        for port in model.ports.get(comp, ()):
            pid = PortId(comp, port)
            ports.extend((_hub_ok(pid), _hub_nok(pid), _hub_fire(pid)))
    for a in model.interactions:
        ports.append(_hub_start(a.name))
        walk = _ordered_ports(model, a)
        k = len(walk)
        chk = [f"chk:{a.name}:{m}" for m in range(1, k + 1)]
        fire = [f"fire:{a.name}:{m}" for m in range(1, k + 1)]
        states.extend(chk)
        states.extend(fire)
        transitions.add((IDLE, _hub_start(a.name), chk[0]))
        for m, pid in enumerate(walk):
            after_check = chk[m + 1] if m + 1 < k else fire[0]
            transitions.add((chk[m], _hub_ok(pid), after_check))
            transitions.add((chk[m], _hub_nok(pid), IDLE))
            after_fire = fire[m + 1] if m + 1 < k else IDLE
            transitions.add((fire[m], _hub_fire(pid), after_fire))
    return LocalBehavior(
        states=tuple(states),
        ports=tuple(ports),
        transitions=frozenset(transitions),
        initial=IDLE,
    )


def starify(sys: InteractionSystem) -> InteractionSystem:
    """Build the hub-and-spokes equivalent of `sys`.

    The hub is appended as the last component, so a global state of the
    result is a global state of `sys` plus one trailing hub coordinate.
    """
    validate_system(sys).raise_if_failed("system")
    model = sys.model
    hub = _hub_name(model)

    behaviors: dict[str, LocalBehavior] = {}
    ports: dict[str, tuple[str, ...]] = {}
    for comp in model.components:
        b = sys.behaviors[comp]
        base = set(b.ports)
        lifted = list(b.ports)
        for port in b.ports:
            for variant in (_ok(port), _nok(port)):
                if variant in base:
                    raise ModelError(
                        f"port name collision: {comp}.{variant} already exists"
                    )
                lifted.append(variant)
        transitions = set(b.transitions)
        for state in b.states:
            can = enabled_ports(b, state)
            for port in b.ports:
                loop = _ok(port) if port in can else _nok(port)
                transitions.add((state, loop, state))
        ports[comp] = tuple(lifted)
        behaviors[comp] = LocalBehavior(
            states=b.states,
            ports=tuple(lifted),
            transitions=frozenset(transitions),
            initial=b.initial,
        )

    interactions: list[Interaction] = []
    for comp in model.components:
        for port in model.ports.get(comp, ()):
            pid = PortId(comp, port)
            interactions.append(
                Interaction(
                    _hub_ok(pid),
                    (PortId(comp, _ok(port)), PortId(hub, _hub_ok(pid))),
                )
            )
            interactions.append(
                Interaction(
                    _hub_nok(pid),
                    (PortId(comp, _nok(port)), PortId(hub, _hub_nok(pid))),
                )
            )
            interactions.append(
                Interaction(
                    _hub_fire(pid),
                    (PortId(comp, port), PortId(hub, _hub_fire(pid))),
                )
            )
    for a in model.interactions:
        interactions.append(
            Interaction(_hub_start(a.name), (PortId(hub, _hub_start(a.name)),))
        )

    cc = build_cc_behavior(model)
    ports[hub] = cc.ports
    behaviors[hub] = cc
    new_model = InteractionModel(
        (*model.components, hub), ports, tuple(interactions)
    )
    return InteractionSystem(new_model, behaviors)


def lift_state(sys: InteractionSystem, q: GlobalState) -> GlobalState:
    """The state of starify(sys) matching q: q with an idle hub appended."""
    if len(q) != len(sys.model.components):
        raise ModelError(
            f"global state has {len(q)} entries, expected {len(sys.model.components)}"
        )
    for comp, state in zip(sys.model.components, q):
        if state not in sys.behaviors[comp].states:
            raise ModelError(f"no such state: {state!r} in component {comp}")
    return (*q, IDLE)


def _looks_like_hub(behavior: LocalBehavior) -> bool:
    if behavior.initial != IDLE:
        return False
    if any(
        not s.startswith(("chk:", "fire:")) for s in behavior.states if s != IDLE
    ):
        return False
    return all(
        p.startswith(("ok:", "nok:", "fire:", "start:")) for p in behavior.ports
    )


def project_state(sys_prime: InteractionSystem, q: GlobalState) -> GlobalState | None:
    """Drop the hub coordinate when the hub is idle; None mid-protocol."""
    components = sys_prime.model.components
    if len(q) != len(components):
        raise ModelError(
            f"global state has {len(q)} entries, expected {len(components)}"
        )
    if not _looks_like_hub(sys_prime.behaviors[components[-1]]):
        raise ModelError("not a starified system: last component is not the hub")
    if q[-1] != IDLE:
        return None
    return q[:-1]
