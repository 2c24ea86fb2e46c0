"""Core model layer: components, ports, interactions, and local behaviors.

An interaction model declares components, one port family per component, and
the interaction set (the glue-code) wiring ports of different components
together.  An interaction system pairs a model with one finite labeled
transition system per component.

Values are plain frozen containers and never self-validate; `validate_model`
and `validate_system` report every rule violation as a finding instead of
raising, so broken inputs can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import ModelError
from .validation import ValidationReport


class PortId(NamedTuple):
    """A port, globally identified by qualification with its component."""

    component: str
    port: str

    def __str__(self) -> str:
        return f"{self.component}.{self.port}"


@dataclass(frozen=True)
class Interaction:
    """A named, nonempty set of ports with at most one port per component.

    Ports are kept in canonical order (ascending component position in the
    owning model); `canonicalize` restores that order if needed.
    """

    name: str
    ports: tuple[PortId, ...]

    def port_set(self) -> frozenset[PortId]:
        return frozenset(self.ports)

    def components(self) -> tuple[str, ...]:
        return tuple(p.component for p in self.ports)

    def port_of(self, component: str) -> str | None:
        for p in self.ports:
            if p.component == component:
                return p.port
        return None


@dataclass(frozen=True)
class InteractionModel:
    """Components, per-component port families, and the interaction set."""

    components: tuple[str, ...]
    ports: Mapping[str, tuple[str, ...]]
    interactions: tuple[Interaction, ...]


@dataclass(frozen=True)
class LocalBehavior:
    """Finite LTS of one component: (states, ports, transitions, initial).

    `transitions` holds (source, port, target) triples; the relation may be
    nondeterministic.  State order is significant: it defines the index used
    by the deterministic tie-break in `semantics.step`.
    """

    states: tuple[str, ...]
    ports: tuple[str, ...]
    transitions: frozenset[tuple[str, str, str]]
    initial: str


@dataclass(frozen=True)
class InteractionSystem:
    """An interaction model plus one local behavior per component."""

    model: InteractionModel
    behaviors: Mapping[str, LocalBehavior]

    def initial_state(self) -> tuple[str, ...]:
        """The global initial state, one local initial per component."""
        return tuple(self.behaviors[c].initial for c in self.model.components)


def interaction(name: str, ports: Iterable[tuple[str, str]]) -> Interaction:
    """Convenience constructor accepting (component, port) pairs."""
    return Interaction(name, tuple(PortId(c, p) for c, p in ports))


def validate_model(im: InteractionModel) -> ValidationReport:
    """Check every interaction-model rule; findings are data, not failures."""
    report = ValidationReport()

    seen_components: set[str] = set()
    for c in im.components:
        if c in seen_components:
            report.add("duplicate-component", f"component {c} declared twice")
        seen_components.add(c)

    for c in im.ports:
        if c not in seen_components:
            report.add(
                "unknown-component-ref", f"port family for unknown component {c}"
            )
    for c in im.components:
        names = im.ports.get(c, ())
        dupes = {p for p in names if names.count(p) > 1}
        for p in sorted(dupes):
            report.add("duplicate-port", f"component {c} declares port {p} twice")

    declared = {
        PortId(c, p) for c in im.components for p in set(im.ports.get(c, ()))
    }
    used: set[PortId] = set()
    seen_names: dict[str, int] = {}
    seen_port_sets: dict[frozenset[PortId], str] = {}
    for a in im.interactions:
        if a.name in seen_names:
            report.add(
                "duplicate-interaction-name",
                f"interaction name {a.name} used more than once",
            )
        seen_names[a.name] = seen_names.get(a.name, 0) + 1

        if not a.ports:
            report.add("empty-interaction", f"interaction {a.name} has no ports")
            continue

        by_component: dict[str, list[str]] = {}
        for p in a.ports:
            by_component.setdefault(p.component, []).append(p.port)
            if p.component not in seen_components:
                report.add(
                    "unknown-component-ref",
                    f"interaction {a.name} references unknown component {p.component}",
                )
            elif p.port not in im.ports.get(p.component, ()):
                report.add(
                    "unknown-port-ref",
                    f"interaction {a.name} references unknown port {p}",
                )
            else:
                used.add(p)
        for c, names in by_component.items():
            if len(names) > 1:
                report.add(
                    "multi-port-component",
                    f"interaction {a.name} has two ports of one component ({c})",
                )

        key = a.port_set()
        if key in seen_port_sets:
            report.add(
                "duplicate-interaction",
                f"interactions {seen_port_sets[key]} and {a.name} have identical port sets",
            )
        else:
            seen_port_sets[key] = a.name

    for p in sorted(declared - used):
        report.add("uncovered-port", f"uncovered port {p}")

    return report


def validate_system(sys: InteractionSystem) -> ValidationReport:
    """Model findings plus behavior-level findings for each component."""
    report = validate_model(sys.model)
    im = sys.model

    for c in sorted(set(sys.behaviors) - set(im.components)):
        report.add(
            "behavior-component-mismatch",
            f"behavior given for component {c} absent from the model",
        )

    for c in im.components:
        b = sys.behaviors.get(c)
        if b is None:
            report.add(
                "behavior-component-mismatch", f"component {c} has no behavior"
            )
            continue

        state_dupes = {s for s in b.states if b.states.count(s) > 1}
        for s in sorted(state_dupes):
            report.add("duplicate-state", f"component {c} declares state {s} twice")

        if set(b.ports) != set(im.ports.get(c, ())):
            report.add(
                "port-set-mismatch",
                f"component {c}: behavior ports differ from the model's port set",
            )

        states = set(b.states)
        if b.initial not in states:
            report.add(
                "missing-initial",
                f"component {c}: missing initial state {b.initial}",
            )
        ports = set(b.ports)
        for src, port, dst in sorted(b.transitions):
            if src not in states or dst not in states:
                report.add(
                    "unknown-transition-state",
                    f"component {c}: transition {src} --{port}--> {dst} uses an unknown state",
                )
            if port not in ports:
                report.add(
                    "unknown-port",
                    f"component {c}: transition {src} --{port}--> {dst} uses unknown port {port}",
                )

    return report


def enabled_ports(behavior: LocalBehavior, state: str) -> frozenset[str]:
    """Ports labeling at least one outgoing transition of `state`."""
    if state not in behavior.states:
        raise ModelError(f"no such state: {state!r}")
    return frozenset(port for src, port, _ in behavior.transitions if src == state)


def canonicalize(im: InteractionModel) -> InteractionModel:
    """Sort components, port families, and interaction port lists; drop
    duplicate interactions (same port set).  Semantics are unchanged."""
    components = tuple(sorted(im.components))
    order = {c: k for k, c in enumerate(components)}
    ports = {c: tuple(sorted(set(im.ports.get(c, ())))) for c in components}

    canonical: list[Interaction] = []
    seen: set[frozenset[PortId]] = set()
    for a in im.interactions:
        key = a.port_set()
        if key in seen:
            continue
        seen.add(key)
        sorted_ports = tuple(
            sorted(set(a.ports), key=lambda p: (order.get(p.component, len(order)), p.port))
        )
        canonical.append(Interaction(a.name, sorted_ports))
    canonical.sort(key=lambda a: a.name)

    return InteractionModel(components, ports, tuple(canonical))


def canonicalize_system(sys: InteractionSystem) -> InteractionSystem:
    """Canonical model plus behaviors with sorted state and port lists."""
    model = canonicalize(sys.model)
    behaviors = {}
    for c in model.components:
        b = sys.behaviors[c]
        behaviors[c] = LocalBehavior(
            states=tuple(sorted(set(b.states))),
            ports=tuple(sorted(set(b.ports))),
            transitions=frozenset(b.transitions),
            initial=b.initial,
        )
    return InteractionSystem(model, behaviors)
