"""Exception types shared across the package."""


class ModelError(ValueError):
    """A value violates a model-layer contract (unknown state, disabled
    interaction, malformed predicate, invalid machine, ...)."""


class ParseError(ValueError):
    """A document failed syntax or schema checks; the message carries the
    offending line or path."""
