"""Shared exception types."""


class CapacityError(RuntimeError):
    """A group materialization exceeded the supported order bound."""


class ClassificationError(ValueError):
    """A block profile is inconsistent with its dominant-subgroup data."""
