"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A configured memory or size budget would be exceeded."""


class SearchExhaustedError(RuntimeError):
    """A bounded search ran out of levels without finding a witness."""
