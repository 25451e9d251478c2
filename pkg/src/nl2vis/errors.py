"""Exception hierarchy shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all nl2vis errors."""


class IoError(ToolkitError):
    """A data source could not be read."""


class FormatError(ToolkitError):
    """A data source was readable but structurally malformed."""


class TypeCoercionError(ToolkitError):
    """An attribute's values are incompatible with a requested type."""

    def __init__(self, attribute: str, new_type: str, offending_value: str):
        self.attribute = attribute
        self.new_type = new_type
        self.offending_value = offending_value
        super().__init__(
            f"cannot retype {attribute!r} as {new_type}: "
            f"value {offending_value!r} does not parse"
        )


class AliasConflictError(ToolkitError):
    """An alias collides with a different attribute's exact name."""


class ResourceError(ToolkitError):
    """A bundled or configured resource (e.g. the WordNet files) is missing or corrupt."""


class EmptyQueryError(ToolkitError):
    """analyze_query was called with an empty or whitespace-only query."""


class NoVisualizationError(ToolkitError):
    """render_vis found no visualization to render for the query."""


class ContractError(ToolkitError):
    """An internal pipeline contract was violated (indicates a bug upstream)."""
