"""Exception hierarchy.

Input problems and resource problems are kept apart so the command line can
map them to different exit codes.
"""


class FcsgError(Exception):
    """Base class for every error raised by this package."""


class InputError(FcsgError):
    """Malformed or out-of-domain input."""


class ContextMismatchError(InputError):
    """Elements from different semigroup backends were combined."""


class DuplicateElementError(InputError):
    """A set contains the same canonical element twice."""

    def __init__(self, label):
        super().__init__(f"duplicate element in set: {label}")
        self.label = label


class ResourceLimitError(FcsgError):
    """An instance exceeds a configured size cap."""


class SearchBudgetExceeded(ResourceLimitError):
    """The minor search ran out of node expansions before deciding."""

    def __init__(self, budget, pair=None):
        message = f"minor search exceeded its budget of {budget} expansions"
        if pair is not None:
            message += f" on index pair {pair}"
        super().__init__(message)
        self.budget = budget
        self.pair = pair

    def for_pair(self, pair):
        """Return a copy of this error tagged with an index pair."""
        return SearchBudgetExceeded(self.budget, pair)
