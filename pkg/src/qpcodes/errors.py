"""Exception hierarchy, one class per CLI error family.

Exit codes used by the command line tool: notation/parse errors exit with 2,
precondition violations with 3, enumeration budget overruns with 4 and
internal consistency failures with 5.
"""


class QPCodesError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class NotationError(QPCodesError):
    """Malformed polynomial notation, ring spec or manifest input."""

    exit_code = 2


class PreconditionError(QPCodesError):
    """An operation's precondition does not hold for the given input."""

    exit_code = 3


class NotSquareFreeError(PreconditionError):
    """A modulus whose residue-field reduction has a repeated factor."""


class BudgetExceededError(QPCodesError):
    """An enumeration would exceed the configured codeword budget."""

    exit_code = 4


class InternalConsistencyError(QPCodesError):
    """A structural invariant that should hold by construction was violated."""

    exit_code = 5
