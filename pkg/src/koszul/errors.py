"""Shared exception types.

Invalid arguments raise plain ValueError throughout the package; a
PreconditionError means the inputs were well-formed but fail a stated
mathematical precondition, so the requested check is not meaningful.
"""


class PreconditionError(RuntimeError):
    pass
