"""Exception hierarchy shared by the whole package."""


class PauliGamesError(Exception):
    """Base class for all package errors."""


class InputError(PauliGamesError):
    """Caller-supplied data is malformed or out of contract (CLI exit code 2)."""


class ConsistencyError(PauliGamesError):
    """An internal cross-check between two independent routes failed (CLI exit code 3)."""
