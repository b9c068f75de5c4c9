"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class CPGraphError(Exception):
    exit_code = 3


class IdentifierError(CPGraphError, KeyError):
    """Unknown vertex or edge identifier."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class PreconditionError(CPGraphError, ValueError):
    pass


class SemanticError(CPGraphError, ValueError):
    pass


class CapacityError(CPGraphError, RuntimeError):
    exit_code = 4


class ParseError(CPGraphError, ValueError):
    exit_code = 2

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class SchemaError(CPGraphError, ValueError):
    exit_code = 2

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)
