"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HinMotifError(Exception):
    """Base class for all package errors."""


class GraphError(HinMotifError):
    pass


class MissingNode(GraphError, KeyError):
    def __init__(self, node):
        super().__init__(node)
        self.node = node

    def __str__(self) -> str:
        return f"unknown node {self.node!r}"


class TypeConflict(GraphError):
    def __init__(self, node, existing: str, requested: str):
        super().__init__(node, existing, requested)
        self.node = node
        self.existing = existing
        self.requested = requested

    def __str__(self) -> str:
        return (
            f"node {self.node!r} already has type {self.existing!r}, "
            f"cannot re-add as {self.requested!r}"
        )


class GraphFrozen(GraphError):
    pass


class ParseError(HinMotifError):
    def __init__(self, line: int, message: str):
        super().__init__(line, message)
        self.line = line
        self.message = message

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


class QueryParseError(HinMotifError):
    def __init__(self, field: str, message: str):
        super().__init__(field, message)
        self.field = field
        self.message = message

    def __str__(self) -> str:
        return f"{self.field}: {self.message}" if self.field else self.message


class QueryValidationError(HinMotifError):
    def __init__(self, violations: list[str]):
        super().__init__(violations)
        self.violations = list(violations)

    def __str__(self) -> str:
        return "; ".join(self.violations)


class InvalidReference(HinMotifError):
    pass


class TypeMismatch(HinMotifError):
    pass


class PatternMismatch(HinMotifError):
    pass


class DegenerateBase(HinMotifError):
    pass


class EmptyInput(HinMotifError):
    pass


class CountOverflow(HinMotifError):
    pass


class OracleBoundExceeded(HinMotifError):
    pass
