"""Exception hierarchy.

Input problems (malformed tables, bad files, carrier mismatches) derive from
``InputError``; the CLI maps them to exit status 2.  A falsified mathematical
property raises ``PropertyViolation`` (exit 1) and numerical breakdowns raise
``NumericalError`` (exit 3).
"""


class InputError(ValueError):
    pass


class StructuralError(InputError):
    """Wrong shapes or out-of-range indices, detected before any axiom check."""


class AxiomError(InputError):
    """Well-formed tables that violate an axiom; carries the ValidationReport."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(InputError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


class SizeCapError(InputError):
    pass


class CarrierError(InputError):
    pass


class NotPositiveDefiniteError(InputError):
    pass


class ProjectionError(InputError):
    pass


class PropertyViolation(AssertionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NumericalError(RuntimeError):
    pass


class DecompositionError(NumericalError):
    pass
