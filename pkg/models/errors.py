"""
Errors raised by the FI-module engine.

Every failure raised by the library derives from FIModuleError so the CLI can
catch one type and turn it into an exit status.
"""


class FIModuleError(Exception):
    """Base class for all engine errors."""


class ShapeError(FIModuleError):
    pass


class FieldMismatchError(FIModuleError):
    pass


class InjectionError(FIModuleError, ValueError):
    pass


class DegreeBoundError(FIModuleError):
    """A degree lies above the truncation or outside a verification window."""


class NotSubmoduleError(FIModuleError):
    pass


class ModuleValidationError(FIModuleError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(FIModuleError):
    pass
