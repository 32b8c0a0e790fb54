"""
Error kinds raised by toolkit operations.

Every error derives from ValueError so callers catching ValueError keep working.
"""

from typing import Optional


class XspecError(ValueError):
    """Base class for all toolkit errors"""

    kind = "XspecError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ShapeError(XspecError):
    """Operand extents or dimensions are incompatible"""

    kind = "ShapeError"


class ArgumentError(XspecError):
    """An argument is outside its accepted domain"""

    kind = "ArgumentError"


class ParseError(XspecError):
    """An input file does not conform to its format"""

    kind = "ParseError"

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateInputError(XspecError):
    """Input carries no usable spread or too few samples"""

    kind = "DegenerateInputError"


class NumericDomainError(XspecError):
    """A numeric result left its mathematical domain beyond tolerance"""

    kind = "NumericDomainError"


class AlignmentError(XspecError):
    """Two score sets do not describe the same trials"""

    kind = "AlignmentError"


class UnsupportedLayerError(XspecError):
    """A layer kind is not supported by the requested analysis"""

    kind = "UnsupportedLayerError"
