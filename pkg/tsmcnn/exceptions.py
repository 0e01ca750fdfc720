"""
Exceptions raised by the package. They all derive from builtin exceptions so that catching
:code:`ValueError` or :code:`RuntimeError` keeps working.
"""

from __future__ import annotations


class DimensionError(ValueError):
    """
    Raised when the shape of an array does not match what an operation expects.

    Parameters
    ----------
        axis : str
            Name of the offending axis (e.g., :code:`"channels"`, :code:`"length"`).
        expected :
            The expected size (or a description of it).
        actual :
            The size that was received.
        context : str, default: :code:`""`
            Name of the operation that detected the mismatch.
    """

    def __init__(self, axis: str, expected, actual, context: str = ""):
        self.axis = axis
        self.expected = expected
        self.actual = actual
        self.context = context
        prefix = f"{context}: " if context else ""
        super().__init__(
            f"{prefix}dimension mismatch on the '{axis}' axis, expected {expected} but got "
            f"{actual}."
        )


class GeometryError(ValueError):
    """
    Raised when a network configuration cannot be assembled, for instance because a branch is
    shorter than the convolution filter or the pooling factor exceeds a convolution output.

    Parameters
    ----------
        branch : str
            Name of the branch (or stage) where the geometry breaks.
        message : str
            Description of the problem.
    """

    def __init__(self, branch: str, message: str):
        self.branch = branch
        super().__init__(f"Infeasible geometry in branch '{branch}': {message}")


class DataFormatError(ValueError):
    """
    Raised when a data file does not follow the UCR format.

    Parameters
    ----------
        path : str
            Path of the file.
        line_number : int | None
            1-based line number of the offending line, :code:`None` for file-level problems.
        message : str
            Description of the problem.
    """

    def __init__(self, path: str, line_number: int | None, message: str):
        self.path = path
        self.line_number = line_number
        where = f"{path}, line {line_number}" if line_number is not None else f"{path}"
        super().__init__(f"{where}: {message}")


class TrainingError(RuntimeError):
    """
    Raised when training cannot proceed (non-finite loss, leakage between the training and
    validation sides).

    Parameters
    ----------
        epoch : int | None
            The 1-based epoch at which the problem happened.
        message : str
            Description of the problem.
    """

    def __init__(self, epoch: int | None, message: str):
        self.epoch = epoch
        where = f"Epoch {epoch}: " if epoch is not None else ""
        super().__init__(f"{where}{message}")
