from fractions import Fraction
from typing import Any, Union

import numpy as np

from .errors import InvalidRepresentationError


def as_array(matrix: Any) -> np.ndarray:
    """Return the dense complex ndarray behind ``matrix``.

    Accepts an ndarray, nested lists, or anything exposing an ``entries``
    attribute (:class:`suphase.algebra.repmatrix.ComplexMatrix`).
    """
    entries = getattr(matrix, "entries", matrix)
    return np.asarray(entries, dtype=complex)


def square_array(matrix: Any) -> np.ndarray:
    arr = as_array(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidRepresentationError(f"square matrix required, got shape {arr.shape}")
    return arr


def max_abs(matrix: Any) -> float:
    """Infinity norm used throughout for residuals: largest entry modulus."""
    arr = as_array(matrix)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def commutator(a: Any, b: Any) -> np.ndarray:
    a_ = as_array(a)
    b_ = as_array(b)
    return a_ @ b_ - b_ @ a_


def dagger(matrix: Any) -> np.ndarray:
    return as_array(matrix).conj().T


def unitarity_residual(matrix: Any) -> float:
    """Return ``max|E†E - 1|``."""
    arr = square_array(matrix)
    return max_abs(dagger(arr) @ arr - np.eye(arr.shape[0]))


def same_dimension(a: Any, b: Any) -> None:
    a_ = square_array(a)
    b_ = square_array(b)
    if a_.shape != b_.shape:
        raise InvalidRepresentationError(f"dimension mismatch: {a_.shape[0]} != {b_.shape[0]}")


def as_spin(j: Union[int, float, Fraction, str]) -> Fraction:
    """Validate an su(2) spin label and return it as an exact Fraction.

    Parameters
    ----------
    j : int, float, :obj:`Fraction` or :obj:`str`
        Spin, e.g. ``1``, ``0.5``, ``Fraction(3, 2)`` or ``"3/2"``.

    Returns
    -------
    :obj:`Fraction`
        ``j`` with ``2j`` a non-negative integer.
    """
    try:
        spin = Fraction(j)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidRepresentationError(f"invalid spin label: {j!r}")

    if spin < 0 or (2 * spin).denominator != 1:
        raise InvalidRepresentationError(f"2j must be a non-negative integer, got j={j!r}")

    return spin


def spin_dimension(j: Union[int, float, Fraction, str]) -> int:
    return int(2 * as_spin(j)) + 1
