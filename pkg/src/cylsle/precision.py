"""Series evaluation policy, modulus validation and error types.

Every theta-type series in the package is evaluated under a
:class:`SeriesPrecision` policy: terms are summed until the last one is
negligible relative to the running sum (for two consecutive terms, so an
accidental zero term cannot end the sum early), with a hard cap on the term
count.  Moduli below ``switch_threshold`` are evaluated through the modular
transform, which keeps convergence geometric for every positive modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PrecisionError(RuntimeError):
    """A series failed to reach the requested tolerance within max_terms."""


class PartialResultError(RuntimeError):
    """A Monte Carlo run exhausted its step budget before completing.

    The partial estimate accumulated so far is attached as ``estimate``.
    """

    def __init__(self, message: str, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class SeriesPrecision:
    """Truncation and representation-switch policy for series evaluation.

    Attributes
    ----------
    rel_tol : float
        Relative truncation tolerance.
    max_terms : int
        Hard cap on the number of summed terms.
    switch_threshold : float
        Moduli below this value are evaluated via the modular transform.
        The default, pi, is the self-dual point at which both
        representations converge at the same rate.
    """

    rel_tol: float = 1e-14
    max_terms: int = 10000
    switch_threshold: float = math.pi

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.max_terms < 8:
            raise DomainError(f"max_terms must be >= 8, got {self.max_terms}")
        if not self.switch_threshold > 0.0:
            raise DomainError("switch_threshold must be positive")


DEFAULT_PRECISION = SeriesPrecision()


def check_modulus(p: float, allow_infinite: bool = True) -> float:
    """Validate a cylinder modulus and return it as a float.

    ``math.inf`` is the distinguished sentinel for the asymptotic formulas;
    pass ``allow_infinite=False`` for operations that have no finite limit.
    """
    p = float(p)
    if math.isnan(p) or p <= 0.0:
        raise DomainError(f"modulus must be positive, got {p}")
    if math.isinf(p) and not allow_infinite:
        raise DomainError("infinite modulus is not supported by this operation")
    return p


def reduce_angle(x: float) -> tuple[float, int]:
    """Split a lifted coordinate into (x0, k) with x = x0 + 2*pi*k, x0 in [0, 2*pi)."""
    k = math.floor(x / TWO_PI)
    x0 = x - TWO_PI * k
    if x0 >= TWO_PI:  # rounding at the upper edge
        x0 -= TWO_PI
        k += 1
    return x0, k
