"""Field samplers: vectorized profiles with a declared decay envelope.

The envelope is what quadrature code uses to truncate infinite integrals, so
it must genuinely bound the sampled values: |f(u)| <= amplitude * exp(-rate *
|u|) everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = ["DecayEnvelope", "FieldSampler"]


@dataclass(frozen=True)
class DecayEnvelope:
    """Exponential bound |f(u)| <= amplitude * exp(-rate * |u|)."""

    amplitude: float
    rate: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("envelope amplitude must be non-negative")
        if self.rate < 0:
            raise ValueError("envelope rate must be non-negative")

    def tail_radius(self, tail_bound: float) -> float:
        """Smallest T with integral of the envelope over |u| > T below
        ``tail_bound``.  Requires a strictly decaying envelope."""
        if self.rate <= 0:
            raise DomainError("envelope does not decay; integral cannot be truncated")
        if tail_bound <= 0:
            raise ValueError("tail_bound must be positive")
        mass = 2.0 * self.amplitude / self.rate
        if mass <= tail_bound:
            return 1.0
        return math.log(mass / tail_bound) / self.rate


@dataclass(frozen=True)
class FieldSampler:
    """A complex- or real-valued profile of one real variable.

    ``func`` must accept a 1-D numpy array and return an array of the same
    shape.  ``parity`` is "even", "odd" or None.
    """

    func: Callable[[np.ndarray], np.ndarray]
    envelope: DecayEnvelope
    parity: str | None = None

    def __post_init__(self):
        if self.parity not in (None, "even", "odd"):
            raise ValueError("parity must be 'even', 'odd' or None")

    def __call__(self, u):
        return self.func(np.asarray(u, dtype=float))
