"""Itoh-Abe coordinate increment discrete gradient."""

from __future__ import annotations

import numpy as np

from .base import QUOTIENT_RADIUS, DiscreteGradientScheme, PointFunction, segment_gradient_offset


class ItohAbe(DiscreteGradientScheme):
    """Difference quotients along coordinates, ascending component index.

    Component k uses the point whose first k coordinates come from z1 and the
    rest from z0. The result depends on this order and is not symmetric.
    Coordinate increments shorter than QUOTIENT_RADIUS use the mean partial
    derivative over the segment, which equals the quotient without its
    cancellation.
    """

    @property
    def kind(self) -> str:
        return "ItohAbe"

    @property
    def name(self) -> str:
        return "itoh_abe"

    @property
    def is_symmetric(self) -> bool:
        return False

    def _gradient(self, H: PointFunction, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
        out = np.empty_like(z0)
        current = z0.copy()
        h_current = H.eval(current)
        for k in range(H.dimension):
            nxt = current.copy()
            nxt[k] = z1[k]
            h_next = H.eval(nxt)
            d = z1[k] - z0[k]
            short = np.abs(d) < QUOTIENT_RADIUS
            # short increments: mean of the partial derivative along the coordinate segment
            step = np.zeros_like(z0)
            step[k] = d
            partial = segment_gradient_offset(H, current, step, np.zeros_like(z0))[k]
            quotient = (h_next - h_current) / np.where(short, 1.0, d)
            out[k] = np.where(short, partial, quotient)
            current, h_current = nxt, h_next
        return out
