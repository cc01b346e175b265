"""Piecewise-constant interference seen by a receiver during one packet."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class InterferenceTimeline:
    """``levels[k]`` holds on ``[breakpoints[k], breakpoints[k+1])``.

    ``breakpoints`` starts at 0 and ends at ``B``.
    """

    breakpoints: np.ndarray
    levels: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=float)
        lv = np.asarray(self.levels, dtype=float)
        if b.ndim != 1 or lv.shape != (b.size - 1,):
            raise ValueError("need one level per segment between breakpoints")
        if np.any(np.diff(b) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if np.any(lv < 0):
            raise ValueError("interference levels must be nonnegative")

    @classmethod
    def from_packets(cls, starts, ends, powers, B: float) -> "InterferenceTimeline":
        """Superpose packets active on ``[start, end)`` (clipped to ``[0, B]``)."""
        starts = np.clip(np.asarray(starts, dtype=float), 0.0, B)
        ends = np.clip(np.asarray(ends, dtype=float), 0.0, B)
        powers = np.asarray(powers, dtype=float)
        keep = ends > starts
        starts, ends, powers = starts[keep], ends[keep], powers[keep]
        cuts = np.unique(np.concatenate([[0.0, B], starts, ends]))
        mids = 0.5 * (cuts[:-1] + cuts[1:])
        active = (starts[None, :] <= mids[:, None]) & (mids[:, None] < ends[None, :])
        return cls(cuts, active.astype(float) @ powers)

    @property
    def duration(self) -> float:
        return float(self.breakpoints[-1] - self.breakpoints[0])

    def time_average(self) -> float:
        return float(np.dot(np.diff(self.breakpoints), self.levels) / self.duration)

    def maximum(self) -> float:
        return float(self.levels.max()) if self.levels.size else 0.0


def batch_max_level(initial: np.ndarray, ev_rep: np.ndarray, ev_time: np.ndarray,
                    ev_delta: np.ndarray) -> np.ndarray:
    """Maximum of many timelines described by their starting level and jumps.

    Each replication is accumulated in its own row so that values of one
    replication never mix with another's in floating point.
    """
    n = initial.size
    if ev_rep.size == 0:
        return initial.copy()
    order = np.lexsort((ev_time, ev_rep))
    rep = ev_rep[order]
    delta = ev_delta[order]
    counts = np.bincount(rep, minlength=n)
    first = np.concatenate([[0], np.cumsum(counts)[:-1]])
    col = np.arange(rep.size) - first[rep]
    jumps = np.zeros((n, int(counts.max())))
    jumps[rep, col] = delta
    running = initial[:, None] + np.cumsum(jumps, axis=1)
    return np.maximum(initial, running.max(axis=1))
