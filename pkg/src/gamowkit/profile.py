"""Compact-support piecewise-constant potentials.

Everything works in reduced units: hbar = 1 and the potential is stored as
``u(x) = 2 m V(x)`` so the stationary equation reads

    psi'' + (p**2 - u(x)) psi = 0.

``two_m`` only matters when momenta are converted to energies for display,
``z = p**2 / two_m``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import GapOrOverlap, NonfiniteValue, NonpositiveSupport, ProfileError

# contiguity tolerance for segment edges read from text files
_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class PotentialProfile:
    segments: tuple[tuple[float, float, float], ...]
    two_m: float = 1.0

    @property
    def support_end(self) -> float:
        return self.segments[-1][1]

    L = support_end

    @property
    def edges(self) -> np.ndarray:
        return np.array([s[0] for s in self.segments] + [self.support_end])

    @property
    def widths(self) -> np.ndarray:
        return np.array([s[1] - s[0] for s in self.segments])

    @property
    def heights(self) -> np.ndarray:
        return np.array([s[2] for s in self.segments])

    def u(self, x):
        """Reduced potential at ``x``; exactly 0 outside ``[0, L]``."""
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.edges, x, side="right") - 1
        inside = (x >= 0.0) & (x <= self.support_end)
        idx = np.clip(idx, 0, len(self.segments) - 1)
        out = np.where(inside, self.heights[idx], 0.0)
        return out if out.ndim else float(out)

    def energy(self, p: complex) -> complex:
        return p * p / self.two_m

    def to_dict(self) -> dict:
        return {
            "segments": [{"x_lo": a, "x_hi": b, "u": u} for a, b, u in self.segments],
            "two_m": self.two_m,
        }


def build_profile(segments: Iterable[Sequence[float]], two_m: float = 1.0) -> PotentialProfile:
    """Validate ``(x_lo, x_hi, u)`` triples and return a profile.

    Raises
    ------
    GapOrOverlap
        Consecutive segments do not share an edge, or the first does not
        start at 0.
    NonpositiveSupport
        A segment (or the whole support) has non-positive length.
    NonfiniteValue
        Any number is NaN or infinite.
    """
    segs = [tuple(float(v) for v in s) for s in segments]
    if not segs:
        raise NonpositiveSupport("profile needs at least one segment")
    for s in segs:
        if len(s) != 3:
            raise ProfileError(f"segment {s!r} is not an (x_lo, x_hi, u) triple")
        if not all(math.isfinite(v) for v in s):
            raise NonfiniteValue(f"segment {s!r} has a non-finite entry")
    if not math.isfinite(two_m) or two_m <= 0:
        raise NonfiniteValue(f"two_m must be finite and positive, got {two_m}")
    if abs(segs[0][0]) > _EDGE_TOL:
        raise GapOrOverlap(f"support must start at x=0, first segment starts at {segs[0][0]}")
    segs[0] = (0.0, segs[0][1], segs[0][2])
    for i, (lo, hi, _) in enumerate(segs):
        if hi <= lo:
            raise NonpositiveSupport(f"segment {i} has x_hi={hi} <= x_lo={lo}")
        if i and abs(lo - segs[i - 1][1]) > _EDGE_TOL * max(1.0, abs(lo)):
            raise GapOrOverlap(f"segment {i} starts at {lo}, previous ends at {segs[i - 1][1]}")
    return PotentialProfile(tuple(segs), float(two_m))


def square_barrier(u0: float, L: float, two_m: float = 1.0) -> PotentialProfile:
    if not (math.isfinite(L) and L > 0):
        raise NonpositiveSupport(f"L must be positive, got {L}")
    return build_profile([(0.0, L, u0)], two_m=two_m)


_FILE_KEYS = {"segments", "two_m"}
_SEGMENT_KEYS = {"x_lo", "x_hi", "u"}


def profile_from_dict(data: dict) -> PotentialProfile:
    if not isinstance(data, dict):
        raise ProfileError("profile file must hold a JSON object")
    unknown = set(data) - _FILE_KEYS
    if unknown:
        raise ProfileError(f"unknown keys in profile: {sorted(unknown)}")
    if "segments" not in data:
        raise ProfileError("profile has no 'segments'")
    triples = []
    for seg in data["segments"]:
        if not isinstance(seg, dict) or set(seg) != _SEGMENT_KEYS:
            raise ProfileError(f"segment must have exactly keys {sorted(_SEGMENT_KEYS)}: {seg!r}")
        triples.append((seg["x_lo"], seg["x_hi"], seg["u"]))
    return build_profile(triples, two_m=data.get("two_m", 1.0))


def load_profile(path: str | Path) -> PotentialProfile:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProfileError(f"{path}: not valid JSON ({exc})") from exc
    return profile_from_dict(data)


def save_profile(profile: PotentialProfile, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(profile.to_dict(), fh, indent=2)
        fh.write("\n")
