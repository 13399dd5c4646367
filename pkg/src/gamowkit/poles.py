"""Location and labeling of the zeros of the outgoing-condition function.

Resonances are found by scanning a rectangle in the fourth quadrant of the
complex momentum plane.  The number of zeros inside every cell is the
winding number of ``f = jost_outgoing`` along the cell boundary, so the
enumeration is certified: a cell is split until it holds at most one zero,
and that zero is Newton-refined.

Labels: resonances ``n = 1, 2, ...`` by increasing ``Re p``; their mirrors
``p_{-n} = -conj(p_n)`` carry ``-n``.  Bound states ``i = 1, 2, ...`` sit
at ``p = i q`` and are labeled by increasing ``q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .config import tolerances
from .errors import BoundaryZero, MirrorResidualFail, NotAPole, SearchExhausted
from .profile import PotentialProfile
from .scatter import jost_condition, jost_outgoing

RESONANCE = "resonance"
ANTI_RESONANCE = "anti_resonance"
BOUND = "bound"

# scaled residual accepted for a refined zero
RESIDUAL_TOL = 1e-12
# scaled residual accepted when re-verifying a mirror or a cached pole
VERIFY_TOL = 1e-10

_MAX_PHASE_STEP = 0.3
_SHRINK = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2)
_SPLITS = (0.5, 0.4871, 0.5137, 0.4623, 0.5419, 0.4311)


@dataclass(frozen=True)
class Pole:
    label: int
    kind: str
    momentum: complex
    energy: complex
    residual: float
    scale: float = 1.0
    atypical: bool = False

    @property
    def sheet(self) -> str:
        return "first" if self.kind == BOUND else "second"

    @property
    def scaled_residual(self) -> float:
        return self.residual / self.scale

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "re_p": self.momentum.real,
            "im_p": self.momentum.imag,
            "re_z": self.energy.real,
            "im_z": self.energy.imag,
            "residual": self.residual,
            "scale": self.scale,
            "sheet": self.sheet,
            "atypical": self.atypical,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Pole":
        p = complex(d["re_p"], d["im_p"])
        return cls(int(d["label"]), d["kind"], p, complex(d["re_z"], d["im_z"]),
                   float(d["residual"]), float(d.get("scale", 1.0)), bool(d.get("atypical", False)))


# ---------------------------------------------------------------------------
# argument principle


def _edge_phase_sum(f, z0: complex, z1: complex, n0: int = 64, max_points: int = 200_000) -> float:
    """Total change of arg f along the segment z0 -> z1, adaptively sampled."""
    t = np.linspace(0.0, 1.0, n0 + 1)
    vals = f(z0 + (z1 - z0) * t)
    length = abs(z1 - z0)
    while True:
        if not np.all(np.isfinite(vals)) or np.any(vals == 0):
            raise BoundaryZero("outgoing function vanishes or is singular on the contour")
        dphi = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(dphi) > _MAX_PHASE_STEP
        if not np.any(bad):
            return float(np.sum(dphi))
        if (t[1:] - t[:-1])[bad].min() * length < 1e-13 * max(1.0, length) or len(t) > max_points:
            raise BoundaryZero("phase of the outgoing function not resolved along the contour")
        tm = 0.5 * (t[:-1][bad] + t[1:][bad])
        vm = f(z0 + (z1 - z0) * tm)
        t = np.concatenate([t, tm])
        vals = np.concatenate([vals, vm])
        order = np.argsort(t, kind="stable")
        t, vals = t[order], vals[order]


def _winding(f, rect) -> int:
    re_lo, re_hi, im_lo, im_hi = rect
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo), complex(re_hi, im_hi), complex(re_lo, im_hi)]
    total = 0.0
    for i in range(4):
        total += _edge_phase_sum(f, corners[i], corners[(i + 1) % 4])
    w = total / (2.0 * math.pi)
    n = round(w)
    if abs(w - n) > 1e-3:
        raise BoundaryZero(f"winding number {w} is not an integer")
    return int(n)


def _shrink(rect, frac):
    re_lo, re_hi, im_lo, im_hi = rect
    d = frac * min(re_hi - re_lo, im_hi - im_lo)
    return (re_lo + d, re_hi - d, im_lo + d, im_hi - d)


def _count(profile, rect):
    """(count, rectangle actually used)."""
    f = lambda z: jost_outgoing(profile, z)
    try:
        return _winding(f, rect), rect
    except BoundaryZero:
        pass
    for frac in _SHRINK:
        r = _shrink(rect, frac)
        try:
            return _winding(f, r), r
        except BoundaryZero:
            continue
    raise BoundaryZero(f"zero on or near the boundary of {rect} after {len(_SHRINK)} retries")


def count_zeros(profile: PotentialProfile, rect) -> int:
    """Number of zeros of the outgoing function inside ``rect``.

    ``rect = (re_lo, re_hi, im_lo, im_hi)``.  If the boundary passes through
    (or too close to) a zero or through p = 0, the rectangle is shrunk by a
    small fraction and counted again, up to five times.
    """
    re_lo, re_hi, im_lo, im_hi = map(float, rect)
    if not (re_lo < re_hi and im_lo < im_hi):
        raise ValueError(f"degenerate rectangle {rect}")
    return _count(profile, (re_lo, re_hi, im_lo, im_hi))[0]


# ---------------------------------------------------------------------------
# Newton refinement


def _derivative(profile, p: complex) -> complex:
    h = 1e-7 * max(1.0, abs(p))
    return (jost_outgoing(profile, p + h) - jost_outgoing(profile, p - h)) / (2 * h)


def local_scale(profile, p: complex) -> float:
    """Magnitude of f near ``p``.

    The larger of ``|p f'(p)|`` and the size of the terms that cancel into
    ``f`` (which grows like ``exp(2 |Im p| L)`` below the real axis).
    """
    return max(1.0, abs(p) * abs(_derivative(profile, p)), float(jost_condition(profile, p)))


def newton_refine(profile, p0: complex, maxiter: int = 60) -> complex:
    p = complex(p0)
    for _ in range(maxiter):
        fp = jost_outgoing(profile, p)
        if fp == 0:
            return p
        step = fp / _derivative(profile, p)
        if not np.isfinite(step):
            return complex(np.nan, np.nan)
        p = p - step
        if abs(step) <= 4 * np.finfo(float).eps * max(1.0, abs(p)):
            break
    return p


def _make_pole(profile, label, kind, p, atypical=False) -> Pole:
    return Pole(label, kind, p, profile.energy(p), abs(jost_outgoing(profile, p)),
                local_scale(profile, p), atypical)


# ---------------------------------------------------------------------------
# resonance scan


def _inside(p, rect, margin=0.0):
    re_lo, re_hi, im_lo, im_hi = rect
    return (re_lo - margin <= p.real <= re_hi + margin) and (im_lo - margin <= p.imag <= im_hi + margin)


def _split(profile, rect, count):
    re_lo, re_hi, im_lo, im_hi = rect
    along_re = (re_hi - re_lo) >= (im_hi - im_lo)
    for frac in _SPLITS:
        if along_re:
            cut = re_lo + frac * (re_hi - re_lo)
            halves = [(re_lo, cut, im_lo, im_hi), (cut, re_hi, im_lo, im_hi)]
        else:
            cut = im_lo + frac * (im_hi - im_lo)
            halves = [(re_lo, re_hi, im_lo, cut), (re_lo, re_hi, cut, im_hi)]
        try:
            counts = [_winding(lambda z: jost_outgoing(profile, z), h) for h in halves]
        except BoundaryZero:
            continue
        if sum(counts) == count:
            return list(zip(halves, counts))
    raise BoundaryZero(f"could not split {rect} consistently")


def _isolate(profile, rect, count, min_size):
    roots = []
    stack = [(rect, count)]
    while stack:
        cell, n = stack.pop()
        if n == 0:
            continue
        size = max(cell[1] - cell[0], cell[3] - cell[2])
        if n == 1:
            center = complex(0.5 * (cell[0] + cell[1]), 0.5 * (cell[2] + cell[3]))
            p = newton_refine(profile, center)
            if np.isfinite(p) and _inside(p, cell, 1e-9 * size):
                if abs(jost_outgoing(profile, p)) <= tolerances().residual_tol * local_scale(profile, p):
                    roots.append(p)
                    continue
        if size < min_size:
            raise BoundaryZero(f"cannot isolate zeros in tiny cell {cell} (multiple root?)")
        stack.extend(_split(profile, cell, n))
    return roots


def scan_rectangle(profile: PotentialProfile, rect):
    """All zeros inside ``rect`` plus the certifying winding count.

    Returns ``(roots, count, rect_used)``; ``len(roots) == count`` always
    holds on return (otherwise an error is raised).
    """
    count, used = _count(profile, tuple(map(float, rect)))
    size = max(used[1] - used[0], used[3] - used[2])
    roots = _isolate(profile, used, count, 1e-10 * size)
    uniq = []
    for r in sorted(roots, key=lambda z: (z.real, abs(z.imag))):
        if not any(abs(r - u) < 1e-9 * max(1.0, abs(r)) for u in uniq):
            uniq.append(r)
    if len(uniq) != count:
        raise BoundaryZero(f"found {len(uniq)} distinct zeros but winding count is {count}")
    return uniq, count, used


def find_resonances(profile: PotentialProfile, n_max: int, p_im_max: float = 5.0,
                    re_bound: float | None = None, im_bound: float | None = None) -> list[Pole]:
    """First ``n_max`` resonances with Re p > 0, ordered by increasing Re p.

    The scan window ``[0, re_max] x [-p_im_max, 0]`` grows (wider and
    somewhat deeper) until it holds ``n_max`` zeros, and deeper again
    whenever the selected poles come within 20 % of its floor.

    The window depth is capped at ``im_bound`` (default ``9 / L``): the
    cos/sin propagation loses about ``eps * exp(2 |Im p| L)`` to
    cancellation, so deeper contours can no longer be counted reliably.

    Raises
    ------
    SearchExhausted
        ``re_max`` would exceed ``re_bound`` (default ``sqrt(max u) + 200 pi / L``).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    L = profile.support_end
    u_top = math.sqrt(max(0.0, float(np.max(profile.heights))))
    if re_bound is None:
        re_bound = u_top + 200.0 * math.pi / L
    if im_bound is None:
        im_bound = 9.0 / L
    re_max = u_top + (n_max + 1) * math.pi / L
    depth = min(float(p_im_max), im_bound)
    while True:
        if re_max > re_bound:
            raise SearchExhausted(f"fewer than {n_max} resonances with Re p <= {re_bound:.4g}")
        roots, count, _ = scan_rectangle(profile, (0.0, re_max, -depth, 0.0))
        if count < n_max:
            re_max *= 1.5
            depth = min(im_bound, 1.25 * depth)
            continue
        chosen = roots[:n_max]
        if max(-r.imag for r in chosen) > 0.8 * depth and depth < im_bound:
            depth *= 1.5
            continue
        return [
            _make_pole(profile, n, RESONANCE, p, atypical=abs(p.real) <= abs(p.imag))
            for n, p in enumerate(chosen, start=1)
        ]


def mirror_pole(pole: Pole, profile: PotentialProfile | None = None) -> Pole:
    """``p -> -conj(p)``, ``n -> -n``; re-verified when ``profile`` is given."""
    if pole.kind not in (RESONANCE, ANTI_RESONANCE):
        raise ValueError("mirror_pole needs a resonance-kind pole")
    p = -pole.momentum.conjugate()
    kind = ANTI_RESONANCE if pole.kind == RESONANCE else RESONANCE
    energy = pole.energy.conjugate()
    residual, scale = pole.residual, pole.scale
    if profile is not None:
        residual = abs(jost_outgoing(profile, p))
        scale = local_scale(profile, p)
        if residual > VERIFY_TOL * scale:
            raise MirrorResidualFail(f"|f(-p*)| = {residual:.3e} at p = {p}")
    return replace(pole, label=-pole.label, kind=kind, momentum=p, energy=energy,
                   residual=residual, scale=scale)


def verify_pole(profile: PotentialProfile, pole: Pole, tol: float = VERIFY_TOL) -> Pole:
    """Recompute the residual of ``pole`` on ``profile``; NotAPole if too large."""
    p = pole.momentum
    residual = abs(jost_outgoing(profile, p))
    scale = local_scale(profile, p)
    if residual > tol * scale:
        raise NotAPole(f"|f(p)| = {residual:.3e} (scale {scale:.3e}) at p = {p}")
    return replace(pole, residual=residual, scale=scale)


# ---------------------------------------------------------------------------
# bound states


def find_bound_states(profile: PotentialProfile, q_max: float, n_grid: int | None = None) -> list[Pole]:
    """Zeros of the outgoing function on ``(0, i q_max]``, by increasing q.

    On the positive imaginary axis ``f(iq)`` is real, so sign changes on a
    grid in q are bracketed and polished with Brent's method.
    """
    if q_max <= 0:
        raise ValueError("q_max must be positive")
    L = profile.support_end
    if n_grid is None:
        n_grid = int(max(2000, 400 * q_max * L))
    g = lambda q: float(jost_outgoing(profile, 1j * q).real)
    q = np.linspace(q_max / n_grid, q_max, n_grid)
    vals = np.real(jost_outgoing(profile, 1j * q))
    poles = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]:
        if vals[i] == 0:
            qr = q[i]
        elif vals[i + 1] == 0:
            continue
        else:
            qr = brentq(g, q[i], q[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        poles.append(qr)
    return [_make_pole(profile, i, BOUND, 1j * qr) for i, qr in enumerate(sorted(poles), start=1)]
