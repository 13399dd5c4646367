"""Explicit wavefunctions for all state families.

A :class:`PlanewaveState` is exact: outside ``[0, L]`` it is a finite sum
``sum_j c_j exp(i k_j x)`` (``left_tail`` for x <= 0, ``right_tail`` for
x >= L), and inside segment ``j`` it is fixed by ``(psi, psi')`` at the
segment's left edge, evaluated with the same cos/sin factors as the
transfer matrix.

Every state is built by propagating its right-tail data from ``x = L``
back to ``x = 0``; the left-tail amplitudes are read off there and the
mismatch left over is reported as ``bc_residual``.

Conventions: Gamow states have ``T = 1``; bound states are real with unit
norm; scattering states have unit incident amplitude.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import tolerances
from .errors import DegenerateEnergies, NotAPole
from .poles import ANTI_RESONANCE, BOUND, RESONANCE, Pole, VERIFY_TOL, local_scale
from .profile import PotentialProfile
from .quad import integrate_adaptive
from .scatter import jost_outgoing, scattering_amplitudes, segment_factors

GAMOW_OUT = "gamow_out"
GAMOW_IN = "gamow_in"
BOUND_STATE = "bound"
SCATTERING = "scattering"



@dataclass(frozen=True, eq=False)
class PlanewaveState:
    family: str
    momentum: complex
    left_tail: tuple[tuple[complex, complex], ...]
    right_tail: tuple[tuple[complex, complex], ...]
    interior: np.ndarray  # (n_segments, 2): psi, psi' at each segment's left edge
    profile: PotentialProfile
    label: str = ""
    bc_residual: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def k2(self) -> complex:
        """Squared momentum: the state solves psi'' + (k2 - u) psi = 0."""
        return self.momentum * self.momentum

    def scaled(self, c: complex) -> "PlanewaveState":
        c = complex(c)
        return PlanewaveState(
            self.family, self.momentum,
            tuple((c * a, k) for a, k in self.left_tail),
            tuple((c * a, k) for a, k in self.right_tail),
            c * self.interior, self.profile, self.label, self.bc_residual, dict(self.meta),
        )

    def conjugate(self) -> "PlanewaveState":
        """Pointwise complex conjugate (a solution at conj(k2))."""
        return PlanewaveState(
            self.family, -self.momentum.conjugate(),
            tuple((a.conjugate(), -k.conjugate()) for a, k in self.left_tail),
            tuple((a.conjugate(), -k.conjugate()) for a, k in self.right_tail),
            self.interior.conj(), self.profile, self.label, self.bc_residual, dict(self.meta),
        )

    def __call__(self, x, deriv: bool = False):
        return eval_state(self, x, deriv)


def _tail_sum(tail, x, deriv=False):
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    for c, k in tail:
        term = c * np.exp(1j * k * x)
        out = out + (1j * k * term if deriv else term)
    return out


def eval_state(state: PlanewaveState, x, deriv: bool = False):
    """psi(x) (or psi'(x) with ``deriv=True``) for real ``x``, vectorized."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    prof = state.profile
    L = prof.support_end
    out = np.empty(x.shape, dtype=complex)
    left = x < 0
    right = x > L
    inner = ~(left | right)
    out[left] = _tail_sum(state.left_tail, x[left], deriv)
    out[right] = _tail_sum(state.right_tail, x[right], deriv)
    if np.any(inner):
        xi = x[inner]
        edges = prof.edges
        idx = np.clip(np.searchsorted(edges, xi, side="right") - 1, 0, len(prof.segments) - 1)
        s = xi - edges[idx]
        q2 = state.k2 - prof.heights[idx]
        c, sn, t = segment_factors(q2, s)
        psi0, dpsi0 = state.interior[idx, 0], state.interior[idx, 1]
        out[inner] = (t * psi0 + c * dpsi0) if deriv else (c * psi0 + sn * dpsi0)
    return complex(out[0]) if scalar else out


def _propagate_from_right(profile: PotentialProfile, k2: complex, psi_L: complex, dpsi_L: complex):
    """(psi, psi') at every segment's left edge, integrating from x = L down."""
    n = len(profile.segments)
    interior = np.empty((n, 2), dtype=complex)
    psi, dpsi = complex(psi_L), complex(dpsi_L)
    for j in range(n - 1, -1, -1):
        lo, hi, u = profile.segments[j]
        c, s, t = segment_factors(k2 - u, -(hi - lo))
        psi, dpsi = complex(c * psi + s * dpsi), complex(t * psi + c * dpsi)
        interior[j] = (psi, dpsi)
    return interior


def _outgoing_form(profile, p, label, family, check=True):
    """State with tails ``R e^{-ipx}`` (x<=0) and ``e^{ipx}`` (x>=L)."""
    L = profile.support_end
    E = np.exp(1j * p * L)
    interior = _propagate_from_right(profile, p * p, E, 1j * p * E)
    R, dR = interior[0]
    bc = abs(dR + 1j * p * R) / max(abs(p * R), abs(p), 1e-300)
    return PlanewaveState(family, p, ((R, -p),), ((1.0 + 0j, p),), interior, profile, label, bc)


def gamow_state(profile: PotentialProfile, pole: Pole, direction: str = "out") -> PlanewaveState:
    """Gamow state for a resonance (or anti-resonance) pole, T = 1.

    ``direction="out"`` gives ``u_n`` with tails ``R_n e^{-i p_n x}`` and
    ``e^{i p_n x}``; ``direction="in"`` gives the incoming solution, i.e.
    the same form at momentum ``-p_n``.

    Raises
    ------
    NotAPole
        The pole's momentum does not zero the outgoing condition on this
        profile.
    """
    if pole.kind not in (RESONANCE, ANTI_RESONANCE):
        raise ValueError(f"gamow_state needs a resonance pole, got kind {pole.kind!r}")
    p = complex(pole.momentum)
    residual = abs(jost_outgoing(profile, p))
    if residual > VERIFY_TOL * local_scale(profile, p):
        raise NotAPole(f"|f(p)| = {residual:.3e} at p = {p}")
    if pole.kind == ANTI_RESONANCE:
        # u_{-n} = conj(u_n): conjugate the T = 1 resonance state
        base = _outgoing_form(profile, -p.conjugate(), "", GAMOW_OUT).conjugate()
        base = PlanewaveState(GAMOW_OUT, p, base.left_tail, base.right_tail, base.interior,
                              profile, f"gamow:{pole.label}", base.bc_residual)
    else:
        base = _outgoing_form(profile, p, f"gamow:{pole.label}", GAMOW_OUT)
    if direction == "out":
        return base
    if direction == "in":
        # reversed boundary conditions at -p_n are the outgoing ones at p_n,
        # so the function is the same; only the momentum label flips
        return PlanewaveState(GAMOW_IN, -p, base.left_tail, base.right_tail, base.interior,
                              profile, f"gamow-in:{pole.label}", base.bc_residual)
    raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")


def interior_integral(fn, profile: PotentialProfile, tol: float | None = None) -> complex:
    """int_0^L fn(x) dx, one adaptive quadrature per segment."""
    tol = tolerances().quad_tol if tol is None else tol
    parts = [integrate_adaptive(fn, lo, hi, tol=tol).value for lo, hi, _ in profile.segments]
    return complex(math.fsum(v.real for v in parts), math.fsum(v.imag for v in parts))


def bound_state(profile: PotentialProfile, pole: Pole) -> PlanewaveState:
    """Real, unit-norm bound state at ``p = i q``."""
    if pole.kind != BOUND:
        raise ValueError(f"bound_state needs a bound pole, got kind {pole.kind!r}")
    p = complex(pole.momentum)
    q = p.imag
    residual = abs(jost_outgoing(profile, p))
    if q <= 0 or abs(p.real) > 1e-12 * q or residual > VERIFY_TOL * local_scale(profile, p):
        raise NotAPole(f"p = {p} is not a bound-state zero (|f| = {residual:.3e})")
    p = 1j * q
    raw = _outgoing_form(profile, p, f"bound:{pole.label}", BOUND_STATE)
    # all data are real for p = iq; drop rounding-level imaginary parts
    raw = PlanewaveState(
        BOUND_STATE, p,
        ((complex(raw.left_tail[0][0].real), -p),), ((1.0 + 0j, p),),
        raw.interior.real.astype(complex), profile, raw.label, raw.bc_residual,
    )
    L = profile.support_end
    R = raw.left_tail[0][0].real
    tails = (R * R + math.exp(-2 * q * L)) / (2 * q)
    inner = interior_integral(lambda x: np.abs(eval_state(raw, x)) ** 2, profile).real
    return raw.scaled(1.0 / math.sqrt(tails + inner))


def scattering_state(profile: PotentialProfile, p: float, side: str = "left") -> PlanewaveState:
    """In-state of real momentum p > 0 with unit incident amplitude."""
    p = float(p)
    if not p > 0:
        raise ValueError("scattering states need real p > 0")
    L = profile.support_end
    R, T = scattering_amplitudes(profile, p, side)
    E = np.exp(1j * p * L)
    if side == "left":
        interior = _propagate_from_right(profile, p * p, T * E, 1j * p * T * E)
        left = ((1.0 + 0j, complex(p)), (R, complex(-p)))
        right = ((T, complex(p)),)
    else:
        psi_L = 1 / E + R * E
        dpsi_L = -1j * p / E + 1j * p * R * E
        interior = _propagate_from_right(profile, p * p, psi_L, dpsi_L)
        left = ((T, complex(-p)),)
        right = ((1.0 + 0j, complex(-p)), (R, complex(p)))
    state = PlanewaveState(SCATTERING, complex(p), left, right, interior, profile,
                           f"scatter:{p!r}" + ("" if side == "left" else ":right"),
                           meta={"R": R, "T": T, "side": side})
    v0 = _tail_sum(left, 0.0)
    d0 = _tail_sum(left, 0.0, deriv=True)
    bc = (abs(v0 - interior[0, 0]) + abs(d0 - interior[0, 1]) / p) / max(1.0, abs(v0))
    return PlanewaveState(state.family, state.momentum, left, right, interior, profile,
                          state.label, float(bc), state.meta)


def junction_residual(state: PlanewaveState) -> float:
    """Largest relative jump of psi or psi'/|k| across 0, L and interior edges."""
    prof = state.profile
    k = max(abs(state.momentum), 1.0)
    worst = 0.0
    for x in prof.edges:
        lo_v = eval_state(state, np.nextafter(x, -np.inf)) if x > 0 else complex(_tail_sum(state.left_tail, 0.0))
        lo_d = eval_state(state, np.nextafter(x, -np.inf), deriv=True) if x > 0 else complex(_tail_sum(state.left_tail, 0.0, True))
        if x < prof.support_end:
            hi_v = eval_state(state, x)
            hi_d = eval_state(state, x, deriv=True)
        else:
            hi_v = complex(_tail_sum(state.right_tail, x))
            hi_d = complex(_tail_sum(state.right_tail, x, True))
        scale = max(abs(hi_v), abs(hi_d) / k, 1e-300)
        worst = max(worst, (abs(hi_v - lo_v) + abs(hi_d - lo_d) / k) / scale)
    return worst


# ---------------------------------------------------------------------------
# overlaps


def _boundary_data(state: PlanewaveState, conj: bool):
    v0 = complex(_tail_sum(state.left_tail, 0.0))
    d0 = complex(_tail_sum(state.left_tail, 0.0, deriv=True))
    L = state.profile.support_end
    vL = complex(_tail_sum(state.right_tail, L))
    dL = complex(_tail_sum(state.right_tail, L, deriv=True))
    if conj:
        return v0.conjugate(), d0.conjugate(), vL.conjugate(), dL.conjugate()
    return v0, d0, vL, dL


def interior_overlap_boundary(a: PlanewaveState, b: PlanewaveState, conjugate_first: bool = True) -> complex:
    """int_0^L A(x) b(x) dx from boundary data, A = conj(a) or a.

    Uses ``(kA^2 - kb^2) int_0^L A b = [A b' - b A']_0^L``, which holds for
    any two solutions on the same profile.

    Raises
    ------
    DegenerateEnergies
        ``kA^2`` and ``kb^2`` coincide (relative 1e-12); integrate instead.
    """
    kA2 = a.k2.conjugate() if conjugate_first else a.k2
    kb2 = b.k2
    den = kA2 - kb2
    if abs(den) <= tolerances().degenerate_tol * max(abs(kA2), abs(kb2), 1.0):
        raise DegenerateEnergies(f"k_a^2 = {kA2} and k_b^2 = {kb2} coincide")
    A0, dA0, AL, dAL = _boundary_data(a, conjugate_first)
    b0, db0, bL, dbL = _boundary_data(b, False)
    W_L = AL * dbL - bL * dAL
    W_0 = A0 * db0 - b0 * dA0
    return (W_L - W_0) / den


def interior_overlap_quad(a: PlanewaveState, b: PlanewaveState, conjugate_first: bool = True,
                          weight_lam: float = 0.0, tol: float | None = None) -> complex:
    """int_0^L exp(-lam x^2) A(x) b(x) dx by quadrature."""
    def fn(x):
        va = eval_state(a, x)
        if conjugate_first:
            va = va.conj()
        w = np.exp(-weight_lam * x * x) if weight_lam else 1.0
        return w * va * eval_state(b, x)
    return interior_integral(fn, a.profile, tol)


def zeldovich_norm(state: PlanewaveState, a: float = 0.0, b: float | None = None) -> complex:
    """N = i (u(a)^2 + u(b)^2) / (2p) + int_a^b u(x)^2 dx.

    The tail pieces of the integral are done analytically and the interior
    by quadrature.  For a Gamow state the result does not depend on
    ``a <= 0`` and ``b >= L``.
    """
    if state.family != GAMOW_OUT:
        raise ValueError("zeldovich_norm is defined for outgoing Gamow states")
    L = state.profile.support_end
    if b is None:
        b = L
    if a > 0 or b < L:
        raise ValueError(f"need a <= 0 and b >= L, got a={a}, b={b}")
    interior = interior_integral(lambda x: eval_state(state, x) ** 2, state.profile)
    # exterior pieces cancel against the boundary term to within
    # eps |u(b)|^2 / |2p|, so they are summed in extended precision
    ld = np.clongdouble
    p = ld(state.momentum)
    (R, kl), = state.left_tail
    (T, kr), = state.right_tail
    R, kl, T, kr = ld(R), ld(kl), ld(T), ld(kr)
    a_, b_, L_ = np.longdouble(a), np.longdouble(b), np.longdouble(L)
    ua = R * np.exp(1j * kl * a_)
    ub = T * np.exp(1j * kr * b_)
    ext = 1j * (ua * ua + ub * ub) / (2 * p)
    if a < 0:
        ext += R * R * (1 - np.exp(2j * kl * a_)) / (2j * kl)
    if b > L:
        ext += T * T * (np.exp(2j * kr * b_) - np.exp(2j * kr * L_)) / (2j * kr)
    return complex(ext) + interior
