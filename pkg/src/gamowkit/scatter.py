"""Transfer matrices for piecewise-constant profiles at complex momentum.

Exterior solutions are written ``A e^{ipx} + B e^{-ipx}``; the transfer
matrix maps the left coefficients to the right ones,

    (A_R, B_R) = M (A_L, B_L).

Inside segment j the solution is propagated as ``(psi, psi')`` with
``q_j^2 = p^2 - u_j``.  Only ``cos(q d)``, ``sin(q d)/q`` and ``q sin(q d)``
enter, all even in ``q``, so the square-root branch never matters.

``M22`` is the Jost-type function: it multiplies the incoming component of
a purely outgoing ansatz, equals 1 for the free profile, and vanishes
exactly at resonances (lower half-plane) and bound states (positive
imaginary axis).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AtPole, DegenerateMomentum
from .profile import PotentialProfile

# |q d| below which the linear-solution series replaces sin/cos
SERIES_SWITCH = 1e-6
P_MIN = 1e-14


def segment_factors(q2, d):
    """Return ``(cos(qd), sin(qd)/q, -q sin(qd))`` for ``q = sqrt(q2)``."""
    q2 = np.asarray(q2, dtype=complex)
    d = np.asarray(d, dtype=float)
    q = np.sqrt(q2)
    qd = q * d
    small = np.abs(qd) < SERIES_SWITCH
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        c = np.where(small, 1.0 - 0.5 * q2 * d * d, np.cos(qd))
        s = np.where(small, d * (1.0 - q2 * d * d / 6.0), np.sin(qd) / np.where(small, 1.0, q))
        t = -q2 * s
    return c, s, t


def propagator(profile: PotentialProfile, p):
    """2x2 map of (psi, psi') from x=0 to x=L, elementwise over ``p``."""
    p = np.asarray(p, dtype=complex)
    p2 = p * p
    P11 = np.ones_like(p)
    P12 = np.zeros_like(p)
    P21 = np.zeros_like(p)
    P22 = np.ones_like(p)
    # deep in the lower half-plane entries may overflow; callers test finiteness
    with np.errstate(over="ignore", invalid="ignore"):
        for (lo, hi, u) in profile.segments:
            c, s, t = segment_factors(p2 - u, hi - lo)
            P11, P12, P21, P22 = (c * P11 + s * P21, c * P12 + s * P22,
                                  t * P11 + c * P21, t * P12 + c * P22)
    return P11, P12, P21, P22


def transfer_elements(profile: PotentialProfile, p):
    """(M11, M12, M21, M22) elementwise over ``p``; NaN where p == 0."""
    p = np.asarray(p, dtype=complex)
    P11, P12, P21, P22 = propagator(profile, p)
    L = profile.support_end
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ip = 1j * p
        E = np.exp(ip * L)
        A11 = P11 + ip * P12
        A12 = P11 - ip * P12
        A21 = (P21 + ip * P22) / ip
        A22 = (P21 - ip * P22) / ip
        M11 = (A11 + A21) / (2 * E)
        M12 = (A12 + A22) / (2 * E)
        M21 = E * (A11 - A21) / 2
        M22 = E * (A12 - A22) / 2
    return M11, M12, M21, M22


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])


def _check_p(p) -> complex:
    p = complex(p)
    if abs(p) < P_MIN:
        raise DegenerateMomentum(f"exterior momentum p={p} is zero")
    return p


def transfer_matrix(profile: PotentialProfile, p: complex) -> TransferMatrix:
    p = _check_p(p)
    return TransferMatrix(*(complex(m) for m in transfer_elements(profile, p)))


def jost_outgoing(profile: PotentialProfile, p):
    """Outgoing-condition function f(p) = M22(p); scalar or array input."""
    if np.ndim(p) == 0:
        p = _check_p(p)
        return complex(transfer_elements(profile, p)[3])
    return transfer_elements(profile, p)[3]


def jost_condition(profile: PotentialProfile, p):
    """Size of the summands that cancel into ``M22``.

    ``|M22|`` cannot be computed to better than about ``eps`` times this.
    """
    p = np.asarray(p, dtype=complex)
    P11, P12, P21, P22 = propagator(profile, p)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        E = np.abs(np.exp(1j * p * profile.support_end))
        return 0.5 * E * (np.abs(P11) + np.abs(P22) + np.abs(p * P12) + np.abs(P21 / p))


def scattering_amplitudes(profile: PotentialProfile, p: complex, side: str = "left"):
    """Reflection and transmission amplitudes for unit incident amplitude.

    ``side="left"``: ``e^{ipx} + R e^{-ipx}`` for x <= 0 and ``T e^{ipx}``
    for x >= L.  ``side="right"``: ``e^{-ipx} + R e^{ipx}`` for x >= L and
    ``T e^{-ipx}`` for x <= 0.
    """
    M = transfer_matrix(profile, p)
    scale = max(1.0, abs(M.m11), abs(M.m12), abs(M.m21))
    if abs(M.m22) < 1e-12 * scale:
        raise AtPole(f"p={p} is (numerically) a zero of the outgoing condition")
    T = 1.0 / M.m22
    if side == "left":
        return -M.m21 / M.m22, T
    if side == "right":
        return M.m12 / M.m22, T
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
