"""Special functions for Gaussian-regularized half-line integrals.

The central object is

    J(k, lam) = int_0^inf exp(-lam x**2) exp(i k x) dx
              = (i/k) F(zeta),        zeta = -i k / (2 sqrt(lam)),
    F(zeta)   = sqrt(pi) zeta exp(zeta**2) erfc(zeta).

Since ``exp(zeta**2) erfc(zeta) = w(i zeta)`` with ``w`` the Faddeeva
function, ``J(k, lam) = sqrt(pi) / (2 sqrt(lam)) * w(k / (2 sqrt(lam)))``,
which is what is actually evaluated (no division by ``k``).

Large values (``exp(|k|**2 / 4 lam)`` growth in the lower half-plane) are
carried as :class:`LogComplex`.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import wofz

from .config import tolerances
from .errors import DomainWarning, Overflow

LN10 = math.log(10.0)
SQRT_PI = math.sqrt(math.pi)

# plain complex results above this magnitude raise Overflow
_MAX_PLAIN = 1e300

# default relative tolerance for deciding that k sits on the real axis or
# on a boundary ray of the convergence sector (see config.Tolerances)
ANGLE_TOL = 1e-12


def _wrap_phase(phi: float) -> float:
    phi = math.remainder(phi, 2.0 * math.pi)
    if phi <= -math.pi:
        phi += 2.0 * math.pi
    return phi


@dataclass(frozen=True)
class LogComplex:
    """Complex number stored as ``(log10 |v|, arg v)``.

    Zero is represented by ``log10_mag = -inf``.
    """

    log10_mag: float
    phase: float = 0.0

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(-math.inf, 0.0)

    @classmethod
    def from_complex(cls, v: complex) -> "LogComplex":
        v = complex(v)
        if v == 0:
            return cls.zero()
        if not cmath.isfinite(v):
            raise Overflow(f"cannot convert non-finite {v} to LogComplex")
        return cls(math.log10(abs(v)), cmath.phase(v))

    @classmethod
    def from_log(cls, ln: complex) -> "LogComplex":
        """From a natural logarithm ``ln v`` (any branch)."""
        ln = complex(ln)
        if ln.real == -math.inf:
            return cls.zero()
        return cls(ln.real / LN10, _wrap_phase(ln.imag))

    @property
    def is_zero(self) -> bool:
        return self.log10_mag == -math.inf

    @property
    def ln(self) -> complex:
        """Natural log, principal branch; ``-inf`` real part for zero."""
        return complex(self.log10_mag * LN10, self.phase)

    @property
    def abs(self) -> float:
        return 10.0 ** self.log10_mag if self.log10_mag < 308 else math.inf

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        if self.log10_mag > 300:
            raise Overflow(f"|v| = 10**{self.log10_mag:.6g} is not representable")
        return cmath.rect(10.0 ** self.log10_mag, self.phase)

    def __mul__(self, other) -> "LogComplex":
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log10_mag + other.log10_mag, _wrap_phase(self.phase + other.phase))

    __rmul__ = __mul__

    def __neg__(self) -> "LogComplex":
        return LogComplex(self.log10_mag, _wrap_phase(self.phase + math.pi))

    def __add__(self, other) -> "LogComplex":
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        return logsum([self, other])

    __radd__ = __add__

    def __sub__(self, other) -> "LogComplex":
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(other)
        return logsum([self, -other])


def logsum(values) -> LogComplex:
    """Sum of LogComplex values, scaled by the largest magnitude."""
    vals = [v for v in values if not v.is_zero]
    if not vals:
        return LogComplex.zero()
    top = max(v.log10_mag for v in vals)
    acc = 0j
    for v in vals:
        acc += cmath.rect(10.0 ** (v.log10_mag - top), v.phase)
    if acc == 0:
        return LogComplex.zero()
    return LogComplex(top + math.log10(abs(acc)), cmath.phase(acc))


# ---------------------------------------------------------------------------
# Faddeeva function


def faddeeva(z):
    """w(z) = exp(-z**2) erfc(-i z).

    Backed by ``scipy.special.wofz``; accurate to ~1e-13 relative in the
    upper half-plane.  Below the real axis ``w(z) = 2 exp(-z**2) - w(-z)``
    and the absolute error grows with ``|exp(-z**2)|``.

    Raises
    ------
    Overflow
        If the result is not finite (use :func:`log_faddeeva` instead).
    """
    w = wofz(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(w)) or np.any(np.abs(w) > _MAX_PLAIN):
        raise Overflow(f"faddeeva overflows at {z}")
    return complex(w) if w.ndim == 0 else w


def log_faddeeva(z: complex) -> complex:
    """Natural log of w(z), finite for every finite z."""
    z = complex(z)
    w = complex(wofz(z))
    if cmath.isfinite(w) and w != 0 and abs(w) < _MAX_PLAIN:
        return cmath.log(w)
    # overflow only happens for Im z < 0 where exp(-z**2) dominates
    wm = complex(wofz(-z))
    return -z * z + math.log(2.0) + cmath.log(1.0 - 0.5 * wm * cmath.exp(z * z))


def big_F(zeta: complex) -> LogComplex:
    """F(zeta) = sqrt(pi) zeta exp(zeta**2) erfc(zeta) in log form."""
    zeta = complex(zeta)
    if zeta == 0:
        return LogComplex.zero()
    return LogComplex.from_log(cmath.log(SQRT_PI * zeta) + log_faddeeva(1j * zeta))


def big_F_asymptotic(zeta: complex, m_terms: int) -> complex:
    """Partial sum ``1 + sum_{m=1}^{M} (-1)^m (2m-1)!! / (2 zeta^2)^m``.

    Warns with :class:`DomainWarning` when ``|arg zeta| >= 3 pi / 4``, where
    the series no longer describes F.
    """
    zeta = complex(zeta)
    if zeta == 0:
        raise ValueError("asymptotic series needs zeta != 0")
    if m_terms < 0:
        raise ValueError("m_terms must be >= 0")
    if abs(cmath.phase(zeta)) >= 0.75 * math.pi:
        warnings.warn(f"asymptotic series of F used at arg(zeta)={cmath.phase(zeta):.4f}",
                      DomainWarning, stacklevel=2)
    total = 1.0 + 0j
    term = 1.0 + 0j
    inv = 1.0 / (2.0 * zeta * zeta)
    for m in range(1, m_terms + 1):
        term *= -(2 * m - 1) * inv
        total += term
    return total


# ---------------------------------------------------------------------------
# the basic integral J(k, lam)


def _check_lam(lam: float) -> float:
    lam = float(lam)
    if not (lam > 0 and math.isfinite(lam)):
        raise ValueError(f"lambda must be a positive finite real, got {lam}")
    return lam


def j_regularized_log(k: complex, lam: float) -> LogComplex:
    lam = _check_lam(lam)
    s = math.sqrt(lam)
    return LogComplex.from_log(math.log(SQRT_PI / (2.0 * s)) + log_faddeeva(complex(k) / (2.0 * s)))


def j_regularized(k: complex, lam: float) -> complex:
    """J(k, lam) as a plain complex; raises Overflow when too large."""
    lam = _check_lam(lam)
    s = math.sqrt(lam)
    w = complex(wofz(complex(k) / (2.0 * s)))
    if not cmath.isfinite(w) or abs(w) > _MAX_PLAIN:
        raise Overflow(f"J({k}, {lam}) overflows; use j_regularized_log")
    return SQRT_PI / (2.0 * s) * w


# ---------------------------------------------------------------------------
# lam -> 0 limit


class Limit(str, Enum):
    FINITE = "Finite"
    DIVERGENT = "Divergent"
    DISTRIBUTIONAL = "Distributional"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class TailVerdict:
    kind: Limit
    value: complex | None = None  # i/k for FINITE

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value}
        if self.value is not None:
            d["value"] = [self.value.real, self.value.imag]
        return d


def j_limit(k: complex) -> TailVerdict:
    """Classify lim_{lam->0+} J(k, lam).

    Finite (= i/k) for -pi/4 < arg k < 5pi/4 off the real axis, Distributional
    on the real axis, Marginal on the two boundary rays, Divergent otherwise
    (including k = 0).
    """
    k = complex(k)
    x, y = k.real, k.imag
    r2 = x * x + y * y
    if r2 == 0:
        return TailVerdict(Limit.DIVERGENT)
    r = math.sqrt(r2)
    tol = tolerances().angle_tol
    if abs(y) <= tol * r:
        return TailVerdict(Limit.DISTRIBUTIONAL)
    if y > 0:
        return TailVerdict(Limit.FINITE, 1j / k)
    re_k2 = x * x - y * y
    if abs(re_k2) <= tol * r2:
        return TailVerdict(Limit.MARGINAL)
    if re_k2 > 0:
        return TailVerdict(Limit.FINITE, 1j / k)
    return TailVerdict(Limit.DIVERGENT)


def divergence_rate(k: complex) -> float:
    """Coefficient g of 1/lam in ln|J(k, lam)| for a divergent k."""
    k = complex(k)
    return max(0.0, -(k * k).real) / 4.0
