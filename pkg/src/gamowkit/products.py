"""Gaussian-regularized inner products and their lam -> 0 verdicts.

For two states ``a``, ``b`` the product is

    standard:   int exp(-lam x^2) conj(a(x)) b(x) dx
    symmetric:  int exp(-lam x^2) a(x) b(x) dx

over the whole line.  Outside ``[0, L]`` the integrand is a finite sum of
exponentials.  Folding the left half-line onto ``[0, inf)`` and extending
the right tail from ``[L, inf)`` down to ``[0, inf)`` turns the product into

    sum_j C_j J(k_j, lam)  +  finite_part,

where ``finite_part`` is the interior integral minus the pieces of the
extended right tail that lie inside ``[0, L]``.  As lam -> 0 each ``J``
either tends to ``i/k`` or fails to converge (see ``specfun.j_limit``).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .config import tolerances
from .errors import DegenerateEnergies, ProfileMismatch, RomoZeroMomentum
from .quad import gaussian_tail_integral
from .specfun import Limit, LogComplex, TailVerdict, divergence_rate, j_limit, logsum
from .states import PlanewaveState, interior_overlap_boundary, interior_overlap_quad

STANDARD = "standard"
SYMMETRIC = "symmetric"
ZELDOVICH = "zeldovich"
ROMO = "romo"

# exponents closer than this (relative) are merged into one term
MERGE_TOL = 1e-13
# tail coefficients this far below the largest one are dropped
DROP_TOL = 1e-15

DEFAULT_SCHEDULE = tuple(10.0 ** (-1.0 - 0.5 * j) for j in range(9))


class Verdict(str, Enum):
    ZERO = "Zero"
    FINITE = "Finite"
    DIVERGENT = "Divergent"
    DISTRIBUTIONAL = "Distributional"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class TailTermDecomposition:
    """``sum_j C_j J(k_j, lam) + finite_part`` form of a product.

    ``left_raw`` and ``right_raw`` keep the unmerged exponential products on
    each side; they are what the finite-lam evaluation uses.
    """

    terms: tuple[tuple[complex, complex], ...]
    finite_part: complex
    interior: complex
    interior_method: str                  # "boundary" or "quadrature"
    corrections: tuple[complex, ...]
    left_raw: tuple[tuple[complex, complex], ...]
    right_raw: tuple[tuple[complex, complex], ...]
    kind: str


@dataclass(frozen=True)
class ProductVerdict:
    kind: Verdict
    value: complex | None = None
    rate_coefficient: float | None = None
    per_term: tuple[TailVerdict, ...] = ()
    prescription: str = ZELDOVICH
    residual: float | None = None         # |analytic sum| / largest intermediate
    exponents: tuple[complex, ...] = ()

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "prescription": self.prescription}
        if self.value is not None:
            d["value"] = [self.value.real, self.value.imag]
        if self.rate_coefficient is not None:
            d["rate_coefficient"] = self.rate_coefficient
        if self.residual is not None:
            d["residual"] = self.residual
        d["terms"] = [
            {"k": [k.real, k.imag], **tv.to_dict()} for k, tv in zip(self.exponents, self.per_term)
        ]
        return d


@dataclass(frozen=True)
class SweepRecord:
    schedule: tuple[float, ...]
    values: tuple[LogComplex, ...]
    verdict: ProductVerdict
    fitted_decay_slope: float | None = None
    fitted_growth_coefficient: float | None = None
    extra: dict = field(default_factory=dict)


def cone_classify(k: complex) -> TailVerdict:
    """Sector rule for a single tail exponent; same as ``j_limit``."""
    return j_limit(k)


def _check_kind(kind: str) -> str:
    if kind not in (STANDARD, SYMMETRIC):
        raise ValueError(f"kind must be 'standard' or 'symmetric', got {kind!r}")
    return kind


def _first_factor(a: PlanewaveState, kind: str):
    """Tails of the first factor: conjugated for the standard product."""
    if kind == STANDARD:
        conj = lambda tail: tuple((c.conjugate(), -k.conjugate()) for c, k in tail)  # noqa: E731
        return conj(a.left_tail), conj(a.right_tail)
    return a.left_tail, a.right_tail


def _pair_products(ta, tb):
    return tuple((complex(ca * cb), complex(ka + kb)) for ca, ka in ta for cb, kb in tb)


def _merge(terms):
    out: list[list] = []
    for c, k in terms:
        for t in out:
            if abs(t[1] - k) <= MERGE_TOL * max(abs(k), 1.0):
                t[0] += c
                break
        else:
            out.append([c, k])
    top = max((abs(c) for c, _ in out), default=0.0)
    return tuple((complex(c), complex(k)) for c, k in out if abs(c) > DROP_TOL * top)


def _interior(a, b, kind):
    try:
        return interior_overlap_boundary(a, b, conjugate_first=(kind == STANDARD)), "boundary"
    except DegenerateEnergies:
        return interior_overlap_quad(a, b, conjugate_first=(kind == STANDARD)), "quadrature"


def tail_decomposition(a: PlanewaveState, b: PlanewaveState, kind: str = STANDARD) -> TailTermDecomposition:
    """Exponential-term decomposition of the product of ``a`` and ``b``.

    Left-side products ``C e^{iKx}`` (x <= 0) become ``C J(-K)``; right-side
    products ``C e^{iKx}`` (x >= L) become ``C J(K)`` minus their integral
    over ``[0, L]``, which goes into ``finite_part``.

    Raises
    ------
    ProfileMismatch
        ``a`` and ``b`` live on different profiles.
    """
    _check_kind(kind)
    if a.profile is not b.profile and a.profile != b.profile:
        raise ProfileMismatch("states belong to different profiles")
    L = a.profile.support_end
    la, ra = _first_factor(a, kind)
    left = _pair_products(la, b.left_tail)
    right = _pair_products(ra, b.right_tail)
    corrections = []
    for c, k in right:
        if k == 0:
            corrections.append(-c * L)
        else:
            corrections.append(-c * (cmath.exp(1j * k * L) - 1.0) / (1j * k))
    terms = _merge([(c, -k) for c, k in left] + list(right))
    interior, method = _interior(a, b, kind)
    finite = interior + math.fsum(x.real for x in corrections) + 1j * math.fsum(x.imag for x in corrections)
    return TailTermDecomposition(terms, complex(finite), complex(interior), method,
                                 tuple(complex(x) for x in corrections), left, right, kind)


def product_regularized(a: PlanewaveState, b: PlanewaveState, kind: str, lam: float,
                        decomposition: TailTermDecomposition | None = None) -> LogComplex:
    """Value of the Gaussian-regularized product at finite ``lam``.

    Tails use the exact shifted closed form (the right tail starts at
    ``x = L``); the interior is integrated with the Gaussian weight.
    """
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lam must be positive")
    dec = decomposition or tail_decomposition(a, b, kind)
    L = a.profile.support_end
    parts = [gaussian_tail_integral(c, -k, 0.0, lam) for c, k in dec.left_raw]
    parts += [gaussian_tail_integral(c, k, L, lam) for c, k in dec.right_raw]
    interior = interior_overlap_quad(a, b, conjugate_first=(kind == STANDARD), weight_lam=lam)
    parts.append(LogComplex.from_complex(interior))
    return logsum(parts)


def _analytic_sum(dec: TailTermDecomposition, values):
    pieces = [c * v for (c, _), v in zip(dec.terms, values)]
    pieces += [dec.interior, *dec.corrections]
    total = complex(math.fsum(p.real for p in pieces), math.fsum(p.imag for p in pieces))
    scale = max((abs(p) for p in pieces), default=0.0)
    return total, scale


def _finite_or_zero(total, scale, per_term, prescription, exps):
    thr = tolerances().zero_threshold
    resid = abs(total) / scale if scale > 0 else 0.0
    if resid < thr:
        return ProductVerdict(Verdict.ZERO, 0j, None, per_term, prescription, resid, exps)
    return ProductVerdict(Verdict.FINITE, total, None, per_term, prescription, resid, exps)


def product_limit(a: PlanewaveState, b: PlanewaveState, kind: str = STANDARD,
                  prescription: str = ZELDOVICH,
                  decomposition: TailTermDecomposition | None = None) -> ProductVerdict:
    """lam -> 0 verdict of the regularized product.

    ``zeldovich``: each tail exponent is classified by ``j_limit``; any
    Divergent term makes the product Divergent, else any Marginal term makes
    it Marginal, else any Distributional term makes it Distributional.
    Otherwise the limit is ``sum C_j i/k_j + finite_part``, reported as Zero
    below the relative zero threshold.

    ``romo``: every exponent is valued at ``i/k`` regardless of sector.

    Raises
    ------
    RomoZeroMomentum
        A ``k = 0`` term under the romo prescription.
    """
    dec = decomposition or tail_decomposition(a, b, kind)
    exps = tuple(k for _, k in dec.terms)
    if prescription == ROMO:
        if any(k == 0 for k in exps):
            raise RomoZeroMomentum("romo prescription has no value for a k = 0 term")
        per_term = tuple(TailVerdict(Limit.FINITE, 1j / k) for k in exps)
        total, scale = _analytic_sum(dec, [1j / k for k in exps])
        return _finite_or_zero(total, scale, per_term, ROMO, exps)
    if prescription != ZELDOVICH:
        raise ValueError(f"prescription must be 'zeldovich' or 'romo', got {prescription!r}")
    per_term = tuple(j_limit(k) for k in exps)
    kinds = {tv.kind for tv in per_term}
    if Limit.DIVERGENT in kinds:
        rate = max(divergence_rate(k) for k, tv in zip(exps, per_term) if tv.kind == Limit.DIVERGENT)
        return ProductVerdict(Verdict.DIVERGENT, None, rate, per_term, ZELDOVICH, None, exps)
    if Limit.MARGINAL in kinds:
        return ProductVerdict(Verdict.MARGINAL, None, None, per_term, ZELDOVICH, None, exps)
    if Limit.DISTRIBUTIONAL in kinds:
        return ProductVerdict(Verdict.DISTRIBUTIONAL, None, None, per_term, ZELDOVICH, None, exps)
    total, scale = _analytic_sum(dec, [tv.value for tv in per_term])
    return _finite_or_zero(total, scale, per_term, ZELDOVICH, exps)


def _check_schedule(schedule) -> tuple[float, ...]:
    sched = tuple(float(x) for x in schedule)
    if len(sched) < 2:
        raise ValueError("schedule needs at least two values")
    if any(not (x > 0 and math.isfinite(x)) for x in sched):
        raise ValueError("schedule values must be positive and finite")
    if any(b >= a for a, b in zip(sched, sched[1:])):
        raise ValueError("schedule must be strictly descending")
    return sched


def lambda_sweep(a: PlanewaveState, b: PlanewaveState, kind: str = STANDARD,
                 schedule: Sequence[float] = DEFAULT_SCHEDULE) -> SweepRecord:
    """Regularized values over a descending lam schedule, with a fit.

    Zero verdict: slope ``s`` of ``ln|v|`` against ``ln lam``.
    Finite verdict: the same slope for ``|v - v_lim|``.
    Divergent verdict: coefficient ``g`` of ``ln|v| = g / lam + c``.
    """
    sched = _check_schedule(schedule)
    dec = tail_decomposition(a, b, kind)
    verdict = product_limit(a, b, kind, ZELDOVICH, dec)
    values = tuple(product_regularized(a, b, kind, lam, dec) for lam in sched)
    lam = np.array(sched)
    slope = growth = None
    extra = {}
    if verdict.kind in (Verdict.ZERO, Verdict.FINITE):
        if verdict.kind == Verdict.ZERO:
            logs = np.array([v.log10_mag * math.log(10.0) for v in values])
        else:
            dev = [(v - LogComplex.from_complex(verdict.value)) for v in values]
            logs = np.array([d.log10_mag * math.log(10.0) for d in dev])
        ok = np.isfinite(logs)
        if ok.sum() >= 2:
            slope = float(np.polyfit(np.log(lam[ok]), logs[ok], 1)[0])
    elif verdict.kind == Verdict.DIVERGENT:
        logs = np.array([v.log10_mag * math.log(10.0) for v in values])
        growth = float(np.polyfit(1.0 / lam, logs, 1)[0])
        extra["expected_growth"] = verdict.rate_coefficient
    return SweepRecord(sched, values, verdict, slope, growth, extra)
