"""Acceptance checks, shared by the test suite and ``gamowkit selftest``.

Each ``check_*`` function returns a :class:`CriterionResult`; a check never
raises for a failed comparison, it reports it.  Reference systems:

* REF1: square barrier ``u0 = 10``, ``L = 1``
* REF2: square well ``u0 = -25``, ``L = 1``
* WELL_BARRIER: ``u = -30`` on ``[0, 0.5]``, ``u = 20`` on ``[0.5, 1]``
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateEnergies
from .poles import count_zeros, find_bound_states, find_resonances, mirror_pole, scan_rectangle
from .products import (
    ROMO, STANDARD, SYMMETRIC, ZELDOVICH, Verdict,
    lambda_sweep, product_limit, product_regularized, tail_decomposition,
)
from .profile import build_profile, square_barrier
from .quad import gaussian_halfline_quad
from .scatter import jost_outgoing
from .specfun import big_F, j_regularized_log
from .states import (
    _outgoing_form, bound_state, gamow_state, interior_integral, interior_overlap_boundary,
    interior_overlap_quad, scattering_state, zeldovich_norm,
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f} s)"


@dataclass
class Context:
    ref1: object
    ref2: object
    poles: dict          # label -> Pole for labels +-1..+-12
    states: dict         # label -> gamow_out state
    bound_poles: list
    bound: list


@lru_cache(maxsize=1)
def context() -> Context:
    ref1 = square_barrier(10.0, 1.0)
    ref2 = square_barrier(-25.0, 1.0)
    res = find_resonances(ref1, 12)
    poles = {}
    for p in res:
        poles[p.label] = p
        poles[-p.label] = mirror_pole(p, ref1)
    states = {n: gamow_state(ref1, p) for n, p in poles.items() if abs(n) <= 8}
    bp = find_bound_states(ref2, 10.0)
    return Context(ref1, ref2, poles, states, bp, [bound_state(ref2, b) for b in bp])


def _ln_diff(a, b) -> float:
    """|ln a - ln b| for LogComplex values, i.e. the relative difference."""
    if a.is_zero or b.is_zero:
        return 0.0 if a.is_zero and b.is_zero else math.inf
    d = a.ln - b.ln
    return abs(complex(d.real, math.remainder(d.imag, 2 * math.pi)))


def _timed(number, title, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)


# ---------------------------------------------------------------------------


def check_1() -> CriterionResult:
    ctx = context()

    def run():
        worst = 0.0
        bad = []
        degenerate_ok = True
        for n in range(1, 6):
            for m in range(1, 6):
                a, b = ctx.states[n], ctx.states[m]
                for conj in (True, False):
                    try:
                        wb = interior_overlap_boundary(a, b, conj)
                    except DegenerateEnergies:
                        if conj or n != m:
                            bad.append((n, m, conj, "unexpected DegenerateEnergies"))
                        continue
                    if not conj and n == m:
                        degenerate_ok = False
                    wq = interior_overlap_quad(a, b, conj)
                    # opposite-parity pairs vanish exactly; compare on the scale of int |a b|
                    scale = max(abs(wq), interior_integral(lambda x: np.abs(a(x) * b(x)), a.profile).real)
                    err = abs(wb - wq) / scale
                    worst = max(worst, err)
                    if err > 1e-8:
                        bad.append((n, m, conj, err))
        return (not bad and degenerate_ok,
                f"max rel err {worst:.2e} over 45 nondegenerate pairs; "
                f"5 symmetric diagonal pairs raise DegenerateEnergies; failures {bad}")

    r = _timed(1, "boundary overlap identity", run)
    return _with_runtime(r, 5.0)


def _with_runtime(r: CriterionResult, limit: float) -> CriterionResult:
    if r.seconds < limit:
        return r
    return CriterionResult(r.number, r.title, False, r.detail + f"; runtime over {limit} s", r.seconds)


K_COMPONENTS = (-10.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 10.0)
LAMBDAS = (1.0, 0.1, 0.01, 0.001)


def check_2() -> CriterionResult:
    def run():
        worst = 0.0
        where = None
        for lam in LAMBDAS:
            for kr in K_COMPONENTS:
                for ki in K_COMPONENTS:
                    k = complex(kr, ki)
                    err = _ln_diff(j_regularized_log(k, lam), gaussian_halfline_quad(k, lam))
                    if err > worst:
                        worst, where = err, (k, lam)
        return worst < 1e-9, f"max rel err {worst:.2e} at k, lam = {where} over 9x9x4 grid"

    return _with_runtime(_timed(2, "closed form of J vs quadrature", run), 10.0)


def check_3() -> CriterionResult:
    def run():
        r = 50.0
        sector_bad = []
        for th in np.linspace(-0.7 * math.pi, 0.7 * math.pi, 16):
            z = cmath.rect(r, th)
            dev = abs(big_F(z).to_complex() - 1.0)
            if not dev < 1.5 / r**2:
                sector_bad.append((round(th / math.pi, 4), dev))
        growth_bad = []
        for th in [s * f * math.pi for f in (0.8, 0.85, 0.9, 0.95) for s in (1, -1)]:
            logs = []
            for rr in (10.0, 20.0, 50.0):
                z = cmath.rect(rr, th)
                logs.append(big_F(z).ln.real)
            # ln|F| ~ Re(zeta^2) = r^2 cos(2 theta) > 0 here
            slope = (logs[2] - logs[1]) / (50.0**2 - 20.0**2)
            rel = abs(slope / math.cos(2 * th) - 1)
            if not (logs[0] < logs[1] < logs[2] and rel < 0.01):
                growth_bad.append((round(th / math.pi, 4), rel))
        return (not sector_bad and not growth_bad,
                f"sector violations {sector_bad}; growth violations {growth_bad}")

    return _timed(3, "sector limit of F", run)


def check_4() -> CriterionResult:
    ctx = context()

    def run():
        std, sym = [], []
        for n in range(1, 6):
            u = ctx.states[n]
            std.append(product_limit(u, u, STANDARD).kind.value)
            v = product_limit(u, u, SYMMETRIC)
            sym.append(v.kind.value if v.value is None or v.kind == Verdict.ZERO
                       else f"{v.kind.value}({v.value:.6g})")
        ok = all(s == "Divergent" for s in std) and all(s == "Zero" for s in sym)
        return ok, f"standard {std}; symmetric {sym}"

    return _timed(4, "self-product dichotomy", run)


SWEEP = tuple(10.0 ** (-1.0 - 0.5 * j) for j in range(9))
LABELS = (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)


def check_5() -> CriterionResult:
    ctx = context()

    def run():
        counts = {}
        bad = []
        for n in LABELS:
            for m in LABELS:
                rec = lambda_sweep(ctx.states[n], ctx.states[m], STANDARD, SWEEP)
                kind = rec.verdict.kind
                counts[kind.value] = counts.get(kind.value, 0) + 1
                if kind == Verdict.DIVERGENT:
                    g, want = rec.fitted_growth_coefficient, rec.verdict.rate_coefficient
                    if not abs(g / want - 1) <= 0.05:
                        bad.append((n, m, "growth", g, want))
                elif kind in (Verdict.ZERO, Verdict.FINITE):
                    # Finite: the slope is that of |v - v_lim|
                    s = rec.fitted_decay_slope
                    if s is None or not abs(s - 1) <= 0.15:
                        bad.append((n, m, kind.value, s))
                else:
                    bad.append((n, m, kind.value))
        return not bad, f"verdicts {counts}; contradictions {bad}"

    return _with_runtime(_timed(5, "verdict vs lambda sweep", run), 60.0)


def check_6() -> CriterionResult:
    ctx = context()

    def run():
        bad = []
        worst = 0.0
        for n in LABELS:
            for m in LABELS:
                a, b, am = ctx.states[n], ctx.states[m], ctx.states[-n]
                v1 = product_limit(a, b, STANDARD)
                v2 = product_limit(am, b, SYMMETRIC)
                if v1.kind != v2.kind:
                    bad.append((n, m, v1.kind.value, v2.kind.value))
                d = _ln_diff(product_regularized(a, b, STANDARD, 1e-3),
                             product_regularized(am, b, SYMMETRIC, 1e-3))
                worst = max(worst, d)
                if d > 1e-10:
                    bad.append((n, m, d))
        return not bad, f"verdict mismatches/value diffs {bad}; max rel diff at lam=1e-3 {worst:.2e}"

    return _timed(6, "conjugation duality", run)


def check_7() -> CriterionResult:
    ctx = context()

    def run():
        x = np.linspace(-1.0, 3.0, 50)
        jost = []
        worst = 0.0
        for n in range(1, 6):
            p = ctx.poles[n].momentum
            jost.append(abs(jost_outgoing(ctx.ref1, -p.conjugate())))
            u = ctx.states[n](x)
            mirror = ctx.states[-n](x)
            solved = _outgoing_form(ctx.ref1, -p.conjugate(), "", "gamow_out")(x)
            scale = np.max(np.abs(u))
            worst = max(worst, np.max(np.abs(np.conj(u) - mirror)) / scale,
                        np.max(np.abs(np.conj(u) - solved)) / scale)
        ok = max(jost) < 1e-10 and worst < 1e-10
        return ok, f"max |f(-p*)| {max(jost):.2e}; max pointwise rel diff {worst:.2e}"

    return _timed(7, "mirror symmetry", run)


WELL_BARRIER = ((0.0, 0.5, -30.0), (0.5, 1.0, 20.0))


def check_8() -> CriterionResult:
    ctx = context()

    def run():
        prof = build_profile(WELL_BARRIER)
        bp = find_bound_states(prof, 10.0)
        p1 = find_resonances(prof, 1)[0]
        q1 = bp[0].momentum.imag
        phi, u = bound_state(prof, bp[0]), gamow_state(prof, p1)
        verdict = product_limit(phi, u, STANDARD)
        rec = lambda_sweep(phi, u, STANDARD, SWEEP)
        dec_ok = verdict.kind == Verdict.ZERO and rec.fitted_decay_slope is not None \
            and rec.fitted_decay_slope > 0.85
        worst = 0.0
        for i, a in enumerate(ctx.bound):
            for j, b in enumerate(ctx.bound):
                v = product_limit(a, b, STANDARD)
                val = 0j if v.kind == Verdict.ZERO else v.value
                worst = max(worst, abs(val - (1.0 if i == j else 0.0)))
        ok = q1 > abs(p1.momentum.imag) and dec_ok and worst < 1e-9
        return ok, (f"q1 {q1:.6g} vs |Im p1| {abs(p1.momentum.imag):.6g}; verdict {verdict.kind.value}; "
                    f"sweep slope {rec.fitted_decay_slope:.4f}; max |<phi_i|phi_j> - delta_ij| {worst:.2e}")

    return _timed(8, "bound-state sector", run)


def check_9() -> CriterionResult:
    ctx = context()

    def run():
        ms = [m for m in range(-8, 9) if m != 0]
        div = [m for m in ms if product_limit(ctx.states[2], ctx.states[m], STANDARD).kind == Verdict.DIVERGENT]
        contiguous = bool(div) and all(m > 0 for m in div) and div == list(range(min(div), max(div) + 1))
        p2 = ctx.poles[2].momentum
        grid = np.linspace(0.05, 2 * p2.real + 0.05, 100)
        mism = []
        for p in grid:
            psi = scattering_state(ctx.ref1, p)
            got = product_limit(psi, ctx.states[2], STANDARD).kind == Verdict.DIVERGENT
            want = abs(p - p2.real) < abs(p2.imag)
            if got != want:
                mism.append(round(p, 6))
        return contiguous and not mism, (f"Divergent m for u_2: {div}; "
                                         f"cone-section mismatches on 100-pt grid {mism}")

    return _timed(9, "divergence cone patterns", run)


def check_10() -> CriterionResult:
    ctx = context()

    def run():
        worst = 0.0
        scale_err = 0.0
        c = 0.3 + 1.7j
        for n in range(1, 4):
            u = ctx.states[n]
            n0 = zeldovich_norm(u, 0.0, 1.0)
            n1 = zeldovich_norm(u, -1.0, 3.0)
            worst = max(worst, abs(n0 - n1) / abs(n0))
            scale_err = max(scale_err, abs(zeldovich_norm(u.scaled(c)) - c * c * n0) / abs(c * c * n0))
        return worst < 1e-10 and scale_err < 1e-13, (
            f"max rel interval dependence {worst:.2e}; max rel scaling error {scale_err:.2e}")

    return _timed(10, "norm interval independence", run)


RECTS = ((0.0, 10.0, -3.0, 0.0), (0.0, 20.0, -5.0, 0.0), (0.0, 35.0, -6.5, 0.0))


def check_11() -> CriterionResult:
    ctx = context()

    def run():
        rows = []
        ok = True
        res = [ctx.poles[n] for n in range(1, 13)]
        for rect in RECTS:
            cnt = count_zeros(ctx.ref1, rect)
            roots, _, _ = scan_rectangle(ctx.ref1, rect)
            inside = sum(1 for p in res if rect[0] < p.momentum.real < rect[1]
                         and rect[2] < p.momentum.imag < rect[3])
            rows.append((rect[1], rect[2], cnt, len(roots), inside))
            ok &= cnt == len(roots) == inside
        worst = max(p.scaled_residual for p in res)
        # a square well of depth V0 and width L holds floor(sqrt(V0) L / pi) + 1 bound states
        oracle = math.floor(math.sqrt(25.0) * 1.0 / math.pi) + 1
        ok &= worst < 1e-12 and len(ctx.bound_poles) == oracle
        return ok, (f"(re_hi, im_lo, count, scanned, listed) {rows}; max scaled residual {worst:.2e}; "
                    f"REF2 bound states {len(ctx.bound_poles)} vs oracle {oracle}")

    return _timed(11, "pole-finder certification", run)


def check_12() -> CriterionResult:
    ctx = context()

    def run():
        bad = []
        disagree_ok = True
        for kind in (STANDARD, SYMMETRIC):
            for n in LABELS:
                for m in LABELS:
                    a, b = ctx.states[n], ctx.states[m]
                    dec = tail_decomposition(a, b, kind)
                    v = product_limit(a, b, kind, ROMO, dec)
                    if v.kind != Verdict.ZERO or v.residual >= 1e-12:
                        bad.append((kind[:3], n, m, v.kind.value, f"{v.residual:.2e}"))
                    z = product_limit(a, b, kind, ZELDOVICH, dec)
                    # the prescriptions should differ exactly where zeldovich diverges
                    if (z.kind != v.kind) != (z.kind == Verdict.DIVERGENT):
                        disagree_ok = False
        return not bad and disagree_ok, (
            f"non-Zero or residual >= 1e-12: {bad}; disagreement set equals Divergent set: {disagree_ok}")

    return _timed(12, "romo comparison", run)


CHECKS = (check_1, check_2, check_3, check_4, check_5, check_6,
          check_7, check_8, check_9, check_10, check_11, check_12)


def run_all(echo=print) -> list[CriterionResult]:
    results = []
    for check in CHECKS:
        r = check()
        results.append(r)
        if echo is not None:
            echo(r.line())
    return results
