import json
import math

import numpy as np
import pytest
from scipy.optimize import bisect

from gamowkit.errors import NotAPole, SearchExhausted
from gamowkit.poles import (
    ANTI_RESONANCE, BOUND, RESONANCE, Pole, count_zeros, find_bound_states, find_resonances,
    mirror_pole, newton_refine, verify_pole,
)
from gamowkit.profile import square_barrier

# frozen after the first verified run
GOLDEN_REF1 = [
    3.7957371433157294 - 0.9378377633896038j,
    6.149923476282738 - 2.458555281942196j,
    9.160717044723532 - 3.4127286832511556j,
    12.280861910402958 - 4.052895432802697j,
    15.426060476714275 - 4.532243601931983j,
]
GOLDEN_COUNT_REF1 = 6


@pytest.fixture(scope="module")
def first5(ctx):
    return [ctx.poles[n] for n in range(1, 6)]


def test_count_free(free):
    assert count_zeros(free, (0, 10, -5, 0)) == 0


def test_count_ref1_golden(ref1):
    assert count_zeros(ref1, (0, 20, -5, 0)) == GOLDEN_COUNT_REF1


def test_count_ref1_matches_poles(ctx):
    inside = [p for n, p in ctx.poles.items() if n > 0 and p.momentum.real < 20 and p.momentum.imag > -5]
    assert len(inside) == GOLDEN_COUNT_REF1


@pytest.mark.parametrize("rect", [(0, 20, 0.1, 5), (0, 10, 0.1, 2), (0, 40, 0.1, 8), (0.5, 20.5, 0.3, 5)])
def test_count_upper_half_plane_empty(ref1, rect):
    assert count_zeros(ref1, rect) == 0


def test_free_profile_exhausted(free):
    with pytest.raises(SearchExhausted):
        find_resonances(free, 1)


def test_ref1_first_five(first5, ref1):
    for n, (pole, ref) in enumerate(zip(first5, GOLDEN_REF1), start=1):
        assert pole.label == n and pole.kind == RESONANCE and pole.sheet == "second"
        assert pole.momentum.imag < 0 < pole.momentum.real
        assert abs(pole.momentum.real) > abs(pole.momentum.imag)
        assert not pole.atypical
        assert pole.scaled_residual < 1e-12
        assert abs(pole.momentum - ref) < 1e-10
    assert [p.momentum.real for p in first5] == sorted(p.momentum.real for p in first5)


def test_find_resonances_fresh_call(ref1):
    poles = find_resonances(ref1, 5)
    assert np.allclose([p.momentum for p in poles], GOLDEN_REF1, atol=1e-10, rtol=0)


def test_regular_spacing(first5):
    re = [p.momentum.real for p in first5]
    gaps = np.diff(re)[1:]  # n >= 2
    assert np.all(np.abs(np.diff(gaps)) / gaps[:-1] < 0.25)
    im = [abs(p.momentum.imag) for p in first5]
    assert np.all(np.diff(im) > 0)
    # "slowly": the increments shrink
    assert np.all(np.diff(np.diff(im)[1:]) < 0)


def test_energy_consistency(ctx):
    for pole in ctx.poles.values():
        assert pole.energy == pole.momentum ** 2 / ctx.ref1.two_m
    for pole in ctx.bound_poles:
        assert pole.energy == pole.momentum ** 2 / ctx.ref2.two_m


def test_newton_idempotent_well_conditioned(ctx):
    for n in (1, 2, 3):
        p = ctx.poles[n].momentum
        assert abs(newton_refine(ctx.ref1, p) - p) < 1e-13


def test_newton_idempotent_noise_floor(ctx):
    # deeper poles sit on a cancellation floor of eps * exp(2 |Im p| L)
    L = ctx.ref1.support_end
    for n in range(1, 13):
        p = ctx.poles[n].momentum
        floor = np.finfo(float).eps * math.exp(2 * abs(p.imag) * L) * abs(p)
        assert abs(newton_refine(ctx.ref1, p) - p) < max(1e-13, floor)


def test_mirror_definition():
    pole = Pole(1, RESONANCE, 3 - 0.5j, (3 - 0.5j) ** 2, 0.0)
    m = mirror_pole(pole)
    assert m.label == -1 and m.momentum == -3 - 0.5j and m.kind == ANTI_RESONANCE
    assert mirror_pole(m) == pole


def test_mirror_reverified(ctx, first5):
    for pole in first5:
        m = mirror_pole(pole, ctx.ref1)
        assert m.scaled_residual < 1e-10
        assert abs(m.momentum + pole.momentum.conjugate()) < 1e-10
        assert ctx.poles[-pole.label].momentum == m.momentum


def test_mirror_rejects_bound(ctx):
    with pytest.raises(ValueError):
        mirror_pole(ctx.bound_poles[0])


def test_verify_pole_rejects(ref1):
    fake = Pole(1, RESONANCE, 3 - 0.5j, (3 - 0.5j) ** 2, 0.0)
    with pytest.raises(NotAPole):
        verify_pole(ref1, fake)


def test_no_bound_states_in_barrier(ref1):
    assert find_bound_states(ref1, 10) == []


def _well_equation(q, v0=25.0, L=1.0):
    """Even and odd finite-square-well conditions, centred at L/2."""
    k = math.sqrt(v0 - q * q)
    even = k * math.sin(k * L / 2) - q * math.cos(k * L / 2)
    odd = k * math.cos(k * L / 2) + q * math.sin(k * L / 2)
    return even, odd


def _well_roots(v0=25.0, L=1.0):
    roots = []
    grid = np.linspace(1e-9, math.sqrt(v0) - 1e-9, 20001)
    for idx in (0, 1):
        vals = [_well_equation(q, v0, L)[idx] for q in grid]
        for i in range(len(grid) - 1):
            if vals[i] * vals[i + 1] < 0:
                roots.append(bisect(lambda q: _well_equation(q, v0, L)[idx], grid[i], grid[i + 1], xtol=1e-15))
    return sorted(roots)


def test_square_well_count_and_equation(ctx):
    bp = ctx.bound_poles
    assert len(bp) == math.floor(math.sqrt(25) * 1 / math.pi) + 1 == 2
    oracle = _well_roots()
    assert len(oracle) == 2
    for pole, q_ref in zip(bp, oracle):
        q = pole.momentum.imag
        assert pole.kind == BOUND and pole.sheet == "first"
        assert pole.momentum.real == 0 and q > 0
        assert abs(q - q_ref) < 1e-10
        assert min(abs(v) for v in _well_equation(q)) < 1e-10
    assert bp[0].momentum.imag < bp[1].momentum.imag


def test_deeper_well_counts():
    for v0 in (4.0, 60.0, 150.0):
        prof = square_barrier(-v0, 1.0)
        got = find_bound_states(prof, math.sqrt(v0) + 1)
        assert len(got) == math.floor(math.sqrt(v0) / math.pi) + 1


def test_pole_json_roundtrip(first5):
    for pole in first5:
        back = Pole.from_dict(json.loads(json.dumps(pole.to_dict())))
        assert back == pole

