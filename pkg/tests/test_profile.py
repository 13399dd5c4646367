import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gamowkit.errors import GapOrOverlap, NonfiniteValue, NonpositiveSupport, ProfileError
from gamowkit.profile import build_profile, load_profile, profile_from_dict, save_profile, square_barrier


def test_single_segment_barrier():
    p = build_profile([(0, 1, 10)])
    assert p.L == 1.0 and p.segments == ((0.0, 1.0, 10.0),)


def test_gap_rejected():
    with pytest.raises(GapOrOverlap):
        build_profile([(0, 0.5, 10), (0.7, 1, 10)])


def test_overlap_rejected():
    with pytest.raises(GapOrOverlap):
        build_profile([(0, 0.6, 10), (0.5, 1, 10)])


def test_must_start_at_zero():
    with pytest.raises(GapOrOverlap):
        build_profile([(0.1, 1, 10)])


def test_well_accepted():
    p = build_profile([(0, 1, -25)])
    assert p.heights[0] == -25.0


@pytest.mark.parametrize("segs", [[], [(0, 0, 1)], [(0, -1, 1)]])
def test_nonpositive_support(segs):
    with pytest.raises((NonpositiveSupport, ProfileError)):
        build_profile(segs)


@pytest.mark.parametrize("bad", [math.inf, math.nan])
def test_nonfinite(bad):
    with pytest.raises(NonfiniteValue):
        build_profile([(0, 1, bad)])


def test_square_barrier_variants():
    assert square_barrier(10, 1).segments == ((0.0, 1.0, 10.0),)
    assert square_barrier(0, 1).heights[0] == 0.0
    with pytest.raises(NonpositiveSupport):
        square_barrier(10, 0)


def test_potential_zero_outside():
    p = build_profile([(0, 0.4, 3), (0.4, 1, -2)])
    x = np.array([-5.0, -1e-300, 1.0 + 1e-12, 7.0])
    assert np.all(p.u(x) == 0.0)
    assert p.u(0.2) == 3 and p.u(0.7) == -2


segments = st.lists(
    st.tuples(st.floats(0.01, 5.0), st.floats(-100, 100)), min_size=1, max_size=6
)


@given(segments)
def test_build_roundtrip(widths_heights):
    edges = np.concatenate([[0.0], np.cumsum([w for w, _ in widths_heights])])
    segs = [(float(edges[i]), float(edges[i + 1]), h) for i, (_, h) in enumerate(widths_heights)]
    p = build_profile(segs)
    assert [tuple(s) for s in p.segments] == segs
    assert p.L == segs[-1][1]
    assert profile_from_dict(p.to_dict()) == p


def test_file_roundtrip(tmp_path):
    p = build_profile([(0, 0.5, -30), (0.5, 1, 20)], two_m=2.0)
    f = tmp_path / "w.json"
    save_profile(p, f)
    assert load_profile(f) == p


def test_file_unknown_keys(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"segments": [{"x_lo": 0, "x_hi": 1, "u": 1}], "colour": "red"}))
    with pytest.raises(ProfileError):
        load_profile(f)
    f.write_text(json.dumps({"segments": [{"x_lo": 0, "x_hi": 1, "u": 1, "q": 2}]}))
    with pytest.raises(ProfileError):
        load_profile(f)


def test_energy_display_mass():
    p = square_barrier(10, 1, two_m=2.0)
    assert p.energy(2 + 1j) == (2 + 1j) ** 2 / 2.0
