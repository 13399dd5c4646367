import csv
import io
import json

import pytest

from gamowkit.cli import run
from gamowkit.profile import save_profile, square_barrier


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def ref1_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("prof") / "ref1.prof"
    save_profile(square_barrier(10.0, 1.0), path)
    return str(path)


@pytest.fixture(scope="module")
def ref2_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("prof") / "ref2.prof"
    save_profile(square_barrier(-25.0, 1.0), path)
    return str(path)


@pytest.fixture(scope="module")
def cache_path(ref1_path, tmp_path_factory):
    path = tmp_path_factory.mktemp("cache") / "poles.json"
    code, _, _ = call("poles", "--profile", ref1_path, "--count", "6", "--format", "json", "-o", str(path))
    assert code == 0
    return str(path)


def test_poles_csv(ref1_path, ctx):
    code, out, _ = call("poles", "--profile", ref1_path, "--count", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "re_p", "im_p", "re_z", "im_z", "residual"]
    assert len(rows) == 6
    for row in rows[1:]:
        n = int(row[0])
        p = ctx.poles[n].momentum
        assert abs(complex(float(row[1]), float(row[2])) - p) < 1e-12 * abs(p)
        # 17 significant digits
        assert len(row[1].replace("-", "").replace(".", "").lstrip("0")) == 17


def test_poles_json(cache_path):
    with open(cache_path) as fh:
        data = json.load(fh)
    assert set(data) == {"profile", "poles"}
    assert [p["label"] for p in data["poles"]] == [1, 2, 3, 4, 5, 6]


def test_product_symmetric_self(ref1_path):
    code, out, _ = call("product", "--profile", ref1_path, "--a", "gamow:1", "--b", "gamow:1", "--kind", "symmetric")
    assert code == 0
    assert json.loads(out)["kind"] == "Zero"


def test_product_standard_self(ref1_path):
    code, out, _ = call("product", "--profile", ref1_path, "--a", "gamow:1", "--b", "gamow:1")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "Divergent" and d["rate_coefficient"] > 0
    assert d["a"] == "gamow:1" and d["product_kind"] == "standard"


def test_product_bound(ref2_path):
    code, out, _ = call("product", "--profile", ref2_path, "--a", "bound:1", "--b", "scatter:2.5")
    assert code == 0 and json.loads(out)["kind"] == "Zero"


def test_cache_roundtrip_verdicts(ref1_path, cache_path):
    # a fresh scan may differ from the cached poles in the last bits only
    pairs = [("gamow:1", "gamow:2"), ("gamow:2", "gamow:-1"), ("gamow:3", "scatter:9.1"), ("gamow-in:2", "gamow:4")]
    for a, b in pairs:
        for kind in ("standard", "symmetric"):
            args = ["product", "--profile", ref1_path, "--a", a, "--b", b, "--kind", kind]
            c1, fresh, _ = call(*args)
            c2, cached, _ = call(*args, "--poles", cache_path)
            fresh, cached = json.loads(fresh), json.loads(cached)
            assert c1 == c2 == 0
            assert fresh["kind"] == cached["kind"]
            assert [t["kind"] for t in fresh["terms"]] == [t["kind"] for t in cached["terms"]]


def test_cache_reuse_identical(ref1_path, cache_path):
    args = ["product", "--profile", ref1_path, "--poles", cache_path, "--a", "gamow:2", "--b", "gamow:-1"]
    assert call(*args) == call(*args)


def test_state_eval(ref1_path):
    code, out, _ = call("state-eval", "--profile", ref1_path, "--state", "gamow:1", "--x-grid=-1:2:7")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["x", "re_u", "im_u", "abs_u"] and len(rows) == 8
    x, re, im, ab = map(float, rows[-1])
    assert x == 2.0 and abs(abs(complex(re, im)) - ab) < 1e-15 * ab


def test_sweep(ref1_path):
    code, out, _ = call("sweep", "--profile", ref1_path, "--a", "gamow:2", "--b", "gamow:2",
                        "--schedule", "0.1,0.03,0.01,0.003")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# verdict=Divergent"
    body = [ln for ln in lines if not ln.startswith("#")]
    assert body[0] == "lam,log10_abs,phase" and len(body) == 5


def test_sweep_bad_schedule(ref1_path):
    code, _, err = call("sweep", "--profile", ref1_path, "--a", "gamow:1", "--b", "gamow:2",
                        "--schedule", "0.01,0.1")
    assert code == 2 and err


def test_cone_map_poles(ref1_path, cache_path):
    code, out, _ = call("cone-map", "--profile", ref1_path, "--poles", cache_path,
                        "--rows=2", "--cols=-3,-2,-1,1,2,3,4,5,6")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["row"] + [f"gamow:{m}" for m in (-3, -2, -1, 1, 2, 3, 4, 5, 6)]
    assert rows[1][0] == "gamow:2"
    codes = dict(zip(rows[0][1:], rows[1][1:]))
    assert codes["gamow:2"] == "D" and codes["gamow:-1"] == "0"


def test_cone_map_pgrid_json(ref1_path, cache_path):
    code, out, _ = call("cone-map", "--profile", ref1_path, "--poles", cache_path,
                        "--rows=2", "--p-grid", "1:12:12", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["rows"] == ["gamow:2"] and len(d["cols"]) == 12
    assert len(d["codes"]) == 1 and len(d["codes"][0]) == 12
    assert set(d["codes"][0]) <= set(d["legend"])


def test_deterministic(ref1_path, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"o{i}.csv"
        call("cone-map", "--profile", ref1_path, "--rows=1,2", "--cols=-2,1,2,3", "-o", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_domain_error_exit_1(ref1_path, ref2_path):
    code, _, err = call("product", "--profile", ref2_path, "--a", "bound:5", "--b", "bound:1")
    assert code == 1 and err.startswith("NotAPole")
    code, _, err = call("product", "--profile", ref1_path, "--a", "scatter:2", "--b", "scatter:2",
                        "--prescription", "romo")
    assert code == 1 and err.startswith("RomoZeroMomentum")


def test_usage_errors_exit_2(ref1_path, tmp_path):
    assert call("frobnicate")[0] == 2
    assert call("poles")[0] == 2
    assert call("product", "--profile", ref1_path, "--a", "gamow:x", "--b", "gamow:1")[0] == 2
    assert call("poles", "--profile", str(tmp_path / "missing.prof"))[0] == 2
    assert call("poles", "--profile", ref1_path, "--tol", "zero_threshold=abc")[0] == 2


def test_config_file(ref1_path, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"profile_path": ref1_path, "count": 2, "format": "csv"}))
    code, out, _ = call("poles", "--config", str(cfg))
    assert code == 0 and len(out.splitlines()) == 3
    cfg.write_text(json.dumps({"profile_path": ref1_path, "colour": "red"}))
    code, _, err = call("poles", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_profile_mismatch_cache(ref2_path, cache_path):
    code, _, err = call("product", "--profile", ref2_path, "--poles", cache_path, "--a", "gamow:1", "--b", "gamow:1")
    assert code == 1 and err.startswith("ProfileMismatch")


def test_tol_override(ref1_path):
    args = ["product", "--profile", ref1_path, "--a", "gamow:2", "--b", "gamow:-1"]
    assert json.loads(call(*args)[1])["kind"] == "Zero"
    assert json.loads(call(*args, "--tol", "zero_threshold=1e-30")[1])["kind"] == "Finite"
