"""Samplers, epsilon nets, rendering and the command-line interface."""

import io
import random
import sys
from contextlib import redirect_stdout
from fractions import Fraction as F


from plmonoid import (
    CanonicalTuple,
    MonoTuple,
    PLHomeo,
    PLMono,
    compose,
    identity,
    mean,
    sup_dist,
)
from plmonoid import serialize as ser
from plmonoid.explorer import (
    main,
    nearest_net_point,
    net_points,
    net_size,
    random_homeo,
    random_mono,
    random_point,
    random_tuple,
    render_csv,
    render_svg,
)
from plmonoid.gaps import extreme_pair


def run_cli(argv, stdin=None):
    buf = io.StringIO()
    old_stdin = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with redirect_stdout(buf):
            code = main(argv)
    finally:
        sys.stdin = old_stdin
    return code, buf.getvalue()


# --- samplers


def test_sampler_determinism():
    a = [random_mono(random.Random(99)) for _ in range(5)]
    b = [random_mono(random.Random(99)) for _ in range(5)]
    assert a == b


def test_random_point_is_canonical():
    rng = random.Random(7)
    for n in (1, 2, 3, 5):
        p = random_point(rng, n)
        assert isinstance(p, CanonicalTuple)
        assert mean(p.as_tuple()) == identity()


def test_random_point_single_is_identity():
    assert random_point(random.Random(0), 1).components == (identity(),)


def test_random_homeo_strict():
    rng = random.Random(8)
    for _ in range(10):
        g = random_homeo(rng)
        assert isinstance(g, PLHomeo)
        assert g != identity()


def test_random_tuple_plateau_mix():
    rng = random.Random(12)
    flat = 0
    for _ in range(40):
        f = random_mono(rng)
        ys = [y for _, y in f.breakpoints]
        if any(y0 == y1 for y0, y1 in zip(ys, ys[1:])):
            flat += 1
    assert flat > 5  # plateaus do occur


# --- epsilon nets


def test_net_sizes_small():
    assert net_size(2, 1) == 1
    assert net_size(2, 2) == 3
    assert net_size(2, 4) == 19
    assert net_size(1, 10) == 1


def test_net_sizes_strictly_increase():
    sizes = [net_size(2, m) for m in (2, 4, 8, 16)]
    assert sizes == sorted(sizes) and len(set(sizes)) == 4


def test_net_points_match_size():
    for n, m in ((2, 2), (2, 4), (3, 2)):
        pts = list(net_points(n, m))
        assert len(pts) == net_size(n, m)
        assert len(set(pts)) == len(pts)
        for p in pts:
            assert mean(p.as_tuple()) == identity()


def test_net_points_single_component():
    assert [p.components for p in net_points(1, 5)] == [(identity(),)]


def test_nearest_net_point_covering_smoke():
    rng = random.Random(3)
    for m in (2, 4, 8):
        for _ in range(10):
            p = random_point(rng, 2)
            q = nearest_net_point(p, m)
            d = max(sup_dist(a, b) for a, b in zip(p.components, q.components))
            assert d <= F(2, m)


def test_nearest_net_point_three_components():
    rng = random.Random(4)
    p = random_point(rng, 3)
    q = nearest_net_point(p, 4)
    assert mean(q.as_tuple()) == identity()
    d = max(sup_dist(a, b) for a, b in zip(p.components, q.components))
    assert d <= F(2, 4)


# --- rendering


def test_svg_contains_extreme_pair_vertices():
    lo, _ = extreme_pair((F(1, 4), F(3, 4)))
    svg = render_svg(lo)
    # pixel coordinates of (1/4,1/4), (1/2,1/4), (3/4,3/4) on a 512 canvas
    assert "152,408" in svg and "280,408" in svg and "408,152" in svg
    assert svg == render_svg(lo)


def test_svg_kinds():
    rng = random.Random(5)
    t = random_tuple(rng, 2)
    assert "<svg" in render_svg(t)
    from plmonoid import canonicalize, merge_gaps, roelcke_coord

    ct, _ = canonicalize(t)
    assert "<svg" in render_svg(roelcke_coord(ct))
    assert "<rect" in render_svg(merge_gaps([(F(1, 4), F(1, 2))]))


def test_csv_exact_strings():
    lo, _ = extreme_pair((F(1, 4), F(3, 4)))
    out = render_csv(lo)
    assert out.splitlines()[0] == "component,x,y"
    assert "0,1/2,1/4" in out.splitlines()


# --- CLI


def test_cli_sample_deterministic_bytes():
    args = ["sample", "--n", "3", "--count", "4", "--seed", "123"]
    c1, out1 = run_cli(args)
    c2, out2 = run_cli(args)
    assert c1 == c2 == 0 and out1 == out2
    for obj in ser.loads(out1):
        ct = ser.canonical_from_obj(obj)
        assert mean(ct.as_tuple()) == identity()


def test_cli_canon_reparameterization_same_bytes():
    rng = random.Random(14)
    t = random_tuple(rng, 2)
    g = random_homeo(rng)
    moved = MonoTuple(tuple(compose(f, g) for f in t))
    _, out1 = run_cli(["canon", "-"], stdin=ser.dumps(ser.tuple_to_obj(t)))
    _, out2 = run_cli(["canon", "-"], stdin=ser.dumps(ser.tuple_to_obj(moved)))
    canon1 = ser.loads(out1)["canonical"]
    canon2 = ser.loads(out2)["canonical"]
    assert ser.dumps(canon1) == ser.dumps(canon2)


def test_cli_canon_echoes_canonical_input():
    lo, hi = extreme_pair((F(1, 4), F(3, 4)))
    code, out = run_cli(["canon", "-"], stdin=ser.dumps(ser.tuple_to_obj(MonoTuple((lo, hi)))))
    assert code == 0
    obj = ser.loads(out)
    assert obj["mean"] == ser.mono_to_obj(identity())
    got = ser.canonical_from_obj(obj["canonical"])
    assert got.components == (lo, hi)


def test_cli_dist_worked(tmp_path):
    lo, hi = extreme_pair((F(1, 4), F(3, 4)))
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(ser.dumps(ser.tuple_to_obj(MonoTuple((lo, hi)))))
    b.write_text(ser.dumps(ser.tuple_to_obj(MonoTuple((identity(), identity())))))
    code, out = run_cli(["dist", str(a), str(b), "--tol", "1/64"])
    assert code == 0
    obj = ser.loads(out)
    assert ser.parse_frac(obj["lo"]) <= F(1, 4) <= ser.parse_frac(obj["hi"])
    assert obj["canonical_bound"] == "1/4"
    assert obj["decisions"] > 0


def test_cli_dist_length_mismatch(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(ser.dumps(ser.tuple_to_obj(MonoTuple((identity(),)))))
    b.write_text(ser.dumps(ser.tuple_to_obj(MonoTuple((identity(), identity())))))
    code, _ = run_cli(["dist", str(a), str(b)])
    assert code == 2


def test_cli_epsnet():
    code, out = run_cli(["epsnet", "--n", "2", "--net", "2", "--points"])
    assert code == 0
    obj = ser.loads(out)
    assert obj["size"] == 3 and len(obj["points"]) == 3
    code, out = run_cli(["epsnet", "--n", "2", "--net", "16"])
    assert ser.loads(out)["size"] == net_size(2, 16)


def test_cli_epsnet_covering_check():
    code, out = run_cli(
        ["epsnet", "--n", "2", "--net", "4", "--check", "10", "--seed", "7"]
    )
    assert code == 0
    obj = ser.loads(out)
    assert obj["covering_checked"] == 10
    assert obj["covering_radius"] == "1/2"


def test_build_net_container():
    from plmonoid.explorer import build_net

    net = build_net(2, 2)
    assert net.n == 2 and net.resolution == 2
    assert len(net.points) == 3


def test_cli_witness_and_identity_error():
    g = PLHomeo(((0, 0), (F(1, 2), F(3, 4)), (1, 1)))
    code, out = run_cli(["witness", "-"], stdin=ser.dumps(ser.mono_to_obj(g)))
    assert code == 0
    obj = ser.loads(out)
    assert obj["distance"] == "1"
    assert ser.mono_from_obj(obj["witness"]) == PLMono(
        ((0, 0), (F(1, 2), 0), (F(3, 4), 1), (1, 1))
    )
    code, _ = run_cli(["witness", "-"], stdin=ser.dumps(ser.mono_to_obj(identity())))
    assert code == 2


def test_cli_plot_outputs(tmp_path):
    lo, _ = extreme_pair((F(1, 4), F(3, 4)))
    code, svg = run_cli(["plot", "-", "--format", "svg"], stdin=ser.dumps(ser.mono_to_obj(lo)))
    assert code == 0 and svg.startswith("<svg")
    code, csv = run_cli(["plot", "-", "--format", "csv"], stdin=ser.dumps(ser.mono_to_obj(lo)))
    assert code == 0 and csv.startswith("component,x,y")
    out = tmp_path / "plot.svg"
    code, _ = run_cli(["plot", "-", "--out", str(out)], stdin=ser.dumps(ser.mono_to_obj(lo)))
    assert code == 0 and out.read_text() == svg


def test_cli_plot_unknown_kind():
    code, _ = run_cli(["plot", "-"], stdin='{"mystery":1}')
    assert code == 2


def test_cli_malformed_json():
    code, _ = run_cli(["canon", "-"], stdin="{oops")
    assert code == 2


def test_cli_missing_file():
    code, _ = run_cli(["canon", "/nonexistent/path.json"])
    assert code == 2


def test_cli_gaps_command():
    code, out = run_cli(
        ["gaps", "-"], stdin='{"gaps":[["1/10","3/10"],["2/10","5/10"]]}'
    )
    assert code == 0
    obj = ser.loads(out)
    assert obj["gaps"] == [["1/10", "1/2"]]
    assert obj["isolated_points"] == []
    assert obj["collapse"]["breakpoints"][0] == ["0", "0"]
    lo = ser.mono_from_obj(obj["witnesses"][0])
    hi = ser.mono_from_obj(obj["witnesses"][1])
    assert lo(F(3, 10)) == F(1, 10) and hi(F(3, 10)) == F(1, 2)


def test_cli_gaps_flags_isolated_points():
    code, out = run_cli(
        ["gaps", "-"], stdin='{"gaps":[["1/4","1/2"],["1/2","3/4"]]}'
    )
    assert code == 0
    obj = ser.loads(out)
    assert obj["isolated_points"] == ["1/2"]
    assert obj["collapse"] is None and obj["witnesses"] is None


def test_cli_dist_grid_oracle(tmp_path):
    lo, hi = extreme_pair((F(1, 4), F(3, 4)))
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(ser.dumps(ser.tuple_to_obj(MonoTuple((lo, hi)))))
    b.write_text(ser.dumps(ser.tuple_to_obj(MonoTuple((identity(), identity())))))
    code, out = run_cli(["dist", str(a), str(b), "--tol", "1/64", "--grid", "64"])
    assert code == 0
    obj = ser.loads(out)
    upper = ser.parse_frac(obj["oracle_upper"])
    assert ser.parse_frac(obj["lo"]) <= upper <= ser.parse_frac(obj["hi"]) + F(4, 64)


def test_cli_invariant_violation_exit_code(monkeypatch):
    from plmonoid import InvariantViolation
    from plmonoid import explorer

    def boom(args):
        raise InvariantViolation("synthetic failure")

    monkeypatch.setitem(explorer._build_parser.__globals__, "_cmd_epsnet", boom)
    code, _ = run_cli(["epsnet", "--n", "2", "--net", "2"])
    assert code == 3
