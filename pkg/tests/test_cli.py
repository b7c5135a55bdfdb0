import json

import pytest

from grouprec import network
from grouprec.cli import main

from . import fixtures


@pytest.fixture
def mixed_file(tmp_path, mixed):
    p = tmp_path / "g.json"
    p.write_text(network.dumps(mixed))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve(capsys, mixed_file):
    code, out, _ = run(capsys, "solve", "--graph", mixed_file)
    assert code == 0 and "u = 1/3" in out
    _, out, _ = run(capsys, "solve", "--graph", mixed_file, "--decimal")
    assert "(0.333333)" in out


def test_recommend(capsys, mixed_file):
    assert run(capsys, "recommend", "--graph", mixed_file, "--group", "u,b")[1] == "0\n"
    out = run(capsys, "recommend", "--graph", mixed_file, "--group", "u,b", "--system", "random-walk-weighted")[1]
    assert out == "-\n"


def test_check_exit_codes(capsys, mixed_file, tmp_path):
    code, out, _ = run(capsys, "check", "--graph", mixed_file, "--group", "u,b")
    lines = [json.loads(x) for x in out.splitlines()]
    assert [x["axiom"] for x in lines] == list(range(1, 10))
    assert code == 1 and lines[8]["verdict"] == "Violated"
    code, out, _ = run(capsys, "check", "--graph", mixed_file, "--group", "u", "--axiom", "1,3,7")
    assert code == 0 and len(out.splitlines()) == 3
    net, group = fixtures.singleton_minus()
    p = tmp_path / "s.json"
    p.write_text(network.dumps(net))
    code, out, _ = run(capsys, "check", "--graph", str(p), "--group", "b", "--system", "singleton-plus", "--axiom", "1")
    assert code == 1 and json.loads(out)["verdict"] == "Violated"


@pytest.mark.parametrize("argv", [
    ["recommend", "--group", "zz"],
    ["check", "--group", "u", "--axiom", "12"],
    ["check", "--group", "u", "--alpha", "x"],
    ["recommend"],
])
def test_input_errors(capsys, mixed_file, argv):
    code, _, err = run(capsys, argv[0], "--graph", mixed_file, *argv[1:])
    assert code == 2 and err.startswith("error:")


def test_missing_graph(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--graph", str(tmp_path / "none.json"))
    assert code == 2 and "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"nodes":[{"id":"a","vote":"+"}],"edges":[{"from":"a","to":"a"}]}')
    code, _, err = run(capsys, "solve", "--graph", str(bad))
    assert code == 2 and "SelfLoop" in err


def test_transform(capsys, tmp_path):
    net, _ = fixtures.two_hop_chain()
    p = tmp_path / "c.json"
    p.write_text(network.dumps(net))
    _, out, _ = run(capsys, "transform", "--graph", str(p), "--kind", "trust-propagation", "--u", "u", "--v", "v")
    assert network.network_from_dict(json.loads(out)["graph"]).successors("u") == {"a": 1}
    _, out, _ = run(capsys, "transform", "--graph", str(p), "--kind", "scale", "--node", "u", "--k", "2")
    assert network.network_from_dict(json.loads(out)["graph"]).multiplicity("u", "v") == 3
    code, _, err = run(capsys, "transform", "--graph", str(p), "--kind", "trust-propagation", "--u", "u", "--v", "a")
    assert code == 2 and "VoterTarget" in err


def test_prop_incl(capsys, tmp_path):
    net, group = fixtures.dominated_member()
    p = tmp_path / "d.json"
    p.write_text(network.dumps(net))
    _, out, _ = run(capsys, "transform", "--graph", str(p), "--kind", "prop-incl", "--group", "a,u", "--node", "u")
    data = json.loads(out)
    assert data["group"] == ["a#1", "b#1"] and data["marked"] == ["b#1"]


def test_reduce(capsys, tmp_path):
    net = network.build_network([("a", "+"), ("u", None), ("b", "-")], [("u", "a"), ("u", "b")])
    p = tmp_path / "r.json"
    p.write_text(network.dumps(net))
    code, out, err = run(capsys, "reduce", "--graph", str(p), "--group", "a,u", "--no-snapshots")
    steps = json.loads(out)
    assert code == 0 and steps[0]["kind"] == "ProportionalInclusiveness"
    assert "plurality +" in err


def test_witness_pipeline(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    assert run(capsys, "witness", "--alpha", "2", "--beta", "5/2", "--r", "1", "--out", str(out_file))[0] == 0
    meta = json.loads(out_file.read_text())["metadata"]
    assert (meta["ell"], meta["k"], meta["s"]) == (2, 4, 8)
    _, out, _ = run(capsys, "witness-verify", "--in", str(out_file))
    assert 4 in json.loads(out)["contradicted"]
    code, _, err = run(capsys, "witness", "--alpha", "1", "--beta", "2", "--r", "1")
    assert code == 2 and "InvalidParams" in err


def test_gen_star_and_dot(capsys, tmp_path):
    _, out, _ = run(capsys, "gen-star", "--n", "1", "--m", "1", "--degrees", "1")
    data = json.loads(out)
    assert data["group"] == ["u_1", "v_1"] and len(data["nodes"]) == 3
    p = tmp_path / "s.json"
    p.write_text(out)
    _, dot, _ = run(capsys, "export-dot", "--graph", str(p), "--group", "u_1,v_1")
    assert dot.startswith("digraph") and '"u_1" -> "t_1_1"' in dot
