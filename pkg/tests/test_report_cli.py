import io
import json

import jsonschema
import pydot
import pytest

from cix import cli, report
from cix.algebra import ClassSpec
from cix.classgraph.bfs import bfs_discs
from cix.classgraph.families import DiscFamilies
from cix.cli import RunConfig, main, run
from cix.errors import InfeasibleWindowError
from cix.classgraph.connectivity import classify_connectivity

ELEMENT = {"type": "string"}
ORBIT = {
    "type": "object",
    "properties": {"rep": ELEMENT, "size": {"type": "integer"}},
    "required": ["rep", "size"],
    "additionalProperties": False,
}
DISC = {
    "type": "object",
    "properties": {"i": {"type": "integer"}, "size": {"type": "integer"}, "orbits": {"type": "array", "items": ORBIT}},
    "required": ["i", "size", "orbits"],
    "additionalProperties": False,
}
TABLE_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer"},
        "type": {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
        "bound": {"type": "integer"},
        "base": ELEMENT,
        "stable": {"type": "boolean"},
        "discs": {"type": "array", "items": DISC},
        "unreached": {"type": "integer"},
    },
    "required": ["n", "type", "bound", "base", "stable", "discs", "unreached"],
    "additionalProperties": False,
}
KEYS = ["n", "type", "bound", "base", "stable", "discs", "unreached"]


def check_json(text):
    data = json.loads(text)
    jsonschema.validate(data, TABLE_SCHEMA)
    assert list(data) == KEYS
    for d in data["discs"]:
        assert list(d) == ["i", "size", "orbits"]
        reps = [o["rep"] for o in d["orbits"]]
        assert reps == sorted(reps)
        assert all(list(o) == ["rep", "size"] for o in d["orbits"])
        assert sum(o["size"] for o in d["orbits"]) == d["size"]
    return data


def parse_dot(text):
    (g,) = pydot.graph_from_dot_data(text)
    nodes = {}
    ranks = {}
    for sub in g.get_subgraphs():
        for nd in sub.get_nodes():
            nodes[nd.get_name()] = nd.get("label").strip('"')
            ranks[nd.get_name()] = sub.get_name()
    edges = {(e.get_source(), e.get_destination()) for e in g.get_edges()}
    return g, nodes, ranks, edges


@pytest.mark.parametrize(
    "spec,bound",
    [(ClassSpec.of(2, 0, 1, 0, 1), 4), (ClassSpec.of(3, 0, 1, 1, 1), 2), (ClassSpec.of(4, 1, 2, 0, 0), 1)],
    ids=str,
)
def test_json_schema_and_order(spec, bound):
    t = bfs_discs(spec, bound)
    data = check_json(report.to_json(t))
    assert data["n"] == spec.n and data["type"] == list(spec.type)
    assert data["unreached"] == t.unreached
    out = io.StringIO()
    assert run(RunConfig("discs", spec, bound, fmt="json"), out) == 0
    assert json.loads(out.getvalue()) == data


def test_json_without_collapse():
    t = bfs_discs(ClassSpec.of(2, 0, 1, 0, 1), 2, collapse=False)
    data = check_json(report.to_json(t))
    assert all(o["size"] == 1 for d in data["discs"] for o in d["orbits"])


def _orbit_set(table):
    return {(d.i, f"{o.rep} x{o.size}") for d in table.discs for o in d.orbits}


@pytest.mark.parametrize("collapse", [True, False])
def test_dot_nodes_are_the_orbits(collapse):
    t = bfs_discs(ClassSpec.of(3, 0, 1, 1, 1), 2, collapse=collapse, check_stability=False)
    g, nodes, ranks, edges = parse_dot(report.export_dot(t))
    assert g.get_type() == "graph"
    got = {(int(ranks[k][4:]), v) for k, v in nodes.items()}
    assert got == _orbit_set(t)
    assert len(nodes) == sum(len(d.orbits) for d in t.discs)
    # every non-base orbit has an edge to the disc before it
    lower = {b for a, b in edges} | {a for a, b in edges}
    assert lower == set(nodes)
    for a, b in edges:
        assert abs(int(a[1:].split("_")[0]) - int(b[1:].split("_")[0])) == 1


def test_singleton_tables():
    t = bfs_discs(ClassSpec.of(3, 0, 0, 0, 3), 2)
    _, nodes, _, edges = parse_dot(report.export_dot(t))
    assert len(nodes) == 1 and not edges
    t = bfs_discs(ClassSpec.of(3, 0, 1, 1, 1), 2, max_depth=0, check_stability=False)
    _, nodes, _, edges = parse_dot(report.export_dot(t))
    assert len(nodes) == 1 and not edges


def test_rank_two_graph_layers():
    t = bfs_discs(ClassSpec.of(2, 0, 1, 0, 1), 2)
    _, nodes, ranks, edges = parse_dot(report.export_dot(t))
    assert sorted(set(ranks.values())) == ["disc0", "disc1", "disc2"]
    assert len(nodes) == len(_orbit_set(t))
    # disc 2 hangs off disc 1 only
    for a, b in edges:
        assert {ranks[a], ranks[b]} in ({"disc0", "disc1"}, {"disc1", "disc2"})


def test_rank_five_graph_shape():
    # same shape as at B=4 with a smaller window
    t = bfs_discs(ClassSpec.of(5, 1, 3, 0, 0), 2, check_stability=False)
    _, nodes, ranks, edges = parse_dot(report.export_dot(t))
    assert sorted(set(ranks.values())) == [f"disc{i}" for i in range(6)]
    assert len(nodes) == sum(len(d.orbits) for d in t.discs)


def test_intra_disc_edges_only_when_flagged():
    t = bfs_discs(ClassSpec.of(4, 0, 2, 1, 1), 2, check_stability=False)
    _, _, ranks, plain = parse_dot(report.export_dot(t))
    assert all(ranks[a] != ranks[b] for a, b in plain)
    _, _, ranks, full = parse_dot(report.export_dot(t, intra_disc=True))
    same = {(a, b) for a, b in full if ranks[a] == ranks[b]}
    assert same and full - same == plain


def test_text_table():
    t = bfs_discs(ClassSpec.of(2, 0, 1, 0, 1), 4)
    text = report.render_table_text(t)
    assert text.startswith("a = -0(1) @2")
    assert "disc 2" in text and "diameter 2" in text and "stable=yes" in text
    t = bfs_discs(ClassSpec.of(4, 1, 2, 0, 0), 1)
    assert "unreached" in report.render_table_text(t)


def test_verdict_dict():
    d = report.verdict_to_dict(classify_connectivity(ClassSpec.of(5, 0, 2, 2, 1)))
    assert d["verdict"] == "connected" and d["diameter"]["hi"] == 6


# --- command line ----------------------------------------------------------


def test_cli_classify(capsys):
    assert main(["classify", "--n", "4", "--type", "1,2,0,0"]) == 0
    assert capsys.readouterr().out.strip() == "disconnected (case iv)"
    assert main(["classify", "--n", "5", "--type", "1,3,0,0", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "connected"


def test_cli_discs(capsys):
    assert main(["discs", "--n", "2", "--type", "0,1,0,1", "--bound", "4", "--format", "json"]) == 0
    data = check_json(capsys.readouterr().out)
    assert len(data["discs"]) == 3 and data["stable"]
    assert main(["discs", "--n", "2", "--type", "0,1,0,1", "--bound", "4"]) == 0
    assert "diameter 2" in capsys.readouterr().out


def test_cli_graph(capsys):
    assert main(["graph", "--n", "2", "--type", "0,1,0,1", "--bound", "2"]) == 0
    parse_dot(capsys.readouterr().out)


def test_cli_verify_passes(capsys):
    assert main(["verify", "--n", "3", "--type", "0,1,1,1", "--bound", "4"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("pass, diameter 4") and "FAIL" not in out
    assert main(["verify", "--n", "4", "--type", "1,2,0,0", "--bound", "2"]) == 0


def test_cli_verify_fails_iff_a_claim_fails(monkeypatch, capsys):
    spec = ClassSpec.of(2, 0, 1, 0, 1)
    wrong = DiscFamilies(spec, (("-L(1)",), ("REST",)))
    monkeypatch.setitem(cli.KNOWN, spec, wrong)
    out = io.StringIO()
    assert run(RunConfig("verify", spec, 4), out) == cli.EXIT_MISMATCH
    assert "FAIL" in out.getvalue()
    out = io.StringIO()
    assert run(RunConfig("verify", spec, 4, fmt="json"), out) == cli.EXIT_MISMATCH
    data = json.loads(out.getvalue())
    assert data["pass"] is False and not all(c["pass"] for c in data["claims"])
    # an unstable window is a failed claim
    assert run(RunConfig("verify", ClassSpec.of(3, 0, 1, 1, 1), 1), io.StringIO()) == cli.EXIT_MISMATCH


@pytest.mark.parametrize(
    "argv,code",
    [
        (["discs", "--n", "3", "--type", "0,1,1,1", "--bound", "0"], 3),
        (["discs", "--n", "3", "--type", "0,1,1", "--bound", "2"], 2),
        (["discs", "--n", "3", "--type", "0,1,1,2"], 2),
        (["classify", "--n", "3", "--type", "0,1,1,1", "--format", "dot"], 2),
        (["frobnicate"], 2),
        (["discs", "--n", "8", "--type", "1,3,3,0", "--bound", "5"], 2),
    ],
)
def test_cli_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().err


def test_run_config():
    with pytest.raises(InfeasibleWindowError):
        RunConfig("discs", ClassSpec.of(3, 0, 1, 1, 1), 0)
    RunConfig("classify", ClassSpec.of(3, 0, 1, 1, 1), 0)
    assert RunConfig("graph", ClassSpec.of(2, 0, 1, 0, 1)).output_format == "dot"
    assert RunConfig("discs", ClassSpec.of(2, 0, 1, 0, 1)).output_format == "text"
