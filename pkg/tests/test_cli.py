import json

import pytest

from skewrank.cli import main
from skewrank.formats import write_graph
from skewrank.graph import Graph, complete_graph, cycle_graph, path_graph


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.txt"):
        path = tmp_path / name
        write_graph(g, path)
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_mr_generic_and_finite(capsys, graph_file):
    f = graph_file(cycle_graph(4))
    code, obj, err = run(capsys, "mr", f)
    assert code == 0 and obj["exact"] == 2 and "generic" in err
    code, obj, _ = run(capsys, "mr", f, "--field", "5")
    assert code == 0 and "exact" not in obj and (obj["lower"], obj["upper"]) == (2, 4)
    code, obj, _ = run(capsys, "mr", f, "--field", "5", "--oracle")
    assert obj["exact"] == 2 and obj["certificate"]["rank"] == 2


def test_bounds_zf_match(capsys, graph_file):
    f = graph_file(path_graph(5))
    assert run(capsys, "bounds", f)[1]["exact"] == 4
    code, obj, _ = run(capsys, "zf", f)
    assert code == 0 and obj == {"zero_forcing_number": 1, "witness": [0]}
    code, obj, _ = run(capsys, "match", f)
    assert obj["matching_number"] == 2 and len(obj["matching"]) == 2


def test_certify(capsys, graph_file):
    f = graph_file(complete_graph(4))
    code, obj, _ = run(capsys, "certify", f, "--target", "2", "--p", "5")
    assert code == 0 and obj["rank"] == 2 and obj["verified"]
    assert len(obj["entries"]) == 4
    code, obj, _ = run(capsys, "certify", graph_file(complete_graph(2), "k2"),
                       "--target", "0", "--p", "5")
    assert code == 1 and obj["achievable"] is False and obj["reason"] == "below-minimum"


def test_power_path(capsys):
    code, obj, _ = run(capsys, "power-path", "--n", "7", "--k", "2")
    assert code == 0 and obj["mr"] == 6
    assert run(capsys, "power-path", "--n", "4", "--k", "5")[1]["mr"] == 2
    assert run(capsys, "power-path", "--n", "1", "--k", "1")[0] == 2


def test_verify(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, obj, err = run(capsys, "verify", "lem-zf", "--nmax", "5", "--primes", "5",
                         "--json", str(out))
    assert code == 0 and obj["graphs_checked"] == 31 and "PASS" in err
    assert json.loads(out.read_text()) == obj


def test_usage_errors(capsys, graph_file, tmp_path):
    assert run(capsys, "verify", "no-such-campaign")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["mr"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n0 1\n")
    code, _, err = run(capsys, "mr", str(bad))
    assert code == 2 and "duplicate" in err
    assert run(capsys, "mr", str(tmp_path / "missing.txt"))[0] == 2
    f = graph_file(Graph(2, frozenset({(0, 1)})))
    assert run(capsys, "mr", f, "--field", "4")[0] == 2
    assert run(capsys, "mr", f, "--oracle")[0] == 2
