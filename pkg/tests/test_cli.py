import json

import pytest

from matchforest.cli import main
from matchforest.textformat import parse_graph

CHAIN = "V 3\nE 0 1\nA 1 2\n"
DAGGER = "V 5\nE 0 1\nE 3 4\nA 2 3\nA 2 4\n"
TWO_GADGET = "V 6\nE 0 1\nE 0 2\nE 1 3\nE 4 5\nE 4 5\nA 0 2\nA 0 3\n"
DAGGER_SPLIT = "P 0 E 0\nP 0 E 1\nP 1 A 0\nP 1 A 1\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_validate(capsys, write):
    code, out, _ = run(capsys, "validate", write(CHAIN), "--kind", "mec")
    assert code == 0 and out.startswith("mec: true")
    data = run_json(capsys, "validate", write(DAGGER + DAGGER_SPLIT), "--kind", "mf")
    assert data["valid"] and len(data["sets"]) == 2


def test_enumerate(capsys, write):
    data = run_json(capsys, "enumerate", write("V 2\nE 0 1\n"), "--kind", "mf")
    assert data["count"] == 2
    data = run_json(capsys, "enumerate", write(DAGGER), "--kind", "mf", "--k", "2")
    assert data["count"] == 4


def test_gallai(capsys, write):
    code, out, _ = run(capsys, "gallai", write(CHAIN))
    assert code == 0 and "nu = 1.5" in out and "rho = 1.5" in out
    data = run_json(capsys, "gallai", write(CHAIN))
    assert data["nu"] == 1.5 and data["rho"] == 1.5 and data["identity"]


def test_min_cover(capsys, write):
    data = run_json(capsys, "min-cover", write(CHAIN))
    assert data["mix_size"] == 1.5 and not data["weighted"]
    data = run_json(capsys, "min-cover", write(CHAIN + "W E 0 2\nW A 0 3\n"))
    assert data["weighted"] and data["weight"] == 5


def test_equalize_mf(capsys, write):
    path = write(DAGGER + DAGGER_SPLIT)
    data = run_json(capsys, "equalize-mf", path, "--k", "2", "--mode", "edge", "--partition", path)
    assert data["gaps"] == {"edge": 0, "arc": 2, "total": 2} and data["within_bounds"]
    code, out, _ = run(capsys, "equalize-mf", path, "--mode", "total", "--partition", path)
    assert code == 0 and "total=0" in out


def test_equalize_mf_dot(capsys, write):
    path = write(DAGGER + DAGGER_SPLIT)
    code, out, _ = run(capsys, "equalize-mf", path, "--partition", path, "--dot")
    assert code == 0 and out.startswith("digraph")


def test_search_initial_warning(capsys, write):
    code, out, err = run(capsys, "equalize-mec", write(TWO_GADGET),
                         "--k", "2", "--search-initial", "--json")
    assert code == 0 and "warning" in err
    assert json.loads(out)["within_bounds"]


def test_equalize_bibranching(capsys, write):
    text = "V 3\nA 0 1\nA 1 2\nA 0 2\nA 2 1\nP 0 A 0\nP 0 A 1\nP 1 A 2\nP 1 A 3\n"
    path = write(text)
    data = run_json(capsys, "equalize-bibranching", path, "--v1", "0", "--partition", path)
    assert data["within_bounds"]


def test_pack(capsys, write):
    path = write("V 2\nE 0 1\nE 0 1\nA 0 1\n")
    data = run_json(capsys, "pack-covering-forests", path, "--k", "2", "--search-initial")
    assert data["within_bounds"] and len(data["parts"]) == 2


def test_check_polytope(capsys, write):
    path = write("V 2\nA 0 1\nA 1 0\n")
    code, out, _ = run(capsys, "check-polytope", path, "--kind", "mf", "--vector", "1,1")
    assert code == 1 and "violated" in out
    code, out, _ = run(capsys, "check-polytope", path, "--kind", "mf", "--vector", "1/2,1/2")
    assert code == 0 and out.strip() == "satisfied"
    data = run_json(capsys, "check-polytope", path, "--kind", "pmf")
    assert data["hull_matches"]


def test_reduce(capsys, write):
    code, out, _ = run(capsys, "reduce", write(CHAIN))
    assert code == 0
    assert parse_graph(out).graph.num_vertices == 6


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "3", "--vertices", "4")
    assert code == 0 and parse_graph(out).graph.num_vertices == 4
    code, out, _ = run(capsys, "gen", "--seed", "3", "--planted", "mf", "--k", "2")
    assert code == 0 and len(parse_graph(out).parts()) == 2


@pytest.mark.parametrize("argv, text, expected", [
    (["validate", "{}", "--kind", "mf"], "V 2\nA 0 0\n", 2),
    (["equalize-mf", "{}"], CHAIN, 2),
    (["equalize-mec", "{}", "--k", "2", "--search-initial"], CHAIN, 3),
    (["enumerate", "{}", "--kind", "mf"], "V 2\n" + "E 0 1\n" * 21, 4),
])
def test_exit_codes(capsys, write, argv, text, expected):
    path = write(text)
    code, _, err = run(capsys, *[a.format(path) for a in argv])
    assert code == expected
    assert json.loads(err.strip().splitlines()[-1])["exit_code"] == expected


def test_missing_file(capsys):
    code, _, err = run(capsys, "gallai", "/nonexistent/file")
    assert code == 2 and json.loads(err)["error"] == "UsageError"


def test_bad_arguments(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
