"""End-to-end command-line behavior, including the exit-code contract."""

import io
import json

from cubevis.cli import EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, run
from cubevis.cube import VertexSet


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


def test_tables_golden_head():
    code, text = invoke(["tables", "--which", "mutual"])
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "mutual h=1 2 Table 1"
    assert "mutual h=4 9 Table 1" in lines
    assert "mutual h=7 59 Table 1" in lines
    assert "mutual h=8 116-118 Table 1" in lines


def test_bounds_plain_and_json():
    code, text = invoke(["bounds", "--h", "4", "--variant", "dual"])
    assert code == EXIT_OK and text.startswith("exact 8")
    code, text = invoke(["bounds", "--h", "10", "--variant", "outer", "--json"])
    data = json.loads(text)
    assert (data["lower"], data["upper"]) == (252, 320)
    assert data["exact"] is None


def test_verify_round_trip(tmp_path):
    path = tmp_path / "set.txt"
    VertexSet(3, [0, 1, 2, 4]).save(path)
    code, text = invoke(["verify", "--variant", "mutual", "--set", str(path)])
    assert code == EXIT_OK
    assert "ok: 4 vertices" in text


def test_verify_failure_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    # both poles plus all of layer 2: the pole pair is blocked
    from cubevis.cube import layer

    (VertexSet(4, [0, 15]) | layer(4, 0, 2)).save(path)
    code, text = invoke(["verify", "--variant", "mutual", "--set", str(path)])
    assert code == EXIT_FAIL
    assert "fail mutual" in text


def test_verify_relaxed_note(tmp_path):
    path = tmp_path / "set.txt"
    from cubevis.cube import layer

    (VertexSet(4, [0, 15]) | layer(4, 0, 2)).save(path)
    code, text = invoke(
        ["verify", "--variant", "mutual", "--set", str(path), "--max-distance", "2"]
    )
    assert code == EXIT_OK
    assert "non-certificate" in text


def test_verify_missing_file_is_usage_error(tmp_path):
    code, _ = invoke(["verify", "--variant", "mutual", "--set", str(tmp_path / "no")])
    assert code == EXIT_USAGE


def test_construct_then_verify(tmp_path):
    out = tmp_path / "lp.txt"
    code, text = invoke(
        ["construct", "--kind", "layer-pair", "--h", "5", "--i", "1", "--out", str(out)]
    )
    assert code == EXIT_OK and "wrote 10 vertices" in text
    code, _ = invoke(["verify", "--variant", "mutual", "--set", str(out)])
    assert code == EXIT_OK


def test_construct_code_total(tmp_path):
    out = tmp_path / "code.txt"
    code, _ = invoke(["construct", "--kind", "code-total", "--h", "6", "--out", str(out)])
    assert code == EXIT_OK
    code, _ = invoke(["verify", "--variant", "total", "--set", str(out)])
    assert code == EXIT_OK


def test_construct_layer_requires_index(tmp_path):
    code, _ = invoke(
        ["construct", "--kind", "layer", "--h", "4", "--out", str(tmp_path / "x")]
    )
    assert code == EXIT_USAGE


def test_encode_solve_verify_pipeline(tmp_path):
    cnf = tmp_path / "m.cnf"
    out = tmp_path / "m.txt"
    code, _ = invoke(
        ["encode", "--h", "3", "--variant", "dual", "--ell", "4",
         "--format", "dimacs", "--out", str(cnf)]
    )
    assert code == EXIT_OK
    code, text = invoke(["solve", "--cnf", str(cnf), "--out", str(out)])
    assert code == EXIT_OK and text.startswith("s SAT")
    code, _ = invoke(["verify", "--variant", "dual", "--set", str(out)])
    assert code == EXIT_OK


def test_solve_unsat_exit_code(tmp_path):
    cnf = tmp_path / "u.cnf"
    invoke(
        ["encode", "--h", "3", "--variant", "dual", "--ell", "5",
         "--format", "dimacs", "--out", str(cnf)]
    )
    code, text = invoke(["solve", "--cnf", str(cnf)])
    assert code == EXIT_FAIL and "UNSAT" in text


def test_encode_lp_to_stdout():
    code, text = invoke(["encode", "--h", "2", "--variant", "total", "--format", "lp"])
    assert code == EXIT_OK
    assert text.startswith("\\ visibility model: variant=total")
    assert text.rstrip().endswith("End")


def test_encode_dimacs_requires_ell():
    code, _ = invoke(["encode", "--h", "3", "--variant", "mutual", "--format", "dimacs"])
    assert code == EXIT_USAGE


def test_search_json_and_sidecar(tmp_path):
    out = tmp_path / "best.txt"
    code, text = invoke(
        ["search", "--h", "4", "--variant", "outer", "--mode", "exact",
         "--json", "--out", str(out)]
    )
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["size"] == 6 and data["status"] == "optimal"
    assert set(data) == {"h", "variant", "size", "status", "elapsed_ms"}
    assert VertexSet.load(out).h == 4
    meta = (tmp_path / "best.txt.meta").read_text()
    assert "status=optimal" in meta


def test_search_heuristic_exit_unknown():
    code, text = invoke(
        ["search", "--h", "8", "--variant", "dual", "--mode", "heuristic", "--json"]
    )
    assert code == EXIT_UNKNOWN  # a lower bound, not an optimum
    assert json.loads(text)["size"] >= 32


def test_usage_errors():
    assert invoke(["bogus"])[0] == EXIT_USAGE
    assert invoke(["verify", "--variant", "sideways", "--set", "x"])[0] == EXIT_USAGE
    assert invoke([])[0] == EXIT_USAGE
    assert invoke(["--version"])[0] == EXIT_OK
