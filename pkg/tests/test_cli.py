"""Command-line interface: exit codes, determinism, output artifacts."""

import json

import pytest
from gridguards.cli import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VIOLATION,
    main,
)


@pytest.fixture()
def poly_file(tmp_path):
    path = tmp_path / "square.txt"
    path.write_text("1 1\n9 1\n9 9\n1 9\n")
    return str(path)


def run_to_file(tmp_path, argv):
    out = tmp_path / "out.json"
    code = main(argv + ["-o", str(out)])
    return code, out.read_text() if out.exists() else None


def test_solve_square(tmp_path, poly_file):
    code, text = run_to_file(tmp_path, ["solve", poly_file])
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["certified"] is True
    assert len(doc["guards"]) == 1
    assert doc["strategy"] == "FullCellSample"


def test_solve_byte_identical_across_runs(tmp_path, poly_file):
    _, a = run_to_file(tmp_path, ["solve", poly_file, "--seed", "5"])
    _, b = run_to_file(tmp_path, ["solve", poly_file, "--seed", "5"])
    assert a == b


def test_solve_rejects_malformed_input(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\nnot a vertex\n")
    assert main(["solve", str(bad)]) == EXIT_INPUT


def test_solve_missing_file():
    assert main(["solve", "/nonexistent/poly.txt"]) == EXIT_INPUT


def test_solve_theory_mode_rejects_full_grid(poly_file):
    code = main(["solve", poly_file, "--mode", "theory",
                 "--strategy", "FullCellSample"])
    assert code == EXIT_INPUT


def test_solve_theory_mode_defaults_to_adaptive(tmp_path, poly_file):
    code, text = run_to_file(tmp_path,
                             ["solve", poly_file, "--mode", "theory"])
    assert code == EXIT_OK
    assert json.loads(text)["strategy"] == "AdaptiveRefine"


def test_solve_round_budget(tmp_path):
    comb = tmp_path / "comb.txt"
    assert main(["generate", "--shape", "comb", "--prongs", "3",
                 "-o", str(comb)]) == EXIT_OK
    assert main(["solve", str(comb), "--max-rounds", "1"]) == EXIT_BUDGET


def test_solve_writes_svg(tmp_path, poly_file):
    svg = tmp_path / "scene.svg"
    code = main(["solve", poly_file, "--svg", str(svg),
                 "-o", str(tmp_path / "g.json")])
    assert code == EXIT_OK
    assert svg.read_text().startswith('<?xml')


def test_verify_lemmas_fixture_ok(tmp_path):
    code, text = run_to_file(
        tmp_path, ["verify-lemmas", "--fixture", "channel",
                   "--check", "distances"])
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc[0]["lemma_id"] == "distances"
    assert doc[0]["status"] == "Verified"


def test_verify_lemmas_blocking_fixture(tmp_path):
    code, text = run_to_file(
        tmp_path, ["verify-lemmas", "--fixture", "blocking",
                   "--check", "distances"])
    assert code == EXIT_OK


def test_verify_lemmas_bad_region_probe_violates(tmp_path):
    code, text = run_to_file(
        tmp_path, ["verify-lemmas", "--fixture", "deshpande",
                   "--check", "local-visibility", "--at", "bad-region"])
    assert code == EXIT_VIOLATION
    doc = json.loads(text)
    assert doc[0]["lemma_id"] == "local_visibility"
    assert doc[0]["status"] == "Violated"


def test_verify_lemmas_needs_input():
    assert main(["verify-lemmas", "--check", "distances"]) == EXIT_INPUT


def test_verify_lemmas_determinism(tmp_path):
    argv = ["verify-lemmas", "--fixture", "channel", "--check",
            "grid-outside-bad", "--samples", "10", "--seed", "3"]
    _, a = run_to_file(tmp_path, argv)
    _, b = run_to_file(tmp_path, argv)
    assert a == b
    assert json.loads(a)[0]["status"] == "Verified"


def test_analyze_channel(tmp_path):
    poly = tmp_path / "channel.txt"
    assert main(["generate", "--shape", "channel", "-o", str(poly)]) == EXIT_OK
    code, text = run_to_file(tmp_path, ["analyze", str(poly)])
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["n"] == 10
    assert doc["opposite_pairs"] == [[2, 7]]
    assert doc["bad_region_triples"] == []
    # the straight bottom wall produces collinear vertex triples
    assert [0, 1, 3] in doc["general_position"]["collinear_triples"]


def test_analyze_svg_output(tmp_path):
    poly = tmp_path / "channel.txt"
    main(["generate", "--shape", "channel", "-o", str(poly)])
    svg = tmp_path / "bad.svg"
    code = main(["analyze", str(poly), "--svg", str(svg),
                 "-o", str(tmp_path / "a.json")])
    assert code == EXIT_OK
    assert "</svg>" in svg.read_text()


def test_generate_comb_roundtrip(tmp_path):
    out = tmp_path / "comb.txt"
    assert main(["generate", "--shape", "comb", "--prongs", "3",
                 "-o", str(out)]) == EXIT_OK
    from gridguards.persistence import read_polygon
    assert read_polygon(str(out)).n == 12


def test_generate_json_emit(tmp_path):
    out = tmp_path / "c.json"
    assert main(["generate", "--shape", "channel", "--emit", "json",
                 "-o", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 10


def test_generate_random_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert main(["generate", "--shape", "random", "--n", "8",
                     "--M", "30", "--seed", "4", "-o", str(path)]) == EXIT_OK
    assert a.read_text() == b.read_text()


def test_generate_rejects_tiny_n():
    assert main(["generate", "--shape", "random", "--n", "2"]) == EXIT_INPUT


def test_gg_threads_validated(monkeypatch, tmp_path, poly_file):
    monkeypatch.setenv("GG_THREADS", "garbage")
    code, _ = run_to_file(tmp_path, ["solve", poly_file])
    assert code == EXIT_OK
    monkeypatch.setenv("GG_THREADS", "4")
    code, _ = run_to_file(tmp_path, ["solve", poly_file])
    assert code == EXIT_OK
