""" Tests for the command-line surface """

import json

import pytest

import main


def _run(capsys, *argv):
    code = main.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_equivalent_automata(capsys, example_file):
    code, out, _ = _run(capsys, "equiv", example_file("astar_bstar_gfa"), example_file("astar_bstar_dgfa"))
    assert code == 0
    assert out.strip() == "equivalent"


def test_inequivalent_inputs_print_a_counterexample(capsys, example_file):
    code, out, _ = _run(capsys, "equiv", example_file("astar_dgfa"), example_file("aplus_dgfa"))
    assert code == 1
    assert out.strip() == "inequivalent: counterexample <eps>"


def test_language_enumeration(capsys, example_file):
    code, out, _ = _run(capsys, "lang", example_file("aplus_bplus_grammar"), "--max-len", "3")
    assert code == 0
    assert out.splitlines() == ["ab", "aab", "abb"]


def test_isomorphism_prints_the_bijection(capsys, example_file):
    code, out, _ = _run(capsys, "iso", example_file("denotation_process"), example_file("astar_bstar_gfa"))
    assert code == 0
    assert out.splitlines() == ["1 -> r0", "C -> q0", "D -> q1"]


def test_bisimilarity(capsys, example_file):
    code, out, _ = _run(capsys, "bisim", example_file("astar_bstar_gfa"), example_file("astar_bstar_dgfa"))
    assert code == 1
    assert out.strip() == "not bisimilar"


def test_prove_then_check(capsys, example_file, tmp_path):
    target = str(tmp_path / "aplus.wproof")
    code, out, _ = _run(capsys, "prove", example_file("aplus_process_one"), example_file("aplus_process_two"),
                        "-o", target)
    assert code == 0
    assert out.startswith(f"proof written to {target}")
    code, out, _ = _run(capsys, "check", target)
    assert code == 0
    assert out.splitlines()[0] == "valid"
    assert out.splitlines()[1].startswith("axioms: ")


def test_prove_automata_with_overlapping_state_names(capsys, example_file, tmp_path):
    target = str(tmp_path / "astar_bstar.wproof")
    code, _, _ = _run(capsys, "prove", example_file("astar_bstar_gfa"), example_file("astar_bstar_dgfa"),
                      "-o", target)
    assert code == 0
    code, out, _ = _run(capsys, "check", target)
    assert code == 0
    assert out.splitlines()[0] == "valid"


def test_tampered_certificate_fails_the_check(capsys, example_file, tmp_path):
    target = tmp_path / "sink.wproof"
    _run(capsys, "prove", example_file("sink_process"), example_file("zero_process"), "-o", str(target))
    record = json.loads(target.read_text(encoding="utf-8"))
    record["goal"] = ["E", "eps.1"]
    target.write_text(json.dumps(record), encoding="utf-8")
    code, out, _ = _run(capsys, "check", str(target))
    assert code == 1
    assert out.startswith("invalid")


def test_prove_reports_inequivalence(capsys, example_file):
    code, out, _ = _run(capsys, "prove", example_file("aplus_process_one"), example_file("sink_process"))
    assert code == 1
    assert out.startswith("inequivalent")


def test_compile_automaton_to_term(capsys, example_file):
    code, out, _ = _run(capsys, "compile", "a2t", example_file("astar_bstar_gfa"))
    assert code == 0
    assert out == "C0 := a.C0 + b.C1 + eps.1;\nC1 := b.C1 + eps.1;\nmain C0;\n"


def test_semantics_as_dot(capsys, example_file):
    code, out, _ = _run(capsys, "semantics", example_file("denotation_process"), "--dot")
    assert code == 0
    assert out.startswith("digraph gfa {")


@pytest.mark.parametrize("jobs", ["1", "2"])
def test_batch_equivalence(capsys, example_file, tmp_path, jobs):
    a, b = example_file("astar_bstar_gfa"), example_file("astar_bstar_dgfa")
    c = example_file("aplus_dgfa")
    listing = tmp_path / "pairs.txt"
    listing.write_text(f"# pairs\n{a} {b}\n{a} {c}\n", encoding="utf-8")
    code, out, _ = _run(capsys, "equiv", "--batch", str(listing), "--jobs", jobs)
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == f"{a} {b}: equivalent"
    assert lines[1].startswith(f"{a} {c}: inequivalent")


def test_sample_is_reproducible(capsys):
    _, first, _ = _run(capsys, "sample", "--seed", "7", "--states", "3")
    _, second, _ = _run(capsys, "sample", "--seed", "7", "--states", "3")
    assert first == second
    assert json.loads(first)["initial"] == "q0"


def test_input_errors_exit_with_two(capsys, tmp_path):
    bad = tmp_path / "bad.sfm"
    bad.write_text("C := eps.C; main C;", encoding="utf-8")
    code, out, err = _run(capsys, "parse", str(bad))
    assert code == 2
    assert err.startswith("error:")


def test_unknown_extension_needs_as(capsys, tmp_path):
    path = tmp_path / "input.txt"
    path.write_text("main 0;", encoding="utf-8")
    assert _run(capsys, "parse", str(path))[0] == 2
    code, out, _ = _run(capsys, "parse", "--as", "term", str(path))
    assert code == 0
    assert out == "main 0;\n"
