import io

import pytest

from linkless.cli import main, read_graph
from linkless.graph import complete, empty, from_graph6, random_graph, to_edge_list
from linkless.harness import HuntResult, PaperReport, SectionResult, load_golden
from linkless.utils import EXIT_FAILED, EXIT_IL, EXIT_NIL, EXIT_USAGE

K6 = "E~~w"
K7 = "F~~~w"
EMPTY_13 = "L" + "?" * 13


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_il_check_k6(capsys):
    code, out, _ = run(capsys, "il-check", K6)
    assert code == EXIT_IL
    assert out.splitlines()[0] == "IL (witness: K6)"
    assert out.splitlines()[1] == K6


def test_il_check_nil(capsys):
    code, out, _ = run(capsys, "il-check", EMPTY_13)
    assert code == EXIT_NIL
    assert out.startswith("NIL")


def test_pair_on_empty_13(capsys):
    code, out, _ = run(capsys, "pair", EMPTY_13)
    assert code == EXIT_NIL
    assert out.strip() == "cG IL via edge-bound"


@pytest.mark.parametrize("command", ["il-check", "planar", "complement", "pair", "edges"])
@pytest.mark.parametrize("text, offset", [("A ", 1), ("A", 1), ("D~{x", 3)])
def test_malformed_graph6_exits_2(capsys, command, text, offset):
    code, out, err = run(capsys, command, text)
    assert code == EXIT_USAGE
    assert out == ""
    assert f"offset {offset}" in err
    assert len(err.strip().splitlines()) == 1


def test_planar(capsys):
    code, out, _ = run(capsys, "planar", "D~{")
    assert code == EXIT_NIL
    assert out.splitlines()[0] == "nonplanar (witness: K5)"
    assert run(capsys, "planar", "C~")[1].strip() == "planar"


def test_complement_roundtrip(capsys, rng):
    g = random_graph(11, rng)
    _, once, _ = run(capsys, "complement", str(g))
    _, twice, _ = run(capsys, "complement", once.strip())
    assert from_graph6(twice.strip()) == g


def test_contract(capsys):
    code, out, _ = run(capsys, "contract", K7, "0", "1")
    assert code == EXIT_NIL
    assert out.strip() == K6


def test_contract_non_edge_exits_2(capsys):
    code, _, err = run(capsys, "contract", EMPTY_13, "0", "1")
    assert code == EXIT_USAGE
    assert "not an edge" in err


def test_minor(capsys):
    code, out, _ = run(capsys, "minor", K7, "D~{")
    assert code == EXIT_NIL
    assert out.splitlines()[0] == "minor"
    assert run(capsys, "minor", "D~{", K6)[1].strip() == "not a minor"


def test_family(capsys):
    code, out, _ = run(capsys, "family")
    assert code == EXIT_NIL
    names = [line.split()[0] for line in out.splitlines()]
    assert names == ["K6", "G7", "K331", "G8", "K44_minus_e", "G9", "PETERSEN"]


def test_verify_cert(capsys, tmp_path):
    path = tmp_path / "paley_k7.cert"
    path.write_text(load_golden("paley_k7.cert"))
    assert run(capsys, "verify-cert", str(path))[:2] == (EXIT_NIL, "valid\n")
    broken = tmp_path / "broken.cert"
    broken.write_text("Bw\nB?\n0\n1\n2\n")
    assert run(capsys, "verify-cert", str(broken))[:2] == (EXIT_FAILED, "invalid\n")
    garbage = tmp_path / "garbage.cert"
    garbage.write_text("Bw\n")
    assert run(capsys, "verify-cert", str(garbage))[0] == EXIT_USAGE


def test_edges_and_edge_list_input(capsys, tmp_path):
    code, out, _ = run(capsys, "edges", K6)
    assert code == EXIT_NIL
    assert out == to_edge_list(complete(6))
    path = tmp_path / "k6.txt"
    path.write_text(out)
    assert run(capsys, "complement", str(path))[1].strip() == str(empty(6))


def test_g6_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "paley.g6"
    path.write_text(load_golden("paley13.g6"))
    assert read_graph(str(path)).n == 13
    monkeypatch.setattr("sys.stdin", io.StringIO(">>graph6<<" + K7 + "\n"))
    assert read_graph("-") == complete(7)


def test_hunt(capsys, mocker):
    found = from_graph6(load_golden("figure1_core.g6").strip())
    hunt = mocker.patch("linkless.cli.hunt_bicomplementary_nil", return_value=HuntResult((found,), 5))
    code, out, _ = run(capsys, "hunt", "10", "--budget", "5", "--seed", "3", "--restarts", "2")
    assert code == EXIT_NIL
    assert out.splitlines() == [str(found)]
    hunt.assert_called_once_with(10, 5, 3, 2)


def test_non_ascii_file_exits_2(capsys, tmp_path):
    path = tmp_path / "graph.g6"
    path.write_bytes(b"D~\xc3\xa9\n")
    code, out, err = run(capsys, "il-check", str(path))
    assert code == EXIT_USAGE
    assert out == ""
    assert "offset 2" in err
    assert len(err.strip().splitlines()) == 1


def test_hunt_inconclusive(capsys):
    code, out, _ = run(capsys, "hunt", "12", "--budget", "0")
    assert code == EXIT_NIL
    assert out.startswith("inconclusive")


def test_hunt_bad_size_exits_2(capsys):
    assert run(capsys, "hunt", "14")[0] == EXIT_USAGE


@pytest.mark.parametrize("passed, expected", [(True, EXIT_NIL), (False, EXIT_FAILED)])
def test_verify_paper_exit_code(capsys, mocker, passed, expected):
    report = PaperReport([SectionResult("paley", passed, "detail")])
    verify = mocker.patch("linkless.cli.verify_paper", return_value=report)
    code, out, _ = run(capsys, "verify-paper", "--trials", "5", "--seed", "3")
    assert code == expected
    assert out.startswith("PASS" if passed else "FAIL")
    config = verify.call_args.args[0]
    assert (config.trials, config.seed) == (5, 3)


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["il-check"], ["il-check", K6, "--bogus"]])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == EXIT_USAGE


@pytest.mark.slow
def test_verify_paper_full_run(capsys):
    code, out, _ = run(capsys, "verify-paper", "--trials", "1000", "--seed", "7")
    assert code == EXIT_NIL, out
