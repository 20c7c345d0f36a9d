"""CLI contract: subcommands, exit codes, determinism, JSON documents."""
import json

from starcone.cli import build_parser, job_from_args, main, run


def run_argv(argv):
    parser = build_parser()
    job = job_from_args(parser.parse_args(argv))
    return run(job)


# ---------------------------------------------------------- spec examples

def test_fiber_quadratic_betti():
    code, text = run_argv(
        ["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2", "--jprime", "y^2", "--betti"]
    )
    assert code == 0
    assert "ranks: 1 3 2" in text
    assert "minimal: yes" in text


def test_star_two_by_two_verify():
    code, text = run_argv(["star", "--vars-a", "x1,x2", "--vars-b", "y1,y2", "--verify"])
    assert code == 0
    assert "ranks: 1 4 4 1" in text
    assert "exact" in text


def test_hypothesis_gate_names_violation():
    code, text = run_argv(["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "x"])
    assert code == 1
    assert "I'" in text and "<x>^2" in text


# ------------------------------------------------------------- exit codes

def test_parse_error_is_usage():
    code, text = run_argv(["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "q^2"])
    assert code == 2
    code, text = run_argv(["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2 + y"])
    assert code == 2


def test_composite_prime_rejected():
    code, text = run_argv(
        ["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2", "--prime", "32001"]
    )
    assert code == 2
    assert "not prime" in text


def test_missing_block_is_usage():
    code, text = run_argv(["fiber", "--vars-a", "x", "--iprime", "x^2"])
    assert code == 2


def test_tor_violation_exit_one():
    code, text = run_argv(
        [
            "fiber",
            "--vars-a", "x",
            "--vars-b", "y",
            "--ideal-i", "x",
            "--ideal-j", "x*y",
            "--iprime", "x^2",
            "--jprime", "x^2*y",
        ]
    )
    assert code == 1
    assert "Tor" in text or "tor" in text


# ------------------------------------------------------------ determinism

def test_byte_identical_output():
    argv = [
        "fiber", "--vars-a", "x1,x2", "--vars-b", "y", "--iprime", "x1*x2", "--jprime", "y^3",
        "--betti", "--json",
    ]
    a = run_argv(argv)
    b = run_argv(argv)
    assert a == b
    doc = json.loads(a[1])
    assert doc["certificate"]["minimal"] is True


def test_json_document_shape():
    code, text = run_argv(
        ["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2", "--jprime", "y^2", "--json"]
    )
    doc = json.loads(text)
    assert doc["ranks"] == [1, 3, 2]
    assert doc["certificate"]["constrained_lifts"] is True
    assert set(doc["certificate"]["tor"]) == {"(I,J)", "(I',J)", "(I,J')"}
    assert doc["complex"]["modules"]["0"] == [0]


# ---------------------------------------------------------- other commands

def test_betti_command_match():
    code, text = run_argv(
        ["betti", "--vars-a", "x1,x2", "--vars-b", "y", "--iprime", "x1^2,x2^2", "--jprime", "y^2"]
    )
    assert code == 0
    assert "verdict: match" in text


def test_betti_rejects_explicit_ideals():
    code, text = run_argv(
        ["betti", "--vars-a", "x", "--vars-b", "y", "--ideal-i", "x^2", "--iprime", "x^4"]
    )
    assert code == 2


def test_poincare_command():
    code, text = run_argv(
        ["poincare", "--vars-a", "x", "--vars-b", "y1,y2", "--iprime", "x^2", "--jprime", "y1*y2"]
    )
    assert code == 0
    assert "identity 1 residual: 0" in text
    assert "identity 2 residual: 0" in text


def test_export_verify_roundtrip(tmp_path):
    path = tmp_path / "complex.json"
    parser = build_parser()
    args = parser.parse_args(
        ["export", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2", "--jprime", "y^2",
         "--out", str(path)]
    )
    code, text = run(job_from_args(args))
    path.write_text(text)
    code2, text2 = run_argv(
        ["verify", "--in", str(path), "--against", "x^2,x*y,y^2", "--degree-bound", "6"]
    )
    assert code2 == 0
    assert "verdict: exact" in text2


def test_verify_detects_corruption(tmp_path):
    code, text = run_argv(
        ["export", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2", "--jprime", "y^2"]
    )
    doc = json.loads(text)
    # swap one first-syzygy entry for a wrong same-degree monomial
    d2 = doc["differentials"]["2"]
    assert d2[0][0] == "x"
    d2[0][0] = "y"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code2, text2 = run_argv(["verify", "--in", str(path)])
    assert code2 == 3
    assert "FAILED" in text2


def test_verify_build_mode():
    code, text = run_argv(
        ["verify", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^3", "--jprime", "y^2"]
    )
    assert code == 0
    assert "verdict: exact" in text


def test_export_what_star():
    code, text = run_argv(
        ["export", "--vars-a", "x1,x2", "--vars-b", "y1,y2", "--what", "star"]
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["modules"]["1"] == [2, 2, 2, 2]


def test_main_writes_out_file(tmp_path, capsys):
    path = tmp_path / "out.txt"
    rc = main(
        ["fiber", "--vars-a", "x", "--vars-b", "y", "--iprime", "x^2", "--jprime", "y^2",
         "--out", str(path)]
    )
    assert rc == 0
    assert "ranks: 1 3 2" in path.read_text()
    assert capsys.readouterr().out == ""


def test_unconstrained_flag_allows_degenerate():
    code, text = run_argv(
        ["fiber", "--vars-a", "x", "--vars-b", "y", "--ideal-i", "x", "--ideal-j", "y",
         "--iprime", "x", "--jprime", "y", "--no-constrained-lift"]
    )
    assert code == 0
    assert "constrained lifts: no" in text
    assert "minimal: no" in text
