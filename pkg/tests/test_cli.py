"""The slw command-line interface: subcommands, exit codes, determinism."""

import pytest

from slw.cli import main

from conftest import make_fixture_nets
from slw import corpus

N1_TEXT = make_fixture_nets()["N1"].to_text()


@pytest.fixture()
def files(tmp_path):
    def write(name, content):
        p = tmp_path / name
        p.write_text(content)
        return str(p)
    return write, tmp_path


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "slw 0.1.0" in capsys.readouterr().out


def test_verify_exit_codes(files, capsys):
    write, _ = files
    net = write("n1.net", N1_TEXT)
    good = write("total.mso", corpus.TOTAL_ORDER)
    assert main(["verify", "--net", net, "--mso", good, "--c", "1", "--sem", "ex"]) == 0
    out = capsys.readouterr().out
    assert "behavior within specification:      True" in out
    bad = write("anti.mso", corpus.SOME_INCOMPARABLE)
    assert main(["verify", "--net", net, "--mso", bad, "--c", "1", "--sem", "ex"]) == 1


def test_verify_structured_output(files, capsys):
    write, _ = files
    net = write("n1.net", N1_TEXT)
    phi = write("total.mso", corpus.TOTAL_ORDER)
    assert main(["--output", "structured", "verify", "--net", net, "--mso", phi,
                 "--c", "1", "--sem", "cau"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("slw-report v1\n")


def test_synth_and_determinism(files, capsys):
    write, tmp = files
    phi = write("alt.mso", corpus.ALTERNATING_AB)
    out1 = str(tmp / "a.net")
    out2 = str(tmp / "b.net")
    args = ["synth", "--mso", phi, "--alphabet", "a,b", "--b", "1", "--c", "1",
            "--sem", "ex"]
    assert main(args + ["-o", out1]) == 0
    assert main(args + ["-o", out2]) == 0
    assert open(out1).read() == open(out2).read()
    assert "net synthesized" in open(out1).read()


def test_net_automaton_then_aut_ops(files, capsys):
    write, tmp = files
    net = write("n1.net", N1_TEXT)
    aut_path = str(tmp / "n1.aut")
    assert main(["net-automaton", "--net", net, "--c", "1", "--sem", "ex",
                 "-o", aut_path]) == 0
    assert main(["aut", "empty", aut_path]) == 1
    assert main(["aut", "includes", aut_path, aut_path]) == 0
    assert main(["aut", "members", aut_path, "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "poset vertices=1" in out
    comp_path = str(tmp / "comp.aut")
    assert main(["aut", "complement", aut_path, "-o", comp_path]) == 0
    assert main(["aut", "intersect", aut_path, comp_path, "-o", str(tmp / "i.aut")]) == 0
    assert main(["aut", "empty", str(tmp / "i.aut")]) == 0


def test_compile_graph_formula(files, capsys):
    write, tmp = files
    psi = write("edge.mso2", corpus.SOME_EDGE)
    out = str(tmp / "edge.aut")
    assert main(["compile", "--mso2", psi, "--c", "1", "--alphabet", "t",
                 "-o", out]) == 0
    assert open(out).read().startswith("slice-automaton c=1 alphabet=t")


def test_contract_cli(files):
    write, tmp = files
    yes = write("yes.mso", corpus.ALTERNATING_AB)
    no = write("no.mso", corpus.CONSECUTIVE_AA)
    assert main(["contract", "--yes", yes, "--no", no, "--alphabet", "a,b",
                 "--b", "1", "--c", "1", "--sem", "ex", "-o", str(tmp / "c.net")]) == 0


def test_proof_log_emission(files):
    write, tmp = files
    net = write("n1.net", N1_TEXT)
    phi = write("total.mso", corpus.TOTAL_ORDER)
    log_path = str(tmp / "proof.log")
    assert main(["--emit-proof-log", log_path, "verify", "--net", net,
                 "--mso", phi, "--c", "1", "--sem", "ex"]) == 0
    assert open(log_path).read().startswith("slw-proof v1\n")


def test_malformed_inputs_exit_three(files, capsys):
    write, _ = files
    bad_net = write("bad.net", "net x bound=1\nplaces oops\n")
    phi = write("t.mso", "true")
    assert main(["verify", "--net", bad_net, "--mso", phi, "--c", "1",
                 "--sem", "ex"]) == 3
    assert "line 2" in capsys.readouterr().err
    net = write("n1.net", N1_TEXT)
    bad_phi = write("bad.mso", "EX x. (")
    assert main(["verify", "--net", net, "--mso", bad_phi, "--c", "1",
                 "--sem", "ex"]) == 3


def test_resource_cap_exit_two(files, capsys):
    write, _ = files
    phi = write("even.mso", corpus.EVEN_CHAIN)
    code = main(["--max-states", "2", "synth", "--mso", phi, "--alphabet", "a",
                 "--b", "1", "--c", "1", "--sem", "ex"])
    assert code == 2
    assert "cap" in capsys.readouterr().err


def test_graph_formula_where_order_expected(files, capsys):
    write, _ = files
    net = write("n1.net", N1_TEXT)
    psi = write("graph.mso", corpus.SOME_EDGE)
    assert main(["verify", "--net", net, "--mso", psi, "--c", "1", "--sem", "ex"]) == 3
