"""Tests for the command-line interface, its report models and settings."""

import json

import pytest

from signedflow.catalog import cycle, cycle_embedding, digon
from signedflow.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main
from signedflow.config import Settings, get_settings
from signedflow.exceptions import ConfigurationError
from signedflow.formats import format_embedding, format_signed_graph
from signedflow.graph import SignedGraph
from signedflow.schemas import CommandConfig, IndexReport, SuiteReport, fraction_text
from signedflow.solver import circular_flow_index


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def write_graph(tmp_path):
    def write(g, name="g.txt"):
        path = tmp_path / name
        path.write_text(format_signed_graph(g))
        return str(path)

    return write


def test_index_of_digon(write_graph, capsys):
    assert main(["index", write_graph(digon())]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "4/1"


def test_index_json_report(write_graph, capsys):
    assert main(["--json", "index", write_graph(digon())]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "exact"
    assert report["value"] == "4/1"
    assert report["tight_cut"]["implied_r"] == "4/1"


def test_witness_file_verifies(write_graph, tmp_path, capsys):
    witness = tmp_path / "flow.txt"
    graph = write_graph(digon())
    assert main(["index", graph, "--witness", str(witness)]) == EXIT_OK
    assert main(["verify-flow", graph, "--flow", str(witness)]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("ok")


def test_positive_bridge_exits_negative(write_graph, capsys):
    g = SignedGraph.from_edges(2, [(0, 1, "+")])
    assert main(["index", write_graph(g)]) == EXIT_NEGATIVE
    assert capsys.readouterr().out.startswith("infeasible: positive bridge")


def test_bad_input_is_a_usage_error(tmp_path, capsys):
    assert main(["index", str(tmp_path / "absent.txt")]) == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("v 2\ne 0 0 +\n")
    assert main(["index", str(bad)]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


def test_invalid_flow_exits_negative(write_graph, tmp_path):
    flow = tmp_path / "flow.txt"
    flow.write_text("kind circular-r 4\n0 0 1 1\n1 0 1 1\n")
    assert main(["verify-flow", write_graph(digon()), "--flow", str(flow)]) == EXIT_NEGATIVE


def test_orientation_certificate_verifies(write_graph, tmp_path, capsys):
    graph = write_graph(cycle(3))
    cert = tmp_path / "cert.txt"
    assert main(["orient", graph, "--mod", "3", "--out", str(cert)]) == EXIT_OK
    assert cert.read_text().startswith("cert mod-orientation")
    capsys.readouterr()
    assert main(["verify-cert", graph, "--cert", str(cert)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "modulo 3-orientation: ok"


def test_odd_degrees_refute_even_modulus(write_graph, capsys):
    g = SignedGraph.from_edges(2, [(0, 1, "+")])
    assert main(["orient", write_graph(g), "--mod", "2"]) == EXIT_NEGATIVE
    assert "odd degree" in capsys.readouterr().out


def test_inversing_classes_of_triangle(write_graph, capsys):
    assert main(["classes", write_graph(cycle(3))]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "4 inversing classes"
    assert len(lines) == 5


def test_negative_girth(write_graph, capsys):
    assert main(["girth", write_graph(cycle(4, [0]))]) == EXIT_OK
    assert main(["girth", write_graph(cycle(3), "balanced.txt")]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["4", "unbounded"]


def test_hom_refused_for_odd_cycle(write_graph):
    assert main(["hom", write_graph(cycle(3)), "--neg-cycle", "2"]) == EXIT_NEGATIVE


def test_dual_of_triangle(write_graph, tmp_path, capsys):
    emb = tmp_path / "emb.txt"
    emb.write_text(format_embedding(cycle_embedding(3)))
    assert main(["dual", write_graph(cycle(3)), "--embedding", str(emb)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("v 2\n")
    assert "# faces" in out


def test_small_hoffman_suite_passes(capsys):
    args = ["--json", "suite", "hoffman", "--max-v", "4", "--max-e", "5", "--samples", "5", "--seed", "3"]
    assert main(args) == EXIT_OK
    report = SuiteReport.model_validate_json(capsys.readouterr().out)
    assert report.suite == "hoffman"
    assert report.counts() == {"pass": 5}


def test_search_counts_inversing_classes(capsys):
    assert main(["--json", "search", "phi-gt-5-3ec", "--max-v", "2", "--max-e", "3"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["graphs_examined"] == 1
    assert report["signatures_examined"] == 2


def test_version_flag():
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0


def test_index_report_uses_fraction_strings():
    report = IndexReport.from_result(circular_flow_index(digon()))
    assert report.value == "4/1"
    assert IndexReport.model_validate_json(report.model_dump_json()) == report
    assert fraction_text(None) is None


def test_command_config_pairs_p_and_q():
    assert CommandConfig.build(command="transfer", p=3, q=1).p == 3
    with pytest.raises(ConfigurationError):
        CommandConfig.build(command="transfer", p=3)
    with pytest.raises(ConfigurationError):
        CommandConfig.build(command="transfer", p=2, q=3)
    with pytest.raises(ConfigurationError):
        CommandConfig.build(command="orient", ell=1)


def test_settings_read_the_environment(monkeypatch):
    monkeypatch.setenv("SIGNEDFLOW_NODE_LIMIT", "1234")
    monkeypatch.setenv("SIGNEDFLOW_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.node_limit == 1234
    assert settings.log_level == "DEBUG"
    assert Settings().cut_enumeration_limit == 16


def test_invalid_settings_are_a_configuration_error(monkeypatch):
    monkeypatch.setenv("SIGNEDFLOW_NODE_LIMIT", "0")
    with pytest.raises(ConfigurationError):
        get_settings()
