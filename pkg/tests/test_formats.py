"""Tests for the line-based file formats."""

from fractions import Fraction

import pytest

from signedflow.catalog import cycle, cycle_embedding, digon
from signedflow.exceptions import ParseError, ValidationError
from signedflow.flows import FlowAssignment, FlowKind, verify_flow
from signedflow.formats import (
    BetaCertificate,
    format_certificate,
    format_embedding,
    format_flow,
    format_signed_graph,
    parse_certificate,
    parse_embedding,
    parse_flow,
    parse_signed_graph,
    read_graph,
)
from signedflow.graph import Orientation
from signedflow.orientations import BoundaryFunction, find_mod_orientation, verify_mod_orientation

DIGON = """\
# the +/- digon
v 2
e 0 1 +
e 0 1 -
"""


def test_parse_graph_with_comments():
    g = parse_signed_graph(DIGON)
    assert g == digon()
    assert parse_signed_graph(format_signed_graph(g)) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 0 1 +\n", 1),
        ("v 2\ne 0 2 +\n", 2),
        ("v 2\n\ne 1 1 -\n", 3),
        ("v 2\ne 0 1 *\n", 2),
        ("v two\n", 1),
        ("", 1),
    ],
)
def test_graph_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_signed_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_file_is_a_validation_error(tmp_path):
    with pytest.raises(ValidationError):
        read_graph(tmp_path / "absent.txt")


def test_flow_file():
    g = digon()
    D, f = parse_flow("kind circular-r 4\n0 0 1 1\n1 0 1 -1\n", g)
    assert f.kind == FlowKind.circular(4)
    assert f.values == (Fraction(1), Fraction(-1))
    assert verify_flow(g, D, f)


def test_flow_file_with_fractional_values():
    f = FlowAssignment((Fraction(3, 2), Fraction(-3, 2)), FlowKind.circular(Fraction(9, 2)))
    text = format_flow(Orientation.reference(digon()), f)
    assert text.splitlines()[0] == "kind circular-r 9/2"
    assert "0 0 1 3/2" in text
    D, f = parse_flow(text)
    assert f[0] == Fraction(3, 2)


@pytest.mark.parametrize(
    "text",
    [
        "0 0 1 1\n",
        "kind pq 5 2\n0 0 1 1\n",
        "kind circle 4\n",
        "kind pq 4 1\n0 0 1 1\n0 0 1 2\n",
        "kind pq 4 1\n1 0 1 1\n",
    ],
)
def test_bad_flow_files(text):
    with pytest.raises(ParseError):
        parse_flow(text)


def test_flow_arcs_must_match_the_graph():
    with pytest.raises(ValidationError):
        parse_flow("kind pq 4 1\n0 0 2 1\n1 0 1 -1\n", digon())


def test_mod_orientation_certificate_survives_a_file():
    g = cycle(3)
    certificate = find_mod_orientation(g, 3).certificate
    parsed = parse_certificate(format_certificate(certificate), g)
    assert parsed.ell == 3
    assert parsed.orientation == certificate.orientation
    assert verify_mod_orientation(parsed, g)


def test_beta_certificate():
    g = cycle(3)
    text = "cert beta\nb 0 2 mod 4\nb 1 2 mod 4\nb 2 0 mod 4\n"
    parsed = parse_certificate(text, g)
    assert isinstance(parsed, BetaCertificate)
    assert parsed.beta == BoundaryFunction(4, (2, 2, 0))
    assert parsed.orientation is None


@pytest.mark.parametrize(
    "text",
    [
        "o 0 0 1\n",
        "cert nonsense\n",
        "cert partition\npart 0 0 1 2\n",
        "cert beta\nb 0 2 mod 4\nb 1 2 mod 6\n",
        "cert orientation\no 0 0 1\nbogus\n",
    ],
)
def test_bad_certificates(text):
    with pytest.raises(ParseError):
        parse_certificate(text, cycle(3))


def test_embedding_text():
    emb = parse_embedding("f 0 1 2\nf 2~ 1~ 0~\n")
    assert emb == cycle_embedding(3)
    assert format_embedding(emb) == "f 0 1 2\nf 2~ 1~ 0~\n"
    with pytest.raises(ParseError):
        parse_embedding("g 0 1\n")
