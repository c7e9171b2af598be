"""
Text formats for graphs, flows, certificates and embeddings.

All formats are line based. Blank lines and lines starting with ``#`` are
ignored; every error names the 1-based line it was found on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .exceptions import ParseError, ValidationError
from .flows import FlowAssignment, FlowKind, KindName
from .graph import Edge, Orientation, SignedGraph, parse_sign, sign_symbol
from .orientations import (
    BoundaryFunction,
    EulerianCertificate,
    EulerianForm,
    ModOrientationCertificate,
    PartitionCertificate,
)
from .planar import PlaneEmbedding

logger = logging.getLogger(__name__)


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line) from None


def _fraction(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {token!r}", line) from None


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc


# --------------------------------------------------------------------------
# Graphs
# --------------------------------------------------------------------------


def parse_signed_graph(text: str) -> SignedGraph:
    """``v <n>`` followed by ``e <u> <w> <+|->`` lines; edge ids follow file order."""
    vertex_count: Optional[int] = None
    edges: List[Edge] = []
    for number, tokens in _lines(text):
        if vertex_count is None:
            if tokens[0] != "v" or len(tokens) != 2:
                raise ParseError("expected 'v <n>' before any edge", number)
            vertex_count = _int(tokens[1], number, "vertex count")
            if vertex_count < 0:
                raise ParseError("vertex count must be nonnegative", number)
            continue
        if tokens[0] != "e" or len(tokens) != 4:
            raise ParseError(f"expected 'e <u> <w> <sign>', got {' '.join(tokens)!r}", number)
        u = _int(tokens[1], number, "vertex")
        w = _int(tokens[2], number, "vertex")
        for v in (u, w):
            if not 0 <= v < vertex_count:
                raise ParseError(f"vertex {v} out of range 0..{vertex_count - 1}", number)
        if u == w:
            raise ParseError(f"loop at vertex {u}", number)
        try:
            sign = parse_sign(tokens[3])
        except ValidationError as exc:
            raise ParseError(str(exc), number) from None
        edges.append(Edge(len(edges), u, w, sign))
    if vertex_count is None:
        raise ParseError("missing 'v <n>' line", 1)
    return SignedGraph(vertex_count, tuple(edges))


def format_signed_graph(g: SignedGraph) -> str:
    lines = [f"v {g.vertex_count}"] + [f"e {e.u} {e.w} {sign_symbol(e.sign)}" for e in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> SignedGraph:
    return parse_signed_graph(read_text(path))


# --------------------------------------------------------------------------
# Flows
# --------------------------------------------------------------------------


def _parse_kind(tokens: List[str], number: int) -> FlowKind:
    try:
        name = KindName(tokens[1]) if len(tokens) > 1 else None
    except ValueError:
        raise ParseError(f"unknown flow kind {tokens[1]!r}", number) from None
    try:
        if name in (KindName.PQ, KindName.MOD_PQ) and len(tokens) == 4:
            p, q = _int(tokens[2], number, "p"), _int(tokens[3], number, "q")
            return FlowKind.pq(p, q) if name is KindName.PQ else FlowKind.mod_pq(p, q)
        if name in (KindName.CIRCULAR_R, KindName.CIRCULAR_MOD_R) and len(tokens) == 3:
            r = _fraction(tokens[2], number)
            return FlowKind.circular(r) if name is KindName.CIRCULAR_R else FlowKind.circular_mod(r)
    except ValidationError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), number) from None
    raise ParseError("expected 'kind circular-r R', 'kind pq P Q', 'kind mod-pq P Q' or 'kind circular-mod-r R'", number)


def parse_flow(text: str, g: Optional[SignedGraph] = None) -> Tuple[Orientation, FlowAssignment]:
    """A ``kind`` header and one ``<edge_id> <tail> <head> <value>`` line per edge."""
    kind: Optional[FlowKind] = None
    rows: Dict[int, Tuple[int, int, Fraction]] = {}
    last = 1
    for number, tokens in _lines(text):
        last = number
        if tokens[0] == "kind":
            kind = _parse_kind(tokens, number)
            continue
        if len(tokens) != 4:
            raise ParseError("expected '<edge_id> <tail> <head> <value>'", number)
        e = _int(tokens[0], number, "edge id")
        if e in rows:
            raise ParseError(f"edge {e} listed twice", number)
        rows[e] = (_int(tokens[1], number, "tail"), _int(tokens[2], number, "head"), _fraction(tokens[3], number))
    if kind is None:
        raise ParseError("missing 'kind' header", last)
    if sorted(rows) != list(range(len(rows))):
        raise ParseError("edge ids must cover 0..m-1", last)
    arcs = tuple((rows[e][0], rows[e][1]) for e in range(len(rows)))
    try:
        f = FlowAssignment(tuple(rows[e][2] for e in range(len(rows))), kind)
    except ValidationError as exc:
        raise ParseError(str(exc), last) from None
    D = Orientation(arcs)
    if g is not None:
        D.check(g)
    return D, f


def _value_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_flow(D: Orientation, f: FlowAssignment) -> str:
    kind = f.kind
    if kind.integral:
        header = f"kind {kind.name.value} {kind.p} {kind.q}"
    else:
        header = f"kind {kind.name.value} {_value_text(kind.r)}"
    lines = [header] + [f"{e} {t} {h} {_value_text(f[e])}" for e, (t, h) in enumerate(D.arcs)]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaCertificate:
    """A boundary function, optionally with an orientation claimed to realise it."""

    beta: BoundaryFunction
    orientation: Optional[Orientation] = None


Certificate = Union[ModOrientationCertificate, PartitionCertificate, BetaCertificate, EulerianCertificate, Orientation]

_CERT_TYPES = ("mod-orientation", "partition", "beta", "eulerian", "orientation")


@dataclass
class _CertificateBody:
    arcs: Dict[int, Tuple[int, int]]
    signs: Dict[int, int]
    values: Dict[int, int]
    parts: Dict[int, List[int]]
    residues: Dict[int, int]
    modulus: Optional[int] = None
    ell: Optional[int] = None
    k: Optional[int] = None
    form: Optional[EulerianForm] = None


def _dense(mapping: Dict[int, object], what: str, line: int) -> List:
    if sorted(mapping) != list(range(len(mapping))):
        raise ParseError(f"{what} ids must cover 0..{len(mapping) - 1}", line)
    return [mapping[i] for i in range(len(mapping))]


def _parse_body(lines: List[Tuple[int, List[str]]]) -> _CertificateBody:
    body = _CertificateBody({}, {}, {}, {}, {})
    for number, tokens in lines:
        head, args = tokens[0], tokens[1:]
        if head == "o" and len(args) == 3:
            e, t, h = (_int(x, number, "arc field") for x in args)
            body.arcs[e] = (t, h)
        elif head == "s" and len(args) == 2:
            try:
                body.signs[_int(args[0], number, "edge id")] = parse_sign(args[1])
            except ValidationError as exc:
                raise ParseError(str(exc), number) from None
        elif head == "f" and len(args) == 2:
            body.values[_int(args[0], number, "edge id")] = _int(args[1], number, "flow value")
        elif head == "part" and args:
            body.parts[_int(args[0], number, "part index")] = [_int(x, number, "edge id") for x in args[1:]]
        elif head == "b" and len(args) == 4 and args[2] == "mod":
            modulus = _int(args[3], number, "modulus")
            if body.modulus is not None and modulus != body.modulus:
                raise ParseError(f"mixed moduli {body.modulus} and {modulus}", number)
            body.modulus = modulus
            body.residues[_int(args[0], number, "vertex")] = _int(args[1], number, "residue")
        elif head == "ell" and len(args) == 1:
            body.ell = _int(args[0], number, "ell")
        elif head == "k" and len(args) == 1:
            body.k = _int(args[0], number, "k")
        elif head == "form" and len(args) == 1:
            try:
                body.form = EulerianForm(args[0])
            except ValueError:
                raise ParseError(f"unknown Eulerian form {args[0]!r}", number) from None
        else:
            raise ParseError(f"unrecognised certificate line {' '.join(tokens)!r}", number)
    return body


def parse_certificate(text: str, g: SignedGraph) -> Certificate:
    """Read a ``cert <type>`` file against the graph it certifies."""
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "cert" or len(lines[0][1]) != 2 or lines[0][1][1] not in _CERT_TYPES:
        raise ParseError(f"expected 'cert <type>' with type one of {', '.join(_CERT_TYPES)}", lines[0][0] if lines else 1)
    kind = lines[0][1][1]
    last = lines[-1][0]
    body = _parse_body(lines[1:])
    orientation = Orientation(tuple(_dense(body.arcs, "arc", last))) if body.arcs else None
    try:
        if orientation is not None and kind != "orientation":
            orientation.check(g)
        if kind == "orientation":
            if orientation is None:
                raise ParseError("orientation certificate has no 'o' lines", last)
            return orientation
        if kind == "beta":
            residues = _dense(body.residues, "vertex", last)
            if body.modulus is None:
                raise ParseError("beta certificate has no 'b' lines", last)
            return BetaCertificate(BoundaryFunction(body.modulus, tuple(residues)), orientation)
        if orientation is None:
            raise ParseError(f"{kind} certificate has no 'o' lines", last)
        if kind == "partition":
            parts = _dense(body.parts, "part", last)
            return PartitionCertificate(orientation, tuple(tuple(p) for p in parts))
        signature = g.with_signs(_dense(body.signs, "sign", last)) if body.signs else None
        if kind == "mod-orientation":
            if body.ell is None or signature is None:
                raise ParseError("mod-orientation certificate needs 'ell' and 's' lines", last)
            return ModOrientationCertificate(signature, orientation, body.ell)
        if body.k is None or body.form is None:
            raise ParseError("eulerian certificate needs 'k' and 'form' lines", last)
        values = tuple(_dense(body.values, "flow value", last)) if body.values else ()
        return EulerianCertificate(body.form, body.k, orientation, values, signature)
    except ParseError:
        raise
    except ValidationError as exc:
        raise ParseError(str(exc), last) from None


def _arc_lines(D: Orientation) -> List[str]:
    return [f"o {e} {t} {h}" for e, (t, h) in enumerate(D.arcs)]


def _sign_lines(g: SignedGraph) -> List[str]:
    return [f"s {e.id} {sign_symbol(e.sign)}" for e in g.edges]


def format_certificate(certificate: Certificate) -> str:
    if isinstance(certificate, Orientation):
        lines = ["cert orientation"] + _arc_lines(certificate)
    elif isinstance(certificate, ModOrientationCertificate):
        lines = ["cert mod-orientation", f"ell {certificate.ell}"]
        lines += _sign_lines(certificate.signature) + _arc_lines(certificate.orientation)
    elif isinstance(certificate, PartitionCertificate):
        lines = ["cert partition"] + _arc_lines(certificate.orientation)
        lines += [f"part {i} " + " ".join(map(str, part)) for i, part in enumerate(certificate.parts)]
    elif isinstance(certificate, BetaCertificate):
        beta = certificate.beta
        lines = ["cert beta"] + [f"b {v} {b} mod {beta.modulus}" for v, b in enumerate(beta.residues)]
        if certificate.orientation is not None:
            lines += _arc_lines(certificate.orientation)
    elif isinstance(certificate, EulerianCertificate):
        lines = ["cert eulerian", f"form {certificate.form.value}", f"k {certificate.k}"]
        lines += _arc_lines(certificate.orientation)
        lines += [f"f {e} {v}" for e, v in enumerate(certificate.values)]
        if certificate.signature is not None:
            lines += _sign_lines(certificate.signature)
    else:
        raise ValidationError(f"cannot format {type(certificate).__name__}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Embeddings
# --------------------------------------------------------------------------


def parse_embedding(text: str) -> PlaneEmbedding:
    """One ``f <edge_id>[~] ...`` line per face; ``~`` marks a reversed traversal."""
    faces = []
    for number, tokens in _lines(text):
        if tokens[0] != "f" or len(tokens) < 2:
            raise ParseError("expected 'f <edge_id>[~] ...'", number)
        face = []
        for token in tokens[1:]:
            reversed_ = token.endswith("~")
            face.append((_int(token.rstrip("~"), number, "edge id"), reversed_))
        faces.append(tuple(face))
    return PlaneEmbedding(tuple(faces))


def format_embedding(emb: PlaneEmbedding) -> str:
    lines = ["f " + " ".join(f"{e}~" if r else str(e) for e, r in face) for face in emb.faces]
    return "\n".join(lines) + "\n"
