"""Plain-text hypergraph files.

Format::

    # optional comment lines
    n r m
    v1 v2 ... vr      (m lines, 0-based vertex ids)
"""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidHypergraph, InvalidParameters, ParseError
from .hypergraph import Hypergraph


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse(text: str) -> Hypergraph:
    lines = [
        (k, raw.split())
        for k, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("missing header line 'n r m'")
    lineno, header = lines[0]
    if len(header) != 3:
        raise ParseError("header must be 'n r m'", lineno)
    n, r, m = _ints(header, lineno)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else None
        raise ParseError(f"header declares {m} edges, found {len(body)}", where)

    edges = []
    for lineno, tokens in body:
        if len(tokens) != r:
            raise ParseError(f"edge has {len(tokens)} vertices, expected {r}", lineno)
        edge = _ints(tokens, lineno)
        bad = [v for v in edge if not 0 <= v < n]
        if bad:
            raise ParseError(f"vertex {bad[0]} outside [0, {n})", lineno)
        if len(set(edge)) != r:
            raise ParseError("edge repeats a vertex", lineno)
        edges.append(tuple(sorted(edge)))
        if edges[-1] in edges[:-1]:
            raise ParseError(f"duplicate edge {edge}", lineno)
    try:
        return Hypergraph(n, r, tuple(edges))
    except (InvalidHypergraph, InvalidParameters) as exc:
        raise ParseError(str(exc), lines[0][0]) from exc


def serialize(H: Hypergraph) -> str:
    out = [f"{H.n} {H.r} {H.m}"]
    out += [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(out) + "\n"


def read(path) -> Hypergraph:
    return parse(Path(path).read_text())


def write(H: Hypergraph, path) -> None:
    Path(path).write_text(serialize(H))
