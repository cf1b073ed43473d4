"""Edge-list text format.

Comment lines start with ``#`` and may appear anywhere. The first data line is
``N M``; exactly ``M`` data lines ``i j w`` follow, 1-indexed, ``i != j``.
"""
from pathlib import Path
from typing import Iterable, TextIO
import math

from src.errors import EdgeListParseError
from src.utils import format_float
from .schema import Edge, MaxCutGraph


def _data_lines(lines: Iterable[str]):
    rows = iter(lines)
    number = 0
    while True:
        try:
            raw = next(rows)
        except StopIteration:
            return
        except UnicodeDecodeError:
            raise EdgeListParseError(number + 1, "not valid UTF-8")
        number += 1
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line.split()


def _plain(token: str, line: int, what: str) -> str:
    if "_" in token:
        raise EdgeListParseError(line, f"{what} {token!r} is not a plain decimal number")
    return token


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(_plain(token, line, what))
    except ValueError:
        raise EdgeListParseError(line, f"{what} {token!r} is not an integer")


def parse_edge_list(text: str | TextIO) -> MaxCutGraph:
    lines = text.splitlines() if isinstance(text, str) else text
    rows = _data_lines(lines)

    header = next(rows, None)
    if header is None:
        raise EdgeListParseError(1, "missing header 'N M'")
    line, tokens = header
    if len(tokens) != 2:
        raise EdgeListParseError(line, "header must be 'N M'")
    n = _parse_int(tokens[0], line, "node count")
    m = _parse_int(tokens[1], line, "edge count")
    if n < 1:
        raise EdgeListParseError(line, f"node count must be positive, got {n}")
    if m < 0:
        raise EdgeListParseError(line, f"edge count must be non-negative, got {m}")

    edges = []
    seen = {}
    last_line = line
    for line, tokens in rows:
        last_line = line
        if len(edges) == m:
            raise EdgeListParseError(line, f"more than the declared {m} edges")
        if len(tokens) != 3:
            raise EdgeListParseError(line, "edge line must be 'i j w'")
        i = _parse_int(tokens[0], line, "node index")
        j = _parse_int(tokens[1], line, "node index")
        try:
            weight = float(_plain(tokens[2], line, "weight"))
        except ValueError:
            raise EdgeListParseError(line, f"weight {tokens[2]!r} is not a real number")
        if not math.isfinite(weight):
            raise EdgeListParseError(line, f"weight {tokens[2]!r} is not finite")
        for index in (i, j):
            if not 1 <= index <= n:
                raise EdgeListParseError(line, f"node index {index} out of range 1..{n}")
        if i == j:
            raise EdgeListParseError(line, f"self-loop on node {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise EdgeListParseError(line, f"duplicate edge {key[0]} {key[1]} (first seen at line {seen[key]})")
        seen[key] = line
        edges.append(Edge(i=key[0] - 1, j=key[1] - 1, e=weight))

    if len(edges) != m:
        raise EdgeListParseError(last_line, f"header declares {m} edges, found {len(edges)}")
    return MaxCutGraph(n=n, edges=tuple(edges))


def serialize_edge_list(g: MaxCutGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{edge.i + 1} {edge.j + 1} {format_float(edge.e)}" for edge in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> MaxCutGraph:
    with open(path, encoding="utf8") as handle:
        return parse_edge_list(handle)
