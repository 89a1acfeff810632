"""Plain-text edge lists.

::

    # comment lines and blank lines are skipped
    4 3
    0 1
    1 2
    2 3

The header gives the vertex and edge counts; every edge line is ``u v`` with
``0 <= u < v < n``.
"""

from __future__ import annotations

from .graph import Graph


class FormatError(ValueError):
    pass


class ParseError(FormatError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(FormatError):
    def __init__(self, invariant: str, message: str, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message} [{invariant}]")
        self.invariant = invariant
        self.line = line


def _ints(line_no: int, text: str) -> tuple[int, int]:
    fields = text.split()
    if len(fields) != 2:
        raise ParseError(line_no, f"expected two integers, got {text!r}")
    try:
        a, b = (int(f) for f in fields)
    except ValueError:
        raise ParseError(line_no, f"expected two integers, got {text!r}") from None
    if not all(f.isdigit() for f in fields):
        raise ParseError(line_no, f"expected nonnegative decimal integers, got {text!r}")
    return a, b


def parse_graph(text: str) -> Graph:
    rows = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            rows.append((i, stripped))
    if not rows:
        raise ParseError(1, "missing header line 'n m'")
    line_no, header = rows[0]
    n, m = _ints(line_no, header)
    edges = set()
    for line_no, row in rows[1:]:
        u, v = _ints(line_no, row)
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError("range", f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}", line_no)
        if u == v:
            raise ValidationError("no-self-loop", f"self-loop at vertex {u}", line_no)
        if u > v:
            raise ValidationError("order", f"edge ({u}, {v}) must be written smaller endpoint first", line_no)
        if (u, v) in edges:
            raise ValidationError("duplicate", f"duplicate edge ({u}, {v})", line_no)
        edges.add((u, v))
    if len(edges) != m:
        raise ValidationError("count", f"header announces {m} edges, found {len(edges)}")
    return Graph(n, frozenset(edges))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_graph(g))
