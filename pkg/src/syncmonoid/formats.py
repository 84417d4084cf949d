"""Text formats for maps and graphs; 1-based on disk, 0-based in memory.

Map files: one map per line, n space-separated integers in 1..n, all lines
the same length.  Graph files: a header line "n m" followed by m lines
"u v" with 1 <= u < v <= n.  Lines whose first non-blank character is '#'
are comments.  Output is canonical (maps sorted, edges sorted), so emitted
files are stable byte-for-byte.
"""

from __future__ import annotations

from .graphs import SimpleGraph
from .transform import Endofunction


class FormatError(ValueError):
    """A parse problem, tagged with the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _data_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield line_no, stripped


def parse_maps(text: str) -> list[Endofunction]:
    maps = []
    degree = None
    for line_no, line in _data_lines(text):
        fields = line.split()
        if degree is None:
            degree = len(fields)
        elif len(fields) != degree:
            raise FormatError(line_no, f"expected {degree} entries, got {len(fields)}")
        images = []
        for field in fields:
            try:
                value = int(field)
            except ValueError:
                raise FormatError(line_no, f"not an integer: {field!r}") from None
            if not 1 <= value <= degree:
                raise FormatError(line_no, f"entry {value} outside 1..{degree}")
            images.append(value - 1)
        maps.append(Endofunction(images))
    if not maps:
        raise FormatError(1, "no maps found")
    return maps


def format_maps(maps) -> str:
    rows = sorted(m.images for m in maps)
    return "".join(" ".join(str(v + 1) for v in row) + "\n" for row in rows)


def parse_graph(text: str) -> SimpleGraph:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError(1, "empty graph file")
    line_no, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise FormatError(line_no, "header must be 'n m'")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise FormatError(line_no, "header must hold two integers") from None
    if n < 1 or m < 0:
        raise FormatError(line_no, f"bad sizes n={n} m={m}")
    if len(lines) - 1 != m:
        raise FormatError(line_no, f"header promises {m} edges, file has {len(lines) - 1}")
    edges = []
    seen = set()
    for line_no, line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(line_no, "edge line must be 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(line_no, "edge line must hold two integers") from None
        if not 1 <= u < v <= n:
            raise FormatError(line_no, f"edge {u} {v} must satisfy 1 <= u < v <= {n}")
        if (u, v) in seen:
            raise FormatError(line_no, f"duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u - 1, v - 1))
    return SimpleGraph.from_edges(n, edges)


def format_graph(x: SimpleGraph) -> str:
    edges = x.edges()
    out = [f"{x.n} {len(edges)}"]
    out.extend(f"{v + 1} {w + 1}" for v, w in edges)
    return "\n".join(out) + "\n"
