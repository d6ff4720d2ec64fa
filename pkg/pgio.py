"""Reads and writes "ncsp-pg v1" instance files."""
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import FORMAT_TAG
from modules.plane_graph import Coordinate, Edge, EmbeddingData, NcspError


class FormatError(NcspError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<string>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class PgFile:
    data: EmbeddingData
    pairs: Tuple[Tuple[int, int], ...]


def _ints(fields: Sequence[str], line: int, source: str) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(fields)!r}", line, source) from None


def parse(text: str, source: str = "<string>") -> PgFile:
    """Parses the text of an instance file."""
    vertex_count = None
    edges: Dict[int, Edge] = {}
    rotations: Dict[int, Tuple[int, ...]] = {}
    coordinates: Dict[int, Coordinate] = {}
    outer: Optional[Tuple[int, int, int]] = None
    declared_pairs = None
    pairs: List[Tuple[int, int]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == FORMAT_TAG:
            continue
        tag, *fields = line.split()

        if tag == "V":
            if vertex_count is not None:
                raise FormatError("duplicate V record", number, source)
            if len(fields) != 1:
                raise FormatError("V takes one count", number, source)
            (vertex_count,) = _ints(fields, number, source)
            if vertex_count < 0:
                raise FormatError("V takes a non-negative count", number, source)
            continue
        if vertex_count is None:
            raise FormatError(f"record {tag!r} before V", number, source)

        if tag == "e":
            if len(fields) != 4:
                raise FormatError("e takes: id u v w", number, source)
            eid, u, v, w = _ints(fields, number, source)
            if eid != len(edges):
                raise FormatError(f"edge ids must be dense and in order: expected {len(edges)}, got {eid}",
                                  number, source)
            for endpoint in (u, v):
                if not 0 <= endpoint < vertex_count:
                    raise FormatError(f"edge {eid}: vertex {endpoint} out of range", number, source)
            edges[eid] = Edge(u, v, w)
        elif tag == "R":
            if not fields:
                raise FormatError("R takes a vertex and its clockwise edges", number, source)
            v, *ring = _ints(fields, number, source)
            if not 0 <= v < vertex_count:
                raise FormatError(f"rotation for unknown vertex {v}", number, source)
            if v in rotations:
                raise FormatError(f"duplicate rotation for vertex {v}", number, source)
            rotations[v] = tuple(ring)
        elif tag == "O":
            if len(fields) != 2:
                raise FormatError("O takes: edge_id tail_vertex", number, source)
            eid, tail = _ints(fields, number, source)
            outer = (eid, tail, number)
        elif tag == "c":
            if len(fields) != 3:
                raise FormatError("c takes: v x y", number, source)
            (v,) = _ints(fields[:1], number, source)
            if not 0 <= v < vertex_count:
                raise FormatError(f"coordinates for vertex {v} out of range", number, source)
            if v in coordinates:
                raise FormatError(f"duplicate coordinates for vertex {v}", number, source)
            try:
                coordinates[v] = (Fraction(fields[1]), Fraction(fields[2]))
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad coordinates {fields[1]!r} {fields[2]!r}", number, source) from None
        elif tag == "K":
            if declared_pairs is not None or len(fields) != 1:
                raise FormatError("K takes one count and appears once", number, source)
            (declared_pairs,) = _ints(fields, number, source)
        elif tag == "p":
            if declared_pairs is None:
                raise FormatError("p record before K", number, source)
            if len(fields) != 2:
                raise FormatError("p takes: s t", number, source)
            s, t = _ints(fields, number, source)
            pairs.append((s, t))
        else:
            raise FormatError(f"unknown record {tag!r}", number, source)

    if vertex_count is None:
        raise FormatError("missing V record", None, source)
    if declared_pairs is not None and declared_pairs != len(pairs):
        raise FormatError(f"K declares {declared_pairs} pairs but {len(pairs)} follow", None, source)

    outer_dart = None
    if outer is not None:
        eid, tail, number = outer
        if eid not in edges:
            raise FormatError(f"outer edge {eid} does not exist", number, source)
        if tail == edges[eid].u:
            outer_dart = 2 * eid
        elif tail == edges[eid].v:
            outer_dart = 2 * eid + 1
        else:
            raise FormatError(f"vertex {tail} is not an endpoint of edge {eid}", number, source)

    coordinate_list = None
    if coordinates:
        if len(coordinates) != vertex_count:
            raise FormatError(f"coordinates given for {len(coordinates)} of {vertex_count} vertices", None, source)
        coordinate_list = tuple(coordinates[v] for v in range(vertex_count))

    data = EmbeddingData(
        vertex_count=vertex_count,
        edges=tuple(edges[e] for e in range(len(edges))),
        rotations=tuple(rotations.get(v, ()) for v in range(vertex_count)),
        outer_dart=outer_dart,
        coordinates=coordinate_list,
    )
    return PgFile(data, tuple(pairs))


def read(path: Union[str, Path]) -> PgFile:
    """Reads an instance file from disk."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror}", None, str(path)) from e
    return parse(text, str(path))


def _number(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def dumps(data: EmbeddingData, pairs: Sequence[Tuple[int, int]], comment: Optional[str] = None) -> str:
    lines = [FORMAT_TAG]
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"V {data.vertex_count}")
    for eid, edge in enumerate(data.edges):
        lines.append(f"e {eid} {edge.u} {edge.v} {edge.weight}")
    for v, ring in enumerate(data.rotations):
        lines.append(" ".join(["R", str(v), *map(str, ring)]))
    if data.outer_dart is not None:
        edge = data.edges[data.outer_dart >> 1]
        tail = edge.u if data.outer_dart & 1 == 0 else edge.v
        lines.append(f"O {data.outer_dart >> 1} {tail}")
    if data.coordinates is not None:
        for v, (x, y) in enumerate(data.coordinates):
            lines.append(f"c {v} {_number(x)} {_number(y)}")
    lines.append(f"K {len(pairs)}")
    for s, t in pairs:
        lines.append(f"p {s} {t}")
    return "\n".join(lines) + "\n"


def write(path: Union[str, Path], data: EmbeddingData, pairs: Sequence[Tuple[int, int]],
          comment: Optional[str] = None) -> None:
    """Writes an instance file, replacing any existing one."""
    Path(path).write_text(dumps(data, pairs, comment))
