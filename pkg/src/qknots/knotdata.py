"""Planar-diagram (PD) knot presentations: parsing, orientation, mirroring and census lists.

A crossing ``X[i,j,k,l]`` lists its four edge labels counterclockwise,
starting from the incoming under-edge.  The under-strand therefore runs
``i -> k``; the over-strand direction is recovered by tracing the knot.
"""

from __future__ import annotations

import csv
import gzip
import io
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Iterator, NamedTuple

__all__ = [
    "Crossing",
    "Diagram",
    "OrientedDiagram",
    "KnotTable",
    "PDError",
    "PDSyntaxError",
    "PDLabelError",
    "DisconnectedDiagramError",
    "MultiComponentError",
    "OrientationError",
    "NonPlanarError",
    "parse_pd",
    "orient",
    "mirror",
    "two_cable",
    "writhe",
    "ingest_list",
    "iter_records",
    "load_census",
    "convert_knotinfo_csv",
    "CENSUS_COUNTS",
    "CENSUS_CUMULATIVE",
]

# prime knots with n = 3..16 crossings, knots and mirrors identified
CENSUS_COUNTS = {
    3: 1, 4: 1, 5: 2, 6: 3, 7: 7, 8: 21, 9: 49, 10: 165, 11: 552, 12: 2176,
    13: 9988, 14: 46972, 15: 253293, 16: 1388705,
}
CENSUS_CUMULATIVE = {
    3: 1, 4: 2, 5: 4, 6: 7, 7: 14, 8: 35, 9: 84, 10: 249, 11: 801, 12: 2977,
    13: 12965, 14: 59937, 15: 313230, 16: 1701935,
}


class PDError(ValueError):
    """Base class for malformed planar diagrams."""


class PDSyntaxError(PDError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class PDLabelError(PDError):
    """An edge label does not occur exactly twice."""


class DisconnectedDiagramError(PDError):
    """The crossings split into several planar pieces."""


class MultiComponentError(PDError):
    """The diagram is a link with more than one component."""


class OrientationError(PDError):
    """Tracing the strands contradicts the under-strand directions."""


class NonPlanarError(PDError):
    """The crossing data do not glue into a diagram on the sphere."""


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __str__(self):
        return f"X[{self.a},{self.b},{self.c},{self.d}]"


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    id: str = ""

    @property
    def n(self) -> int:
        return len(self.crossings)

    def edges(self) -> list[int]:
        return sorted({e for x in self.crossings for e in x})

    def to_pd(self) -> str:
        return "PD[" + ",".join(str(x) for x in self.crossings) + "]"

    def __str__(self):
        return self.to_pd()


@dataclass(frozen=True)
class OrientedDiagram:
    """A :class:`Diagram` with the knot orientation traced out.

    ``incoming[c]`` holds the two slots of crossing ``c`` through which the
    knot enters (slot 0 is always one of them), ``successor`` maps each edge
    to the next edge along the orientation.
    """

    base: Diagram
    successor: dict[int, int]
    signs: tuple[int, ...]
    incoming: tuple[tuple[int, int], ...]
    edge_order: tuple[int, ...] = field(default=())

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self.base.crossings

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def is_incoming(self, crossing: int, slot: int) -> bool:
        return slot in self.incoming[crossing]


# parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(PD|X)|(\[)|(\])|(,)|(-?\d+))")


def _tokenize(text: str):
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            return
        m = _TOKEN.match(text, pos)
        if not m:
            raise PDSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        yield m.lastindex, m.group(m.lastindex), start
        pos = m.end()


def _parse_crossings(text: str) -> list[tuple[int, ...]]:
    """Accept ``PD[X[a,b,c,d],...]`` and the bare list form ``[[a,b,c,d],...]``."""
    toks = list(_tokenize(text))
    toks.append((0, "", len(text)))
    i = 0

    def expect(kind, what):
        nonlocal i
        k, val, pos = toks[i]
        if k != kind or (kind == 1 and val != what):
            found = val or "end of input"
            raise PDSyntaxError(f"expected {what!r}, found {found!r}", pos, text)
        i += 1
        return val

    crossings = []
    head = toks[0]
    wrapped = head[0] == 1 and head[1] == "PD"
    if wrapped:
        expect(1, "PD")
    expect(2, "[")
    if toks[i][0] == 3:
        i += 1
    else:
        while True:
            if wrapped:
                expect(1, "X")
            expect(2, "[")
            labels = []
            for m in range(4):
                k, val, pos = toks[i]
                if k != 5:
                    raise PDSyntaxError("expected an edge label", pos, text)
                labels.append(int(val))
                i += 1
                if m < 3:
                    expect(4, ",")
            expect(3, "]")
            crossings.append(tuple(labels))
            k, val, pos = toks[i]
            if k == 4:
                i += 1
                continue
            expect(3, "]")
            break
    if toks[i][0] != 0:
        raise PDSyntaxError("trailing input", toks[i][2], text)
    return crossings


def _check_and_relabel(raw: list[tuple[int, ...]]) -> tuple[Crossing, ...]:
    counts = Counter(e for x in raw for e in x)
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        raise PDLabelError(f"edge labels not occurring exactly twice: {bad[:8]}")
    labels = sorted(counts)
    n = len(raw)
    if labels != list(range(1, 2 * n + 1)):
        remap = {e: i + 1 for i, e in enumerate(labels)}
        raw = [tuple(remap[e] for e in x) for x in raw]
    return tuple(Crossing(*x) for x in raw)


def _check_connected(crossings: tuple[Crossing, ...]) -> None:
    if len(crossings) <= 1:
        return
    parent = list(range(len(crossings)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    where: dict[int, int] = {}
    for ci, x in enumerate(crossings):
        for e in x:
            if e in where:
                ra, rb = find(where[e]), find(ci)
                if ra != rb:
                    parent[ra] = rb
            else:
                where[e] = ci
    roots = {find(c) for c in range(len(crossings))}
    if len(roots) > 1:
        raise DisconnectedDiagramError(f"diagram splits into {len(roots)} pieces")


def _check_planar(crossings: tuple[Crossing, ...]) -> None:
    # faces are the cycles of "cross the edge, then turn to the next slot
    # counterclockwise"; a connected diagram on the sphere has n + 2 of them
    n = len(crossings)
    if n == 0:
        return
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(crossings):
        for s, e in enumerate(x):
            ends.setdefault(e, []).append((ci, s))
    seen = set()
    faces = 0
    for start in ((c, s) for c in range(n) for s in range(4)):
        if start in seen:
            continue
        faces += 1
        dart = start
        while dart not in seen:
            seen.add(dart)
            a, b = ends[crossings[dart[0]][dart[1]]]
            c, s = b if a == dart else a
            dart = (c, (s + 1) % 4)
    if faces != n + 2:
        raise NonPlanarError(f"{faces} faces for {n} crossings; a planar diagram has {n + 2}")


def parse_pd(text: str, id: str = "", *, knot_only: bool = True) -> Diagram:
    """Parse one PD presentation.

    >>> parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").n
    3
    """
    raw = _parse_crossings(text)
    crossings = _check_and_relabel(raw)
    _check_connected(crossings)
    _check_planar(crossings)
    d = Diagram(crossings, id)
    if knot_only:
        orient(d)
    return d


# orientation ---------------------------------------------------------------

def _occurrences(d: Diagram) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(d.crossings):
        for s, e in enumerate(x):
            occ.setdefault(e, []).append((ci, s))
    return occ


def _other_end(occ, e: int, here: tuple[int, int]) -> tuple[int, int]:
    a, b = occ[e]
    return b if a == here else a


def trace_components(d: Diagram) -> list[list[tuple[int, int, int]]]:
    """Trace every strand component.

    Returns, per component, the list of ``(edge, crossing_entered, slot_entered)``
    in orientation order.  Components that never pass under a crossing cannot
    be oriented and raise :class:`OrientationError`.
    """
    occ = _occurrences(d)
    entered: dict[tuple[int, int], bool] = {}
    components = []
    for start_c in range(d.n):
        if (start_c, 0) in entered:
            continue
        comp = []
        c, s = start_c, 0
        while (c, s) not in entered:
            entered[(c, s)] = True
            e_in = d.crossings[c][s]
            comp.append((e_in, c, s))
            out_slot = (s + 2) % 4
            if out_slot == 0:
                raise OrientationError(f"crossing {c} is left through its incoming under slot")
            if (c, out_slot) in entered:
                raise OrientationError(f"crossing {c} entered twice on one strand")
            e_out = d.crossings[c][out_slot]
            c, s = _other_end(occ, e_out, (c, out_slot))
            if s == 2:
                raise OrientationError(f"edge {e_out} enters crossing {c} at its outgoing under slot")
        if (c, s) != comp[0][1:]:
            raise OrientationError("strand does not close up")
        components.append(comp)
    visited = {(c, s) for comp in components for _, c, s in comp}
    for c in range(d.n):
        if not ({(c, 1), (c, 3)} & visited):
            raise OrientationError("a component passes only over crossings")
    return components


def orient(d: Diagram) -> OrientedDiagram:
    """Trace the knot orientation, crossing signs and writhe."""
    if d.n == 0:
        return OrientedDiagram(d, {}, (), (), ())
    comps = trace_components(d)
    if len(comps) != 1:
        raise MultiComponentError(f"diagram has {len(comps)} components")
    comp = comps[0]
    if len(comp) != 2 * d.n:
        raise OrientationError("orientation cycle does not visit every edge")
    incoming = [[0] for _ in range(d.n)]
    for _, c, s in comp:
        if s in (1, 3):
            incoming[c].append(s)
    signs = []
    for c, inc in enumerate(incoming):
        if len(inc) != 2:
            raise OrientationError(f"crossing {c} over-strand not traversed once")
        # over-strand l -> j (entering slot 3) is a positive crossing
        signs.append(1 if inc[1] == 3 else -1)
    edges = [e for e, _, _ in comp]
    succ = {edges[i]: edges[(i + 1) % len(edges)] for i in range(len(edges))}
    return OrientedDiagram(
        d, succ, tuple(signs), tuple(tuple(v) for v in incoming), tuple(edges)
    )


def writhe(d: Diagram) -> int:
    return orient(d).writhe


def two_cable(d: Diagram) -> Diagram:
    """Blackboard-framed 2-parallel of a knot diagram (a 2-component link).

    Each crossing becomes four.  Copy 0 of every edge runs on the left of the
    knot orientation, copy 1 on the right.
    """
    od = orient(d)
    labels: dict = {}

    def lab(key):
        if key not in labels:
            labels[key] = len(labels) + 1
        return labels[key]

    out = []
    for c, (i, j, k, l) in enumerate(d.crossings):
        # under strand runs west (i) -> east (k); j is south, l is north
        north_bound = 1 in od.incoming[c]
        for a in (0, 1):
            y_top = a == 0  # copy 0 of the under strand lies on its left = north
            for b in (0, 1):
                x_left = (b == 0) == north_bound
                west = lab(("e", i, a)) if x_left else lab(("h", c, a))
                east = lab(("h", c, a)) if x_left else lab(("e", k, a))
                south = lab(("v", c, b)) if y_top else lab(("e", j, b))
                north = lab(("e", l, b)) if y_top else lab(("v", c, b))
                out.append(Crossing(west, south, east, north))
    return Diagram(tuple(out), d.id + "^(2)" if d.id else "")


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing (mirror image through the projection plane)."""
    od = orient(d)
    out = []
    for x, sgn in zip(d.crossings, od.signs):
        i, j, k, l = x
        out.append(Crossing(l, i, j, k) if sgn > 0 else Crossing(j, k, l, i))
    return Diagram(tuple(out), d.id)


# census lists ---------------------------------------------------------------

@dataclass
class KnotTable:
    """Ordered knot list with per-crossing-number counts and collected errors."""

    entries: list[tuple[str, Diagram]] = field(default_factory=list)
    errors: list[tuple[int, str, str]] = field(default_factory=list)

    def counts(self) -> dict[int, int]:
        c = Counter(d.n for _, d in self.entries)
        return dict(sorted(c.items()))

    def cumulative_counts(self) -> dict[int, int]:
        out, acc = {}, 0
        for n, k in self.counts().items():
            acc += k
            out[n] = acc
        return out

    def up_to(self, max_crossings: int) -> "KnotTable":
        return KnotTable([(i, d) for i, d in self.entries if d.n <= max_crossings], [])

    def with_crossings(self, n: int) -> "KnotTable":
        return KnotTable([(i, d) for i, d in self.entries if d.n == n], [])

    def ids(self) -> list[str]:
        return [i for i, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, key):
        if isinstance(key, str):
            for i, d in self.entries:
                if i == key:
                    return d
            raise KeyError(key)
        return self.entries[key]

    def summary(self) -> str:
        return f"{len(self.entries)} knots, {len(self.errors)} rejected lines, counts {self.counts()}"


def iter_records(stream: Iterable[str]) -> Iterator[tuple[int, str, str]]:
    """Yield ``(line_number, name, pd_text)`` from a line-oriented list."""
    auto = 0
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if ";" in line:
            name, pd = line.split(";", 1)
            name = name.strip()
        else:
            auto += 1
            name, pd = f"#{auto}", line
        yield lineno, name, pd.strip()


def ingest_list(stream: Iterable[str], max_crossings: int | None = None) -> KnotTable:
    """Parse a knot list; malformed lines are recorded in ``table.errors``."""
    table = KnotTable()
    for lineno, name, pd in iter_records(stream):
        try:
            d = parse_pd(pd, name)
        except PDError as exc:
            table.errors.append((lineno, name, str(exc)))
            continue
        if max_crossings is not None and d.n > max_crossings:
            continue
        table.entries.append((name, d))
    return table


def load_census(max_crossings: int | None = None) -> KnotTable:
    """The bundled prime-knot list (one chirality per knot), in census order."""
    ref = resources.files("qknots") / "data" / "prime_knots.txt.gz"
    with ref.open("rb") as fh, gzip.open(fh, "rt", encoding="utf-8") as text:
        if max_crossings is None:
            return ingest_list(text)
        lines = _takewhile_crossings(text, max_crossings)
        return ingest_list(lines, max_crossings)


def _takewhile_crossings(lines: Iterable[str], max_crossings: int) -> Iterator[str]:
    # the bundled file is sorted by crossing number; stop reading early
    for line in lines:
        if line.startswith("#"):
            yield line
            continue
        pd = line.split(";", 1)[-1]
        if pd.count("[") - 1 > max_crossings:
            return
        yield line


def convert_knotinfo_csv(src: IO[str], dst: IO[str], name_col: str = "name",
                         pd_col: str = "pd_notation", min_crossings: int = 1,
                         max_crossings: int | None = None) -> int:
    """Convert a census CSV (KnotInfo column layout) to the ``name;PD[...]`` format.

    The delimiter (``|`` in KnotInfo dumps, ``,`` otherwise) is detected from
    the header line.  Rows without a PD code, and the unknot row, are skipped.
    Returns the number of records written.
    """
    csv.field_size_limit(1 << 30)
    header = src.readline()
    delim = "|" if header.count("|") > header.count(",") else ","
    reader = csv.DictReader(io.StringIO(header), delimiter=delim)
    fields = reader.fieldnames or []
    reader = csv.DictReader(src, fieldnames=fields, delimiter=delim)
    written = 0
    for row in reader:
        pd = (row.get(pd_col) or "").strip()
        if not pd or not pd.startswith(("[", "PD")):
            continue
        n = pd.count("[") - 1
        if n < min_crossings or (max_crossings is not None and n > max_crossings):
            continue
        crossings = _parse_crossings(pd)
        body = ",".join("X[" + ",".join(str(v) for v in x) + "]" for x in crossings)
        dst.write(f"{row[name_col].strip()};PD[{body}]\n")
        written += 1
    return written


def read_text(path) -> io.TextIOBase:
    path = str(path)
    if path.endswith(".gz"):
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")
