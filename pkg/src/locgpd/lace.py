"""Edge sequences in the triangulated 2-simplex that are both block insertions
into the boundary loop and concatenations of laces, one per face.

Vertices are integer points (i, j) with i + j <= k.  Face L(i, j) has corners
(i, j), (i+1, j), (i, j+1); face U(i, j) has corners (i+1, j), (i+1, j+1),
(i, j+1).  Sequences are stored in traversal order: the first edge is walked
first.  A lace walks out from the origin along an end E, once around its face
counterclockwise, and back along E reversed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

Vertex = tuple[int, int]
OEdge = tuple[Vertex, Vertex]
ORIGIN: Vertex = (0, 0)
MAX_K = 64


class BadK(ValueError):
    pass


def inverse(e: OEdge) -> OEdge:
    return (e[1], e[0])


@dataclass(frozen=True)
class Face:
    kind: str  # "L" or "U"
    i: int
    j: int

    @property
    def corners(self) -> tuple[Vertex, Vertex, Vertex]:
        """Counterclockwise, starting at the lower-left corner."""
        i, j = self.i, self.j
        if self.kind == "L":
            return ((i, j), (i + 1, j), (i, j + 1))
        return ((i + 1, j), (i + 1, j + 1), (i, j + 1))

    def loop_from(self, v: Vertex) -> tuple[OEdge, OEdge, OEdge]:
        c = self.corners
        s = c.index(v)
        p = [c[(s + t) % 3] for t in range(4)]
        return ((p[0], p[1]), (p[1], p[2]), (p[2], p[3]))

    @property
    def name(self) -> str:
        return f"{self.kind}({self.i},{self.j})"


@dataclass(frozen=True)
class Triangulation:
    k: int
    vertices: tuple[Vertex, ...]
    edges: frozenset[frozenset]
    faces: tuple[Face, ...]
    boundary: tuple[OEdge, ...]

    def has_edge(self, e: OEdge) -> bool:
        return frozenset(e) in self.edges

    def ccw_face(self, loop: Sequence[OEdge]) -> Face | None:
        """The face whose counterclockwise boundary is this 3-edge loop."""
        if len(loop) != 3 or loop[0][0] != loop[2][1]:
            return None
        corners = {e[0] for e in loop}
        for f in self.faces:
            if set(f.corners) == corners:
                return f if tuple(loop) == f.loop_from(loop[0][0]) else None
        return None


def triangulate(k: int) -> Triangulation:
    if not isinstance(k, int) or not 1 <= k <= MAX_K:
        raise BadK(f"k must be an integer in [1, {MAX_K}]")
    vertices = tuple((i, j) for i in range(k + 1) for j in range(k + 1 - i))
    faces = [Face("L", i, j) for i in range(k) for j in range(k - i)]
    faces += [Face("U", i, j) for i in range(k - 1) for j in range(k - 1 - i)]
    edges = set()
    for f in faces:
        a, b, c = f.corners
        edges |= {frozenset((a, b)), frozenset((b, c)), frozenset((c, a))}
    bottom = [((i, 0), (i + 1, 0)) for i in range(k)]
    slope = [((k - i, i), (k - i - 1, i + 1)) for i in range(k)]
    left = [((0, k - i), (0, k - i - 1)) for i in range(k)]
    return Triangulation(k, vertices, frozenset(edges), tuple(faces), tuple(bottom + slope + left))


def _reduce(word: Sequence[OEdge]) -> list[OEdge]:
    out: list[OEdge] = []
    for e in word:
        if out and out[-1] == inverse(e):
            out.pop()
        else:
            out.append(e)
    return out


def _path(vs: Sequence[Vertex]) -> list[OEdge]:
    return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


def face_order(k: int) -> list[Face]:
    """Columns from the right; each column top to bottom, alternating L and U."""
    out = []
    for c in range(k - 1, -1, -1):
        top = k - 1 - c
        out.append(Face("L", c, top))
        for j in range(top - 1, -1, -1):
            out.append(Face("U", c, j))
            out.append(Face("L", c, j))
    return out


@dataclass(frozen=True)
class Lace:
    face: Face
    end: tuple[OEdge, ...]

    @property
    def loop(self) -> tuple[OEdge, OEdge, OEdge]:
        base = self.end[-1][1] if self.end else ORIGIN
        return self.face.loop_from(base)

    @property
    def edges(self) -> tuple[OEdge, ...]:
        return self.end + self.loop + tuple(inverse(e) for e in reversed(self.end))


def _lace(face: Face) -> Lace:
    """Walk the bottom edge to x = c+1, climb to (c+1, j), which is a corner of
    the face, then move the base to another corner if that shortens the end."""
    c, j = face.i, face.j
    attach = (c + 1, j)
    climb = [(x, 0) for x in range(c + 2)] + [(c + 1, y) for y in range(1, j + 1)]
    base = tuple(_path(climb))
    best = base
    loop = face.loop_from(attach)
    forward = (loop[:1], loop[:2])
    backward = ((inverse(loop[2]),), (inverse(loop[2]), inverse(loop[1])))
    for arc in forward + backward:
        cand = tuple(_reduce(base + arc))
        if len(cand) < len(best):
            best = cand
    return Lace(face, best)


def generate_laces(k: int) -> list[Lace]:
    triangulate(k)
    return [_lace(f) for f in face_order(k)]


def generate_sequence(k: int) -> list[OEdge]:
    out: list[OEdge] = []
    for lace in generate_laces(k):
        out.extend(lace.edges)
    return out


def is_well_formed(seq: Sequence[OEdge]) -> bool:
    return all(seq[i][1] == seq[i + 1][0] for i in range(len(seq) - 1))


@dataclass
class BlockDerivation:
    ok: bool
    removals: list[tuple[int, OEdge]]
    residue: list[OEdge]

    def __bool__(self) -> bool:
        return self.ok


def verify_block_derivation(seq: Sequence[OEdge], k: int) -> BlockDerivation:
    """Peel innermost mirror pairs; the result must be the boundary loop."""
    t = triangulate(k)
    if not is_well_formed(seq) or not all(t.has_edge(e) for e in seq):
        return BlockDerivation(False, [], list(seq))
    stack: list[OEdge] = []
    removals = []
    for pos, e in enumerate(seq):
        if stack and stack[-1] == inverse(e):
            removals.append((pos, stack.pop()))
        else:
            stack.append(e)
    return BlockDerivation(stack == list(t.boundary), removals, stack)


@dataclass
class LaceDecomposition:
    ok: bool
    laces: list[Lace]
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_lace_decomposition(seq: Sequence[OEdge], k: int, max_end: int | None = None) -> LaceDecomposition:
    """Parse into laces by backtracking over end lengths."""
    t = triangulate(k)
    limit = 2 * k if max_end is None else max_end
    seq = list(seq)
    if not is_well_formed(seq):
        return LaceDecomposition(False, [], "sequence is not well formed")
    n = len(seq)

    def options(pos: int, used: set):
        """Lace candidates starting at pos, shortest end first."""
        if seq[pos][0] != ORIGIN:
            return
        for m in range(0, limit + 1):
            if pos + 2 * m + 3 > n:
                return
            end = seq[pos : pos + m]
            face = t.ccw_face(seq[pos + m : pos + m + 3])
            if face is None or face in used:
                continue
            if seq[pos + m + 3 : pos + 2 * m + 3] == [inverse(e) for e in reversed(end)]:
                yield Lace(face, tuple(end))

    # explicit backtracking stack keeps deep sequences off the call stack
    found: list[Lace] = []
    used: set[Face] = set()
    pos = 0
    stack = [options(0, used)] if n else []
    while stack and pos < n:
        lace = next(stack[-1], None)
        if lace is None:
            stack.pop()
            if found:
                last = found.pop()
                used.discard(last.face)
                pos -= len(last.edges)
            continue
        found.append(lace)
        used.add(lace.face)
        pos += len(lace.edges)
        if pos < n:
            stack.append(options(pos, used))
    if pos != n:
        return LaceDecomposition(False, [], "no parse into laces with ends of at most %d edges" % limit)
    if used != set(t.faces):
        return LaceDecomposition(False, found, "some face has no lace")
    return LaceDecomposition(True, found)


def euclidean_end_length(lace: Lace, k: int) -> float:
    """Length of one end with the simplex scaled to unit legs."""
    return sum(math.dist(a, b) for a, b in lace.end) / k


# rendering

_SIZE = 400
_PAD = 20


def _xy(v: Vertex, k: int) -> tuple[float, float]:
    scale = (_SIZE - 2 * _PAD) / k
    return (_PAD + v[0] * scale, _SIZE - _PAD - v[1] * scale)


def render_frame(seq: Sequence[OEdge], upto: int, k: int, laces: Sequence[Lace]) -> tuple[str, int]:
    """SVG text for the prefix of length ``upto`` and the highlighted lace index."""
    t = triangulate(k)
    bounds, acc = [], 0
    for lace in laces:
        acc += len(lace.edges)
        bounds.append(acc)
    current = next(i for i, b in enumerate(bounds) if upto <= b)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}" data-face="{current}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    poly = " ".join("%.2f,%.2f" % _xy(c, k) for c in laces[current].face.corners)
    lines.append(f'<polygon points="{poly}" fill="#ffd166" stroke="none"/>')
    for e in sorted(tuple(sorted(e)) for e in t.edges):
        (x1, y1), (x2, y2) = _xy(e[0], k), _xy(e[1], k)
        lines.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="#bbbbbb" stroke-width="1"/>')
    pts = [seq[0][0]] + [e[1] for e in seq[:upto]]
    path = " ".join("%.2f,%.2f" % _xy(v, k) for v in pts)
    lines.append(f'<polyline points="{path}" fill="none" stroke="#1d3557" stroke-width="2"/>')
    hx, hy = _xy(seq[upto - 1][1], k)
    lines.append(f'<circle cx="{hx:.2f}" cy="{hy:.2f}" r="4" fill="#e63946"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n", current


def emit_svg(seq: Sequence[OEdge], k: int, out_dir: str | Path) -> list[tuple[Path, int]]:
    """Write frame_0001.svg ... one per prefix; returns (path, lace index) pairs."""
    dec = verify_lace_decomposition(seq, k)
    if not dec:
        raise ValueError(f"sequence does not decompose into laces: {dec.reason}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames = []
    for upto in range(1, len(seq) + 1):
        text, current = render_frame(seq, upto, k, dec.laces)
        path = out / f"frame_{upto:04d}.svg"
        path.write_text(text, encoding="utf-8")
        frames.append((path, current))
    return frames


def sequence_as_json(seq: Sequence[OEdge]) -> list:
    return [[list(a), list(b)] for a, b in seq]
