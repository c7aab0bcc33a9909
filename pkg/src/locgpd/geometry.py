"""Continuum examples: spherical-area groupoids, the tetrahedron witness, period
lattices, and the local group on the universal cover of a punctured plane.

Arrows are written (target, source, a) and compose right to left:
``(z, y, a) . (y, x, a') = (z, x, a + a' + A(xyz))`` when the product is defined.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import Arrow, FiniteLocalGroupoid

FOUR_PI = 4 * math.pi
COMPOSE_TOL = 1e-9
ANTIPODAL_TOL = 1e-12

Vec = tuple[float, float, float]


class DegenerateTriangle(ValueError):
    pass


class NotComposable(ValueError):
    pass


class SegmentHitsDisk(ValueError):
    pass


class NotClosed(UserWarning):
    pass


def unit(v: Sequence[float]) -> Vec:
    a = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(a))
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    a = a / n
    return (float(a[0]), float(a[1]), float(a[2]))


def _antipodal(x: Vec, y: Vec, tol: float = ANTIPODAL_TOL) -> bool:
    return math.dist(x, tuple(-c for c in y)) < tol


def _close(x: Vec, y: Vec, tol: float = COMPOSE_TOL) -> bool:
    return math.dist(x, y) < tol


def signed_triangle_area(x: Vec, y: Vec, z: Vec) -> float:
    """Signed solid angle of the geodesic triangle xyz, in (-2pi, 2pi]."""
    for p, q in ((x, y), (y, z), (z, x)):
        if _antipodal(p, q):
            raise DegenerateTriangle("two vertices are antipodal")
    xa, ya, za = np.asarray(x), np.asarray(y), np.asarray(z)
    num = float(np.dot(xa, np.cross(ya, za)))
    den = 1.0 + float(np.dot(xa, ya) + np.dot(ya, za) + np.dot(za, xa))
    return 2.0 * math.atan2(num, den)


# the sphere groupoid without the area quotient


@dataclass(frozen=True)
class SphereArrow:
    y: Vec
    x: Vec
    a: float

    def __post_init__(self):
        if _antipodal(self.x, self.y):
            raise DegenerateTriangle("source and target are antipodal")

    @classmethod
    def unit_at(cls, x: Vec) -> "SphereArrow":
        return cls(x, x, 0.0)

    def inverse(self) -> "SphereArrow":
        return SphereArrow(self.x, self.y, -self.a)

    def reduced(self) -> "SphereArrow":
        """The image in the globalizable quotient, areas mod 4pi."""
        return SphereArrow(self.y, self.x, math.remainder(self.a, FOUR_PI))


def mult_sphere(g: SphereArrow, h: SphereArrow, tol: float = COMPOSE_TOL) -> SphereArrow | None:
    if not _close(g.x, h.y, tol):
        raise NotComposable("source of the left factor differs from target of the right")
    z, y, x = g.y, g.x, h.x
    if _antipodal(x, z):
        return None
    area = signed_triangle_area(x, y, z)
    if not -math.pi < area < math.pi:
        return None
    return SphereArrow(z, x, g.a + h.a + area)


# the tetrahedron witness

TETRA = tuple(unit(v) for v in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)))


def tetrahedron_points(reflect: bool = False) -> list[Vec]:
    """x1..x7: odd points are vertices, even points are midpoints of the edges
    joining their neighbours, all projected to the sphere."""
    t = [TETRA[0], TETRA[1], TETRA[2], TETRA[3]]
    if reflect:
        t = [(-p[0], p[1], p[2]) for p in t]
    pts: list[Vec] = []
    for i, v in enumerate(t):
        if i:
            prev = t[i - 1]
            pts.append(unit([prev[k] + v[k] for k in range(3)]))
        pts.append(v)
    return pts


def tetrahedron_arrows(reflect: bool = False) -> dict[str, SphereArrow]:
    pts = tetrahedron_points(reflect)
    return {name: SphereArrow(pts[i + 1], pts[i], 0.0) for i, name in enumerate("ABCDEF")}


LEFT_BRACKETING = ("F", ("E", (("D", ("C", "B")), "A")))
RIGHT_BRACKETING = ((("F", (("E", "D"), "C")), "B"), "A")


def evaluate_sphere(expr, arrows: dict[str, SphereArrow]) -> SphereArrow | None:
    if isinstance(expr, str):
        return arrows[expr]
    left = evaluate_sphere(expr[0], arrows)
    right = evaluate_sphere(expr[1], arrows)
    if left is None or right is None:
        return None
    return mult_sphere(left, right)


@dataclass(frozen=True)
class TetraWitness:
    left: float
    right: float
    reflected: bool

    @property
    def difference(self) -> float:
        return self.left - self.right

    def as_dict(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "difference": self.difference,
            "left_bracketing": "F(E((D(CB))A))",
            "right_bracketing": "((F((ED)C))B)A",
            "reflected_labeling": self.reflected,
        }


def tetrahedron_witness() -> TetraWitness:
    """Evaluate both bracketings; the mirror labeling is used if needed so that
    the left bracketing carries the positive value."""
    for reflect in (False, True):
        arrows = tetrahedron_arrows(reflect)
        left = evaluate_sphere(LEFT_BRACKETING, arrows)
        right = evaluate_sphere(RIGHT_BRACKETING, arrows)
        if left is None or right is None:
            raise RuntimeError("a tetrahedron partial product is undefined")
        if left.a > 0:
            return TetraWitness(left.a, right.a, reflect)
    raise RuntimeError("neither labeling gives a positive left value")


# the product of two spheres with weight lambda


@dataclass(frozen=True)
class LambdaArrow:
    y: tuple[Vec, Vec]
    x: tuple[Vec, Vec]
    a: float
    lam: float

    def __post_init__(self):
        if _antipodal(self.x[0], self.y[0]) or _antipodal(self.x[1], self.y[1]):
            raise DegenerateTriangle("source and target are antipodal in a factor")

    @classmethod
    def unit_at(cls, x: tuple[Vec, Vec], lam: float) -> "LambdaArrow":
        return cls(x, x, 0.0, lam)


def mult_lambda(g: LambdaArrow, h: LambdaArrow, tol: float = COMPOSE_TOL) -> LambdaArrow | None:
    if g.lam != h.lam:
        raise NotComposable("different weights")
    if not (_close(g.x[0], h.y[0], tol) and _close(g.x[1], h.y[1], tol)):
        raise NotComposable("source of the left factor differs from target of the right")
    (z, z2), (y, y2), (x, x2) = g.y, g.x, h.x
    if _antipodal(x, z) or _antipodal(x2, z2):
        return None
    a1 = signed_triangle_area(x, y, z)
    a2 = signed_triangle_area(x2, y2, z2)
    if not -math.pi < a1 < math.pi:
        return None
    if g.lam != 0 and not abs(a2) < math.pi / abs(g.lam):
        return None
    return LambdaArrow(g.y, h.x, g.a + h.a + a1 + g.lam * a2, g.lam)


# sampling


def random_unit(rng: np.random.Generator) -> Vec:
    while True:
        v = rng.normal(size=3)
        if np.linalg.norm(v) > 1e-6:
            return unit(v)


def near(rng: np.random.Generator, p: Vec, spread: float) -> Vec:
    return unit(np.asarray(p) + spread * rng.normal(size=3))


def quad_defect(w: Vec, x: Vec, y: Vec, z: Vec) -> float:
    """A(xyz) + A(wxz) - A(wxy) - A(wyz), which is a multiple of 4pi."""
    return (
        signed_triangle_area(x, y, z)
        + signed_triangle_area(w, x, z)
        - signed_triangle_area(w, x, y)
        - signed_triangle_area(w, y, z)
    )


# batched areas; the scalar products above stay the reference route

SCALAR_SAMPLES = 200
EXACT_TOL = 1e-9


def _normalize_rows(a: np.ndarray) -> np.ndarray:
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def _areas(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    num = np.einsum("ij,ij->i", x, np.cross(y, z))
    den = 1.0 + np.einsum("ij,ij->i", x, y) + np.einsum("ij,ij->i", y, z) + np.einsum("ij,ij->i", z, x)
    return 2.0 * np.arctan2(num, den)


def _apart(*pts: np.ndarray) -> np.ndarray:
    """No two of the points are (nearly) antipodal."""
    ok = np.ones(len(pts[0]), dtype=bool)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            ok &= np.linalg.norm(pts[i] + pts[j], axis=1) >= ANTIPODAL_TOL
    return ok


def _quad(w, x, y, z):
    """The four triangle areas used by the two bracketings of f, g, h with
    f: y -> z, g: x -> y, h: w -> x."""
    return _areas(x, y, z), _areas(w, x, z), _areas(w, x, y), _areas(w, y, z)


def _sample(rng: np.random.Generator, n: int, spread: float):
    w = _normalize_rows(rng.normal(size=(n, 3)))
    x, y, z = (_normalize_rows(w + spread * rng.normal(size=(n, 3))) for _ in range(3))
    return w, x, y, z


def _row(a: np.ndarray, i: int) -> Vec:
    return (float(a[i, 0]), float(a[i, 1]), float(a[i, 2]))


@dataclass
class QuadCheck:
    samples: int
    max_mod_error: float
    admissible: int
    max_exact_error: float
    scalar_checked: int = 0
    scalar_disagreement: float = 0.0
    witness: list | None = None
    violations: int = 0

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "max_error_mod_period": self.max_mod_error,
            "admissible_triples": self.admissible,
            "max_error_admissible": self.max_exact_error,
            "scalar_route_checked": self.scalar_checked,
            "scalar_route_disagreement": self.scalar_disagreement,
            "worst_triple": self.witness,
            "admissible_violations": self.violations,
        }


def _scalar_sphere(w: Vec, x: Vec, y: Vec, z: Vec) -> float | None:
    f, g_, h = SphereArrow(z, y, 0.0), SphereArrow(y, x, 0.0), SphereArrow(x, w, 0.0)
    fg, gh = mult_sphere(f, g_), mult_sphere(g_, h)
    if fg is None or gh is None:
        return None
    left, right = mult_sphere(fg, h), mult_sphere(f, gh)
    if left is None or right is None:
        return None
    return left.a - right.a


def quad_check(samples: int, seed: int, spread: float = 0.9) -> QuadCheck:
    """Quadrangle identity on random quadruples, and exact associativity of
    the sphere product on the admissible ones."""
    rng = np.random.default_rng(seed)
    w, x, y, z = _sample(rng, samples, spread)
    ok = _apart(w, x, y, z)
    a1, a2, a3, a4 = _quad(w, x, y, z)
    d = (a1 + a2) - (a3 + a4)
    mod = np.abs(np.remainder(d + 0.5 * FOUR_PI, FOUR_PI) - 0.5 * FOUR_PI)
    inside = ok & (np.abs(a1) < math.pi) & (np.abs(a2) < math.pi) & (np.abs(a3) < math.pi) & (np.abs(a4) < math.pi)
    exact = np.where(inside, np.abs(d), 0.0)
    worst = None
    if inside.any():
        i = int(np.argmax(exact))
        worst = [list(_row(p, i)) for p in (w, x, y, z)]

    checked, disagreement = 0, 0.0
    for i in range(min(samples, SCALAR_SAMPLES)):
        if not ok[i]:
            continue
        v = _scalar_sphere(*(_row(p, i) for p in (w, x, y, z)))
        checked += 1
        if (v is None) != (not inside[i]):
            disagreement = math.inf
        elif v is not None:
            disagreement = max(disagreement, abs(v - d[i]))
    return QuadCheck(
        samples,
        float(mod[ok].max(initial=0.0)),
        int(inside.sum()),
        float(exact.max(initial=0.0)),
        checked,
        disagreement,
        worst,
        int((exact >= EXACT_TOL).sum()),
    )


def _scalar_lambda(lam: float, pts) -> float | None:
    (w, w2), (x, x2), (y, y2), (z, z2) = pts
    f = LambdaArrow((z, z2), (y, y2), 0.0, lam)
    g_ = LambdaArrow((y, y2), (x, x2), 0.0, lam)
    h = LambdaArrow((x, x2), (w, w2), 0.0, lam)
    fg, gh = mult_lambda(f, g_), mult_lambda(g_, h)
    if fg is None or gh is None:
        return None
    left, right = mult_lambda(fg, h), mult_lambda(f, gh)
    if left is None or right is None:
        return None
    return left.a - right.a


def lambda_assoc_check(samples: int, seed: int, lam: float, spread: float = 0.6) -> QuadCheck:
    """Both bracketings of random admissible triples in the weighted product.

    ``max_mod_error`` is measured against the weighted period 4pi*|lam|
    (and 4pi on the first factor), so it stays small whatever the windows do.
    """
    lam = float(lam)
    rng = np.random.default_rng(seed)
    w, x, y, z = _sample(rng, samples, spread)
    w2, x2, y2, z2 = _sample(rng, samples, spread)
    ok = _apart(w, x, y, z) & _apart(w2, x2, y2, z2)
    a = _quad(w, x, y, z)
    b = _quad(w2, x2, y2, z2)
    inside = ok.copy()
    for t in a:
        inside &= np.abs(t) < math.pi
    if lam != 0:
        for t in b:
            inside &= np.abs(t) < math.pi / abs(lam)
    d1 = (a[0] + a[1]) - (a[2] + a[3])
    d2 = (b[0] + b[1]) - (b[2] + b[3])
    d = d1 + lam * d2

    def off(v, period):
        return np.abs(np.remainder(v + 0.5 * period, period) - 0.5 * period)

    mod = off(d1, FOUR_PI) + (off(lam * d2, FOUR_PI * abs(lam)) if lam else 0.0)
    exact = np.where(inside, np.abs(d), 0.0)
    worst = None
    if inside.any():
        i = int(np.argmax(exact))
        worst = [[list(_row(p, i)), list(_row(q, i))] for p, q in ((w, w2), (x, x2), (y, y2), (z, z2))]

    checked, disagreement = 0, 0.0
    for i in range(min(samples, SCALAR_SAMPLES)):
        if not ok[i]:
            continue
        pts = [(_row(p, i), _row(q, i)) for p, q in ((w, w2), (x, x2), (y, y2), (z, z2))]
        v = _scalar_lambda(lam, pts)
        checked += 1
        if (v is None) != (not inside[i]):
            disagreement = math.inf
        elif v is not None:
            disagreement = max(disagreement, abs(v - d[i]))
    return QuadCheck(
        samples,
        float(mod[ok].max(initial=0.0)),
        int(inside.sum()),
        float(exact.max(initial=0.0)),
        checked,
        disagreement,
        worst,
        int((exact >= EXACT_TOL).sum()),
    )


# periods


@dataclass(frozen=True)
class PeriodLattice:
    lam: Fraction | float
    generator: float | None
    gap: float | None = None
    bound: int | None = None
    non_discrete_evidence: bool = False
    base: float = FOUR_PI

    def as_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "period_base": self.base,
            "generator": self.generator,
            "gap": self.gap,
            "bound": self.bound,
            "non_discreteness_evidence": self.non_discrete_evidence,
        }


def monodromy_lattice(lam, bound: int = 10_000, threshold: float = 1e-3 * FOUR_PI) -> PeriodLattice:
    """Periods 4pi(m + lam n): cyclic for rational lam, probed by a gap search otherwise."""
    if isinstance(lam, (int, Fraction)) or (isinstance(lam, str) and "/" in lam):
        q = Fraction(lam)
        gen = FOUR_PI * math.gcd(q.numerator, q.denominator) / q.denominator
        return PeriodLattice(q, gen)
    lam = float(lam)
    n = np.arange(1, bound + 1, dtype=float)
    m = np.clip(np.rint(-lam * n), -bound, bound)
    gap = float(min(1.0, np.min(np.abs(m + lam * n)))) * FOUR_PI
    return PeriodLattice(lam, None, gap, bound, gap < threshold)


def parse_lambda(text: str):
    """Exact for integers and p/q, float otherwise."""
    try:
        return Fraction(text) if ("/" in text or text.lstrip("-").isdigit()) else float(text)
    except ValueError:
        raise ValueError(f"cannot read lambda from {text!r}") from None


# the universal cover of the plane minus a disk

DISK_CENTER = (1.0, 0.0)
DISK_RADIUS = 0.05
BALL_RADIUS = 0.75


@dataclass(frozen=True)
class CoverPoint:
    p: tuple[float, float]
    w: int = 0

    def __post_init__(self):
        if math.dist(self.p, DISK_CENTER) <= DISK_RADIUS:
            raise SegmentHitsDisk("point lies in the removed disk")

    @property
    def in_ball(self) -> bool:
        return self.w == 0 and math.hypot(*self.p) < BALL_RADIUS

    def key(self, digits: int = 9) -> tuple:
        return (round(self.p[0], digits) + 0.0, round(self.p[1], digits) + 0.0, self.w)


ORIGIN = CoverPoint((0.0, 0.0), 0)


def _segment_hits_disk(p, q) -> bool:
    px, py = p[0] - DISK_CENTER[0], p[1] - DISK_CENTER[1]
    dx, dy = q[0] - p[0], q[1] - p[1]
    ll = dx * dx + dy * dy
    t = 0.0 if ll == 0 else max(0.0, min(1.0, -(px * dx + py * dy) / ll))
    return math.hypot(px + t * dx, py + t * dy) <= DISK_RADIUS


def ray_crossings(p, q) -> int:
    """Signed crossings of the downward ray below the disk; left to right is +1."""
    cx = DISK_CENTER[0]
    left_p, left_q = p[0] < cx, q[0] < cx
    if left_p == left_q:
        return 0
    t = (cx - p[0]) / (q[0] - p[0])
    y = p[1] + t * (q[1] - p[1])
    if y >= DISK_CENTER[1] - DISK_RADIUS:
        return 0
    return 1 if left_p else -1


def _lift(start: CoverPoint, end) -> CoverPoint | None:
    if _segment_hits_disk(start.p, end):
        return None
    return CoverPoint((float(end[0]), float(end[1])), start.w + ray_crossings(start.p, end))


def cover_mult(g: CoverPoint, h: CoverPoint) -> CoverPoint | None:
    """Lift the translated segment; ``None`` when it meets the disk or neither
    factor lies over the base ball."""
    end = (g.p[0] + h.p[0], g.p[1] + h.p[1])
    if h.in_ball:
        return _lift(g, end)
    if g.in_ball:
        return _lift(h, end)
    return None


def cover_inverse(g: CoverPoint) -> CoverPoint | None:
    return CoverPoint((-g.p[0], -g.p[1]), 0) if g.in_ball else None


U_VEC = (0.6, -0.35)
V_VEC = (0.6, 0.35)


@dataclass(frozen=True)
class CoverWitness:
    a: CoverPoint
    b: CoverPoint
    c: CoverPoint
    left: CoverPoint
    right: CoverPoint
    associator: CoverPoint

    def as_dict(self) -> dict:
        def pt(q: CoverPoint):
            return {"p": list(q.p), "w": q.w}

        return {k: pt(getattr(self, k)) for k in ("a", "b", "c", "left", "right", "associator")}


def cover_witness() -> CoverWitness:
    a = CoverPoint(U_VEC)
    b = CoverPoint(V_VEC)
    c = CoverPoint((-U_VEC[0], -U_VEC[1]))
    ab, bc = cover_mult(a, b), cover_mult(b, c)
    left, right = cover_mult(ab, c), cover_mult(a, bc)
    # left . right^-1, with right^-1 taken over the same plane point on sheet 0
    assoc = cover_mult(left, CoverPoint((-right.p[0], -right.p[1])))
    return CoverWitness(a, b, c, left, right, assoc)


def cover_grid(windings: Iterable[int] = (-1, 0, 1)) -> list[CoverPoint]:
    out = []
    for w in windings:
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                p = (i * U_VEC[0] + j * V_VEC[0], i * U_VEC[1] + j * V_VEC[1])
                out.append(CoverPoint((round(p[0], 12) + 0.0, round(p[1], 12) + 0.0), w))
    return out


# export to finite tables


def _export(
    objects: list[str],
    elements: list,
    name: Callable,
    ends: Callable,
    key: Callable,
    mult: Callable,
    inverse: Callable,
    units: dict[str, object],
) -> FiniteLocalGroupoid:
    ids = {key(e): name(e) for e in elements}
    arrows = [Arrow(name(e), *ends(e)) for e in elements]
    table: dict[tuple[str, str], str] = {}
    dropped = []
    for g in elements:
        for h in elements:
            if ends(g)[0] != ends(h)[1]:
                continue
            prod = mult(g, h)
            if prod is None:
                continue
            k = key(prod)
            if k in ids:
                table[(name(g), name(h))] = ids[k]
            else:
                dropped.append((name(g), name(h)))
    inv = {}
    for g in elements:
        gi = inverse(g)
        if gi is not None and key(gi) in ids:
            inv[name(g)] = ids[key(gi)]
    if dropped:
        warnings.warn(NotClosed(f"{len(dropped)} products fall outside the sample, e.g. {dropped[:3]}"), stacklevel=3)
    unit_ids = {x: name(u) for x, u in units.items()}
    return FiniteLocalGroupoid(objects, arrows, unit_ids, table, inv)


def tetrahedron_sample() -> tuple[list[Vec], list[SphereArrow]]:
    """Points x1..x7, units, A..F and every partial product of every bracketing."""
    w = tetrahedron_witness()
    arrows = tetrahedron_arrows(w.reflected)
    pts = tetrahedron_points(w.reflected)
    letters = [arrows[c] for c in "FEDCBA"]
    values: dict[tuple[int, int], list[SphereArrow]] = {}
    n = len(letters)
    for i in range(n):
        values[(i, i)] = [letters[i]]
    for span in range(1, n):
        for i in range(n - span):
            j = i + span
            out = []
            for k in range(i, j):
                for l in values[(i, k)]:
                    for r in values[(k + 1, j)]:
                        p = mult_sphere(l, r)
                        if p is not None and not any(_same(p, q) for q in out):
                            out.append(p)
            values[(i, j)] = out
    sample = [SphereArrow.unit_at(p) for p in pts]
    for vs in values.values():
        for v in vs:
            if not any(_same(v, q) for q in sample):
                sample.append(v)
    return pts, sample


def _same(p: SphereArrow, q: SphereArrow) -> bool:
    return _close(p.x, q.x) and _close(p.y, q.y) and abs(p.a - q.a) < COMPOSE_TOL


def export_tetrahedron() -> FiniteLocalGroupoid:
    pts, sample = tetrahedron_sample()

    def index(v: Vec) -> int:
        return next(i for i, p in enumerate(pts) if _close(p, v))

    def key(s: SphereArrow):
        return (index(s.y), index(s.x), round(s.a, 6) + 0.0)

    def name(s: SphereArrow) -> str:
        j, i, a = key(s)
        return f"x{j + 1}<-x{i + 1}:{a:+.6f}"

    def ends(s: SphereArrow):
        return (f"x{index(s.x) + 1}", f"x{index(s.y) + 1}")

    def inverse(s: SphereArrow):
        return s if _close(s.x, s.y) and s.a == 0 else None

    objects = [f"x{i + 1}" for i in range(len(pts))]
    units = {f"x{i + 1}": SphereArrow.unit_at(p) for i, p in enumerate(pts)}
    return _export(objects, sample, name, ends, key, _safe_sphere, inverse, units)


def _safe_sphere(g: SphereArrow, h: SphereArrow):
    try:
        return mult_sphere(g, h)
    except DegenerateTriangle:
        return None


def export_cover(points: Sequence[CoverPoint] | None = None) -> FiniteLocalGroupoid:
    pts = cover_grid() if points is None else list(points)
    if not any(p.key() == ORIGIN.key() for p in pts):
        pts = [ORIGIN] + pts

    def name(c: CoverPoint) -> str:
        x, y, w = c.key(6)
        return f"({x:+.3f},{y:+.3f})#{w}"

    return _export(
        ["*"],
        pts,
        name,
        lambda c: ("*", "*"),
        lambda c: c.key(6),
        cover_mult,
        cover_inverse,
        {"*": ORIGIN},
    )


def export_finite(kind: str, points: Sequence | None = None) -> FiniteLocalGroupoid:
    """Finite table from a sampled continuum example.

    ``kind`` is ``"tetrahedron"``, ``"cover"`` (grid by default, or the given
    cover points), or ``"sphere"`` with a list of unit vectors, which yields
    only the units.
    """
    if kind == "tetrahedron":
        return export_tetrahedron()
    if kind == "cover":
        return export_cover(points)
    if kind == "sphere":
        pts = [unit(p) for p in (points or [])]
        objects = [f"x{i + 1}" for i in range(len(pts))]
        arrows = [Arrow(f"1_{o}", o, o) for o in objects]
        units = {o: f"1_{o}" for o in objects}
        mult = {(f"1_{o}", f"1_{o}"): f"1_{o}" for o in objects}
        inv = {f"1_{o}": f"1_{o}" for o in objects}
        return FiniteLocalGroupoid(objects, arrows, units, mult, inv)
    raise ValueError(f"unknown sample kind {kind!r}")
