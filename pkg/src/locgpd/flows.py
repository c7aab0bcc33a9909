"""The ladder local group: words in a, b evaluated by flowing along two
invariant vector fields, and the shrinking associators this produces.

The ladder is the union of the lines x = 0 and x = 1 with the rungs
[0, 1] x {n}; the group lives on its open 1/10-neighbourhood.  The field Y is
d/dy everywhere.  The field X is d/dx except on the middle of rung n > 0,
where it is f_n(x) d/dx with f_n = 1 + c_n * bump, c_n chosen so the time-0.8
flow carries x = 1/10 to 9/10 + 1/(100 n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

RADIUS = 0.1
LETTER_TIME = 1 / 20
DEFAULT_STEP = 1e-4
CALIBRATION_TOL = 1e-8
CALIBRATION_TIME = 0.8

LETTERS = {"a": ("X", 1), "A": ("X", -1), "b": ("Y", 1), "B": ("Y", -1)}


class LeftRegion(RuntimeError):
    def __init__(self, point):
        super().__init__(f"trajectory left the ladder neighbourhood at {point}")
        self.point = point


class UndefinedProduct(RuntimeError):
    def __init__(self, step: int, cause: Exception):
        super().__init__(f"product undefined at step {step}: {cause}")
        self.step = step


def distance_to_ladder(x: float, y: float) -> float:
    n = round(y)
    dx = max(0.0, -x, x - 1.0)
    return min(abs(x), abs(x - 1.0), math.hypot(dx, y - n))


def in_region(x: float, y: float) -> bool:
    return distance_to_ladder(x, y) < RADIUS


def bump(x: float) -> float:
    """Smooth, equal to 1 at 1/2, vanishing outside (1/3, 2/3)."""
    u = 6.0 * (x - 0.5)
    if abs(u) >= 1.0:
        return 0.0
    return math.exp(1.0 - 1.0 / (1.0 - u * u))


def _rk4_1d(speed, x: float, time: float, step: float) -> float:
    n = max(1, round(abs(time) / step))
    h = time / n
    for _ in range(n):
        k1 = speed(x)
        k2 = speed(x + 0.5 * h * k1)
        k3 = speed(x + 0.5 * h * k2)
        k4 = speed(x + h * k3)
        x += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
    return x


def _profile(c: float):
    return lambda x: 1.0 + c * bump(x)


def calibration_target(n: int) -> float:
    return 0.9 + 1.0 / (100 * n)


@dataclass(frozen=True)
class Calibration:
    n: int
    amplitude: float
    residual: float
    step: float


@lru_cache(maxsize=None)
def calibrate(n: int, step: float = DEFAULT_STEP, tol: float = CALIBRATION_TOL) -> Calibration:
    """Bisect the bump amplitude until the time-0.8 flow hits its target."""
    if n <= 0:
        return Calibration(n, 0.0, 0.0, step)
    target = calibration_target(n)

    def miss(c: float) -> float:
        return _rk4_1d(_profile(c), 0.1, CALIBRATION_TIME, step) - target

    lo, hi = 0.0, 1.0
    if miss(lo) > 0 or miss(hi) < 0:
        raise RuntimeError("calibration bracket does not contain the target")
    mid = 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = miss(mid)
        if abs(r) < tol:
            break
        if r < 0:
            lo = mid
        else:
            hi = mid
    return Calibration(n, mid, abs(miss(mid)), step)


@dataclass
class LadderFields:
    step: float = DEFAULT_STEP
    calibration_step: float = DEFAULT_STEP

    def amplitude(self, n: int) -> float:
        return calibrate(n, self.calibration_step).amplitude if n > 0 else 0.0

    def x_speed(self, x: float, y: float) -> float:
        n = round(y)
        if 0.1 <= x <= 0.9 and abs(y - n) < 0.1 and n > 0:
            return 1.0 + self.amplitude(n) * bump(x)
        return 1.0

    def flow(self, p: tuple[float, float], fld: str, time: float) -> tuple[float, float]:
        x, y = p
        if not in_region(x, y):
            raise LeftRegion(p)
        steps = max(1, round(abs(time) / self.step))
        h = time / steps
        for _ in range(steps):
            if fld == "Y":
                y += h
            elif fld == "X":
                f = lambda s: self.x_speed(s, y)  # noqa: E731
                k1 = f(x)
                k2 = f(x + 0.5 * h * k1)
                k3 = f(x + 0.5 * h * k2)
                k4 = f(x + h * k3)
                x += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
            else:
                raise ValueError(f"unknown field {fld!r}")
            if not in_region(x, y):
                raise LeftRegion((x, y))
        return (x, y)

    def apply(self, p, letter: str) -> tuple[float, float]:
        fld, sign = LETTERS[letter]
        return self.flow(p, fld, sign * LETTER_TIME)


def flow(p: tuple[float, float], fld: str, time: float, step: float = DEFAULT_STEP) -> tuple[float, float]:
    return LadderFields(step).flow(p, fld, time)


def ladder_word(n: int) -> str:
    """a^-20 b^-20n b^20n a^20 in letters, with B = b^-1 and A = a^-1."""
    up, down = ("b", "B") if n >= 0 else ("B", "b")
    k = 20 * abs(n)
    return "A" * 20 + down * k + up * k + "a" * 20


@dataclass
class Evaluation:
    strategy: str
    point: tuple[float, float]
    trace: list[tuple[str, tuple[float, float]]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"strategy": self.strategy, "point": list(self.point), "checkpoints": [[s, list(p)] for s, p in self.trace]}


def eval_word(letters: Sequence[str], strategy: str = "inside_out", fields: LadderFields | None = None) -> Evaluation:
    """Evaluate a word by invariant flows.

    ``inside_out`` multiplies outward from the middle, one letter on each side
    at a time.  ``split`` evaluates the second half left to right from its
    first letter, then multiplies the first half onto it from right to left.
    Each letter acts as the time-1/20 flow of its field, on either side.
    """
    fields = fields or LadderFields()
    word = list(letters)
    k = len(word)
    p = (0.0, 0.0)
    trace = []
    try:
        if strategy == "inside_out":
            if k % 2:
                raise ValueError("inside-out evaluation needs an even length")
            for i in range(k // 2):
                p = fields.apply(p, word[k // 2 - 1 - i])
                p = fields.apply(p, word[k // 2 + i])
            trace.append(("done", p))
        elif strategy == "split":
            for letter in word[k // 2 :]:
                p = fields.apply(p, letter)
            trace.append(("second_half", p))
            for letter in reversed(word[: k // 2]):
                p = fields.apply(p, letter)
            trace.append(("done", p))
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
    except LeftRegion as exc:
        raise UndefinedProduct(len(trace), exc) from exc
    return Evaluation(strategy, p, trace)


@dataclass
class AssociatorWitness:
    n: int
    point: tuple[float, float]
    expected: tuple[float, float]
    inside_out: Evaluation
    split: Evaluation
    calibration: Calibration | None
    step: float

    def as_dict(self) -> dict:
        cal = self.calibration
        return {
            "n": self.n,
            "witness": list(self.point),
            "expected": list(self.expected),
            "step": self.step,
            "calibration": None if cal is None else {"amplitude": cal.amplitude, "residual": cal.residual},
            "inside_out": self.inside_out.as_dict(),
            "split": self.split.as_dict(),
        }


def associator_witness(n: int, step: float = DEFAULT_STEP, calibration_step: float | None = None) -> AssociatorWitness:
    """Both evaluations of the ladder word for rung n; the split value is an associator."""
    fields = LadderFields(step, step if calibration_step is None else calibration_step)
    word = ladder_word(n)
    io = eval_word(word, "inside_out", fields)
    sp = eval_word(word, "split", fields)
    # inside-out evaluation lands on the unit, so the split value is itself the associator
    point = sp.point
    expected = (1 / (100 * n), 0.0) if n > 0 else (0.0, 0.0)
    cal = calibrate(n, fields.calibration_step) if n > 0 else None
    return AssociatorWitness(n, point, expected, io, sp, cal, step)
