"""Half-open interval unions and piecewise-constant functions on the line.

All endpoints are exact rational multiples of pi (:class:`QPi`) and every
interval is half-open, ``[lo, hi)``.  Two abutting intervals are therefore
disjoint, and "non-empty intersection" always means "intersection of positive
measure".  Every container is normalized on construction, so equality of two
objects is plain structural equality.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise
from typing import Callable, Iterable, Sequence

from .scalars import ONE, ZERO, QPi, QuadReal, as_rational

STEPFUNCTION_SCHEMA_ID = "tiwave.stepfunction/1"
HALF_OPEN_NOTE = "pieces are half-open intervals [lo, hi); value is a + b*sqrt(2)"


@dataclass(frozen=True, order=True)
class Interval:
    lo: QPi
    hi: QPi

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    @classmethod
    def pi(cls, lo, hi) -> Interval:
        """Build ``[lo*pi, hi*pi)`` from rational coefficients."""
        return cls(QPi(as_rational(lo)), QPi(as_rational(hi)))

    @property
    def length(self) -> QPi:
        return self.hi - self.lo

    def __contains__(self, x: QPi) -> bool:
        return self.lo <= x < self.hi

    def intersect(self, other: Interval) -> Interval | None:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return Interval(lo, hi) if lo < hi else None

    def shift(self, t: QPi) -> Interval:
        return Interval(self.lo + t, self.hi + t)

    def scale(self, s) -> Interval:
        s = as_rational(s)
        if s > 0:
            return Interval(self.lo * s, self.hi * s)
        return Interval(self.hi * s, self.lo * s)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi})"

    def to_json(self) -> dict:
        return {"lo": self.lo.to_json(), "hi": self.hi.to_json()}

    @classmethod
    def from_json(cls, obj) -> Interval:
        return cls(QPi.from_json(obj["lo"]), QPi.from_json(obj["hi"]))


def _locate(los: Sequence[QPi], pieces, x: QPi) -> int:
    """Index of the piece containing ``x`` or -1."""
    i = bisect.bisect_right(los, x) - 1
    if i >= 0 and x < pieces[i].hi:
        return i
    return -1


class IntervalSet:
    """A finite union of pairwise disjoint, non-abutting half-open intervals."""

    __slots__ = ("pieces", "_los")

    def __init__(self, intervals: Iterable[Interval] = ()):
        merged: list[Interval] = []
        for iv in sorted(intervals):
            if merged and iv.lo <= merged[-1].hi:
                if iv.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, iv.hi)
            else:
                merged.append(iv)
        self.pieces: tuple[Interval, ...] = tuple(merged)
        self._los = [p.lo for p in self.pieces]

    @classmethod
    def pi(cls, *bounds) -> IntervalSet:
        """``IntervalSet.pi((0, 1), (2, 3))`` is ``[0, pi) U [2pi, 3pi)``."""
        return cls(Interval.pi(lo, hi) for lo, hi in bounds)

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        return "IntervalSet(" + " U ".join(str(p) for p in self.pieces) + ")"

    def __contains__(self, x: QPi) -> bool:
        return _locate(self._los, self.pieces, x) >= 0

    def _sweep(self, other: IntervalSet, keep: Callable[[bool, bool], bool]) -> IntervalSet:
        points = sorted({p for iv in (*self.pieces, *other.pieces) for p in (iv.lo, iv.hi)})
        out = []
        for lo, hi in pairwise(points):
            if keep(lo in self, lo in other):
                out.append(Interval(lo, hi))
        return IntervalSet(out)

    def union(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet((*self.pieces, *other.pieces))

    def intersect(self, other: IntervalSet) -> IntervalSet:
        return self._sweep(other, lambda a, b: a and b)

    def difference(self, other: IntervalSet) -> IntervalSet:
        return self._sweep(other, lambda a, b: a and not b)

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def issubset(self, other: IntervalSet) -> bool:
        return not self.difference(other)

    def measure(self) -> QPi:
        return QPi(sum((p.hi.coeff - p.lo.coeff for p in self.pieces), Fraction(0)))

    def shift(self, t: QPi) -> IntervalSet:
        return IntervalSet(p.shift(t) for p in self.pieces)

    def scale(self, s) -> IntervalSet:
        return IntervalSet(p.scale(s) for p in self.pieces)

    def __neg__(self) -> IntervalSet:
        return self.scale(-1)

    @property
    def lo(self) -> QPi:
        return self.pieces[0].lo

    @property
    def hi(self) -> QPi:
        return self.pieces[-1].hi

    def to_json(self) -> list:
        return [p.to_json() for p in self.pieces]

    @classmethod
    def from_json(cls, obj) -> IntervalSet:
        return cls(Interval.from_json(p) for p in obj)


def set_union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.union(b)


def set_intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.intersect(b)


def set_diff(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.difference(b)


def set_measure(a: IntervalSet) -> QPi:
    return a.measure()


@dataclass(frozen=True)
class AffineMap:
    """``xi -> scale*xi + shift`` with a dyadic scale ``+-2**j``."""

    scale: Fraction
    shift: QPi = QPi(0)

    def __post_init__(self):
        s = as_rational(self.scale)
        if s == 0:
            raise ValueError("affine map scale must be non-zero")
        if not _is_dyadic_power(abs(s)):
            raise ValueError(f"affine map scale must be +-2**j, got {s}")
        object.__setattr__(self, "scale", s)

    @classmethod
    def dilation(cls, j: int) -> AffineMap:
        return cls(Fraction(2) ** j)

    @classmethod
    def translation(cls, t: QPi) -> AffineMap:
        return cls(Fraction(1), t)

    def __call__(self, x: QPi) -> QPi:
        return x * self.scale + self.shift

    def compose(self, inner: AffineMap) -> AffineMap:
        """``self o inner``."""
        return AffineMap(self.scale * inner.scale, inner.shift * self.scale + self.shift)

    def inverse(self) -> AffineMap:
        return AffineMap(1 / self.scale, -(self.shift / self.scale))

    def preimage(self, iv: Interval) -> Interval:
        # for negative scales the image is only equal a.e. (endpoint flips side)
        return iv.shift(-self.shift).scale(1 / self.scale)


def _is_dyadic_power(x: Fraction) -> bool:
    num, den = x.numerator, x.denominator
    return (den == 1 and num & (num - 1) == 0) or (num == 1 and den & (den - 1) == 0)


Piece = tuple[Interval, QuadReal]


class StepFunction:
    """A finitely supported piecewise-constant map from R to Q(sqrt 2).

    Pieces are sorted, disjoint, carry non-zero values, and abutting pieces
    with equal values are merged, so the representation is canonical.
    Overlapping input pieces are summed.
    """

    __slots__ = ("pieces", "_los")

    def __init__(self, pieces: Iterable[tuple[Interval, object]] = ()):
        items = [(iv, QuadReal.coerce(v)) for iv, v in pieces]
        items.sort(key=lambda p: p[0])
        if any(b[0].lo < a[0].hi for a, b in pairwise(items)):
            items = _sum_overlapping(items)
        out: list[Piece] = []
        for iv, v in items:
            if not v:
                continue
            if out and out[-1][0].hi == iv.lo and out[-1][1] == v:
                out[-1] = (Interval(out[-1][0].lo, iv.hi), v)
            else:
                out.append((iv, v))
        self.pieces: tuple[Piece, ...] = tuple(out)
        self._los = [iv.lo for iv, _ in self.pieces]

    @classmethod
    def indicator(cls, s: IntervalSet, value=ONE) -> StepFunction:
        return cls((iv, value) for iv in s)

    @classmethod
    def pi(cls, *triples) -> StepFunction:
        """``StepFunction.pi((lo, hi, value), ...)`` with endpoints in units of pi."""
        return cls((Interval.pi(lo, hi), v) for lo, hi, v in triples)

    def __call__(self, x: QPi) -> QuadReal:
        return step_eval(self, x)

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def is_zero(self) -> bool:
        return not self.pieces

    def __eq__(self, other) -> bool:
        return isinstance(other, StepFunction) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        body = ", ".join(f"{iv}: {v}" for iv, v in self.pieces)
        return f"StepFunction({body})"

    def support(self) -> IntervalSet:
        return IntervalSet(iv for iv, _ in self.pieces)

    def breakpoints(self) -> list[QPi]:
        return sorted({p for iv, _ in self.pieces for p in (iv.lo, iv.hi)})

    def values(self) -> set[QuadReal]:
        return {v for _, v in self.pieces}

    def map_values(self, fn: Callable[[QuadReal], QuadReal]) -> StepFunction:
        return StepFunction((iv, fn(v)) for iv, v in self.pieces)

    def __neg__(self) -> StepFunction:
        return self.map_values(lambda v: -v)

    def __add__(self, other: StepFunction) -> StepFunction:
        return combine((self, other), lambda a, b: a + b)

    def __sub__(self, other: StepFunction) -> StepFunction:
        return combine((self, other), lambda a, b: a - b)

    def __mul__(self, other) -> StepFunction:
        if isinstance(other, StepFunction):
            return combine((self, other), lambda a, b: a * b)
        c = QuadReal.coerce(other)
        return self.map_values(lambda v: v * c)

    __rmul__ = __mul__

    def abs(self) -> StepFunction:
        return self.map_values(abs)

    def square(self) -> StepFunction:
        return self.map_values(lambda v: v * v)

    def restrict(self, s: IntervalSet) -> StepFunction:
        return self * StepFunction.indicator(s)

    def compose(self, m: AffineMap) -> StepFunction:
        return apply_affine(self, m)

    def translate_graph(self, t: QPi) -> StepFunction:
        """The function ``xi -> f(xi - t)`` (graph moved right by ``t``)."""
        return StepFunction((iv.shift(t), v) for iv, v in self.pieces)

    def extent(self) -> QPi:
        """Largest ``|endpoint|``; the support lies inside ``[-R, R)``."""
        if not self.pieces:
            return QPi(0)
        return max(abs(self.pieces[0][0].lo), abs(self.pieces[-1][0].hi))

    def to_json(self) -> dict:
        return {
            "schema": STEPFUNCTION_SCHEMA_ID,
            "convention": HALF_OPEN_NOTE,
            "pieces": [
                {"lo": iv.lo.to_json(), "hi": iv.hi.to_json(), "value": v.to_json()}
                for iv, v in self.pieces
            ],
        }

    @classmethod
    def from_json(cls, obj) -> StepFunction:
        return cls(
            (Interval(QPi.from_json(p["lo"]), QPi.from_json(p["hi"])), QuadReal.from_json(p["value"]))
            for p in obj["pieces"]
        )


def _sum_overlapping(items: list[Piece]) -> list[Piece]:
    points = sorted({p for iv, _ in items for p in (iv.lo, iv.hi)})
    out = []
    for lo, hi in pairwise(points):
        total = ZERO
        for iv, v in items:
            if iv.lo <= lo and hi <= iv.hi:
                total = total + v
        if total:
            out.append((Interval(lo, hi), total))
    return out


def step_eval(f: StepFunction, x: QPi) -> QuadReal:
    i = bisect.bisect_right(f._los, x) - 1
    if i >= 0 and x < f.pieces[i][0].hi:
        return f.pieces[i][1]
    return ZERO


def refine(functions: Sequence[StepFunction]) -> list[QPi]:
    """Sorted breakpoints of the coarsest partition on which all inputs are constant."""
    return sorted({p for f in functions for p in f.breakpoints()})


def cells(functions: Sequence[StepFunction]):
    """Yield ``(Interval, values)`` for each cell of the common refinement.

    Gap cells, where every input vanishes, are included; ``values`` lists the
    value of each input on the cell in input order.
    """
    points = refine(functions)
    cursors = [0] * len(functions)
    for lo, hi in pairwise(points):
        vals = []
        for n, f in enumerate(functions):
            i = cursors[n]
            pcs = f.pieces
            while i < len(pcs) and pcs[i][0].hi <= lo:
                i += 1
            cursors[n] = i
            vals.append(pcs[i][1] if i < len(pcs) and pcs[i][0].lo <= lo else ZERO)
        yield Interval(lo, hi), tuple(vals)


def combine(functions: Sequence[StepFunction], op: Callable[..., QuadReal]) -> StepFunction:
    """Pointwise ``op`` over a common refinement; ``op`` must send all-zero to zero."""
    return StepFunction((iv, op(*vals)) for iv, vals in cells(functions))


def apply_affine(f: StepFunction, m: AffineMap) -> StepFunction:
    """The pullback ``xi -> f(m(xi))``."""
    return StepFunction((m.preimage(iv), v) for iv, v in f.pieces)


def sum_functions(functions: Iterable[StepFunction]) -> StepFunction:
    pieces = [p for f in functions for p in f.pieces]
    return StepFunction(pieces)
