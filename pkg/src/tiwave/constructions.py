"""Builders for the step-function wavelets gamma_n, psi_n, w_n and relatives.

All constructions live on the four-interval template

    S_n = [a, b) U [c, d) U [-b, -a) U [-d, -c)

with ``a = 2^(n-1) pi / (2^n - 1)``, ``b = 2a``, ``c = 2^(n-1)(2^n - 2) pi /
(2^n - 1)``, ``d = 2^n a`` and ``e = (2^n - 2) pi / (2^n - 1)``.  A wavelet
supported in S_n is determined by its values on ``[e, b)``: the rest follows
from the affine images ``xi -> 2^(n-1) xi`` (onto ``[c, d)``), ``xi -> xi - 2pi``
(onto ``[-b, -e)``) and ``xi -> 2^(n-1)(xi - 2pi)`` (onto ``[-d, -c)``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AmplitudeFieldError, DomainError
from .intervals import Interval, IntervalSet, StepFunction
from .scalars import INV_SQRT2, ONE, ZERO, QPi, QuadReal

AMPLITUDES = (ZERO, INV_SQRT2, ONE)

# complementary amplitude sqrt(1 - b^2), kept inside Q(sqrt 2)
_COMPLEMENT = {ZERO: ONE, INV_SQRT2: INV_SQRT2, ONE: ZERO}


@dataclass(frozen=True)
class SnConstants:
    n: int
    a: QPi
    b: QPi
    c: QPi
    d: QPi
    e: QPi

    @property
    def half_period(self) -> QPi:
        """``2^(n-1) pi``."""
        return QPi(2 ** (self.n - 1))

    @property
    def dilation(self) -> Fraction:
        return Fraction(2 ** (self.n - 1))

    def positive_part(self) -> IntervalSet:
        return IntervalSet([Interval(self.a, self.b), Interval(self.c, self.d)])

    def sn(self) -> IntervalSet:
        plus = self.positive_part()
        return plus | -plus

    def free_interval(self) -> Interval:
        """``[e, b)``, the interval that determines the whole wavelet."""
        return Interval(self.e, self.b)

    def to_json(self) -> dict:
        return {"n": self.n, **{k: getattr(self, k).to_json() for k in "abcde"}}


def sn_constants(n: int) -> SnConstants:
    if n < 2:
        raise DomainError(f"S_n constants need n >= 2, got n={n}")
    m = 2**n - 1
    h = 2 ** (n - 1)
    return SnConstants(
        n=n,
        a=QPi(Fraction(h, m)),
        b=QPi(Fraction(2 * h, m)),
        c=QPi(Fraction(h * (2**n - 2), m)),
        d=QPi(Fraction(2**n * h, m)),
        e=QPi(Fraction(2**n - 2, m)),
    )


def _need_n3(n: int, what: str) -> SnConstants:
    if n < 3:
        raise DomainError(f"{what} is defined for n >= 3, got n={n}")
    return sn_constants(n)


def _iv(lo: QPi, hi: QPi) -> Interval:
    return Interval(lo, hi)


def gamma_n(n: int) -> StepFunction:
    """Indicator of ``W_n = [-b, -a) U [a, e) U [c, d)`` (an MSF wavelet)."""
    k = _need_n3(n, "gamma_n")
    return StepFunction([
        (_iv(-k.b, -k.a), ONE),
        (_iv(k.a, k.e), ONE),
        (_iv(k.c, k.d), ONE),
    ])


def psi_n(n: int) -> StepFunction:
    k = _need_n3(n, "psi_n")
    h = k.half_period
    full = QPi(2**n)
    return StepFunction([
        (_iv(-k.b, -k.a), ONE),
        (_iv(k.c, k.a / 2 + h), ONE),
        (_iv(k.e / 2 + h, k.d), ONE),
        (_iv(k.a / 2, k.e / 2), INV_SQRT2),
        (_iv(k.a, k.e), INV_SQRT2),
        (_iv(k.a / 2 + h, k.e / 2 + h), INV_SQRT2),
        (_iv(k.a + full, k.e + full), -INV_SQRT2),
    ])


def w_n(n: int) -> StepFunction:
    k = _need_n3(n, "w_n")
    h = k.half_period
    pi = QPi(1)
    return StepFunction([
        (_iv(-pi, -k.a), ONE),
        (_iv(k.a, k.e), ONE),
        (_iv(h, k.d), ONE),
        (_iv(-k.d, -h), INV_SQRT2),
        (_iv(-k.b, -pi), INV_SQRT2),
        (_iv(k.c, h), INV_SQRT2),
        (_iv(k.e, pi), -INV_SQRT2),
    ])


def shannon() -> StepFunction:
    return StepFunction.pi((-2, -1, ONE), (1, 2, ONE))


@dataclass(frozen=True)
class ProfileCell:
    """One cell of ``[e, b)`` with amplitude and the signs of its four images.

    ``signs`` is ``(free, dilated, shifted, shifted_dilated)``: the signs used
    on the cell itself, on its ``2^(n-1)`` dilate in ``[c, d)``, on its
    ``-2pi`` translate in ``[-b, -e)`` and on its image in ``[-d, -c)``.
    ``None`` selects the default placement.
    """

    lo: QPi
    hi: QPi
    amplitude: QuadReal
    signs: tuple[int, int, int, int] | None = None

    def resolved_signs(self) -> tuple[int, int, int, int]:
        if self.signs is not None:
            return self.signs
        if self.amplitude == INV_SQRT2:
            return (1, 1, 1, -1)
        return (1, 1, 1, 1)


@dataclass(frozen=True)
class AmplitudeSignProfile:
    n: int
    cells: tuple[ProfileCell, ...]

    @classmethod
    def uniform(cls, n: int, amplitudes: Sequence[QuadReal], signs=None) -> AmplitudeSignProfile:
        """Split ``[e, b)`` into ``len(amplitudes)`` equal cells."""
        k = sn_constants(n)
        count = len(amplitudes)
        if count < 1:
            raise DomainError("a profile needs at least one cell")
        width = (k.b - k.e) / count
        cells = []
        for i, amp in enumerate(amplitudes):
            s = None if signs is None else signs[i]
            cells.append(ProfileCell(k.e + width * i, k.e + width * (i + 1), amp, s))
        return cls(n, tuple(cells))

    @property
    def amplitudes(self) -> tuple[QuadReal, ...]:
        return tuple(c.amplitude for c in self.cells)

    def has_partial_amplitude(self) -> bool:
        return any(c.amplitude not in (ZERO, ONE) for c in self.cells)


def build_from_profile(n: int, profile: AmplitudeSignProfile) -> StepFunction:
    """Extend a profile on ``[e, b)`` to a function supported in S_n.

    Signs are taken as given; the default placement (-1 on the ``[-d, -c)``
    image of every partial-amplitude cell) makes the sign product on each
    overlap cell equal to -1.
    """
    k = _need_n3(n, "build_from_profile")
    free = k.free_interval()
    _check_partition(profile, free)
    two_pi = QPi(2)
    dil = k.dilation
    pieces: list[tuple[Interval, QuadReal]] = [
        (_iv(k.a, k.e), ONE),
        (_iv(-k.e, -k.a), ONE),
    ]
    for cell in profile.cells:
        if cell.amplitude not in _COMPLEMENT:
            raise AmplitudeFieldError(f"amplitude {cell.amplitude} is not one of 0, 1/sqrt2, 1")
        amp = cell.amplitude
        comp = _COMPLEMENT[amp]
        s_free, s_dil, s_shift, s_both = cell.resolved_signs()
        iv = _iv(cell.lo, cell.hi)
        pieces.append((iv, amp * s_free))
        pieces.append((iv.scale(dil), comp * s_dil))
        pieces.append((iv.shift(-two_pi), comp * s_shift))
        pieces.append((iv.shift(-two_pi).scale(dil), amp * s_both))
    return StepFunction(pieces)


def _check_partition(profile: AmplitudeSignProfile, free: Interval) -> None:
    cells = profile.cells
    if not cells:
        raise DomainError("a profile needs at least one cell")
    if cells[0].lo != free.lo or cells[-1].hi != free.hi:
        raise DomainError(f"profile cells must cover {free} exactly")
    for prev, nxt in zip(cells, cells[1:]):
        if prev.hi != nxt.lo:
            raise DomainError("profile cells must be contiguous and sorted")
    for c in cells:
        if not c.lo < c.hi:
            raise DomainError("profile cells must be non-empty")


def w_n_profile(n: int) -> AmplitudeSignProfile:
    """The profile of w_n: 1/sqrt2 with sign -1 on ``[e, pi)``, zero on ``[pi, b)``."""
    k = _need_n3(n, "w_n_profile")
    pi = QPi(1)
    return AmplitudeSignProfile(n, (
        ProfileCell(k.e, pi, INV_SQRT2, (-1, 1, 1, 1)),
        ProfileCell(pi, k.b, ZERO),
    ))


def random_sn_profile(n: int, cell_count: int, seed: int) -> AmplitudeSignProfile:
    if cell_count < 1:
        raise DomainError(f"cell_count must be >= 1, got {cell_count}")
    _need_n3(n, "random_sn_wavelet")
    rng = random.Random(seed)
    amps = [rng.choice(AMPLITUDES) for _ in range(cell_count)]
    return AmplitudeSignProfile.uniform(n, amps)


def random_sn_wavelet(n: int, cell_count: int, seed: int) -> StepFunction:
    return build_from_profile(n, random_sn_profile(n, cell_count, seed))
