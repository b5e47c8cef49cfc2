"""Brute-force oracles and instance mutators shared by the test modules.

The oracles evaluate the defining sums point by point with ``step_eval`` and
never use the dyadic fold, the overlap-index shortcut or the IntervalSet
sweep, so they are independent of the code paths they check.
"""

from fractions import Fraction

from tiwave.constructions import AmplitudeSignProfile, build_from_profile, sn_constants
from tiwave.intervals import Interval, IntervalSet, StepFunction
from tiwave.scalars import INV_SQRT2, ONE, ZERO, QPi, QuadReal

CONDITIONS = ("i", "ii", "iii", "iv", "v")


def brute_rho(f: StepFunction, xi: Fraction, span: int = 80) -> QuadReal:
    total = ZERO
    for j in range(-span, span + 1):
        v = f(QPi(xi * Fraction(2) ** j))
        total = total + v * v
    return total


def brute_tq(f: StepFunction, q: int, xi: Fraction, span: int = 80) -> QuadReal:
    total = ZERO
    for j in range(span):
        s = Fraction(2) ** j
        total = total + f(QPi(xi * s)) * f(QPi((xi + 2 * q) * s))
    return total


def brute_overlap_indices(f: StepFunction, k_max: int) -> set[int]:
    """Exhaustive k-scan with raw rational pairs (no IntervalSet machinery)."""
    raw = [(iv.lo.coeff, iv.hi.coeff) for iv, _ in f]
    found = set()
    for k in range(-k_max, k_max + 1):
        for lo1, hi1 in raw:
            for lo2, hi2 in raw:
                if min(hi1, hi2 + 2 * k) > max(lo1, lo2 + 2 * k):
                    found.add(k)
    return found


def replace_on(f: StepFunction, where: Interval, value: QuadReal) -> StepFunction:
    keep = f.restrict(f.support() - IntervalSet([where]))
    return keep + StepFunction([(where, value)])


def _changed_amplitude(old: QuadReal) -> QuadReal:
    # keep the sign so that only the amplitude condition is disturbed
    new = {ONE: INV_SQRT2, INV_SQRT2: ONE, ZERO: INV_SQRT2}[abs(old)]
    return -new if old.sign() < 0 else new


def mutate(profile: AmplitudeSignProfile, condition: str, cell_index: int = 0) -> StepFunction:
    """Build the profile's wavelet, then break exactly one of conditions (i)-(v)."""
    n = profile.n
    k = sn_constants(n)
    f = build_from_profile(n, profile)
    cell = profile.cells[cell_index % len(profile.cells)]
    iv = Interval(cell.lo, cell.hi)
    two_pi = QPi(2)
    dil = k.dilation
    if condition == "i":
        mid = QPi((k.a.coeff + k.e.coeff) / 2)
        return replace_on(f, Interval(k.a, mid), INV_SQRT2)
    if condition in ("ii", "iii", "iv"):
        image = {
            "ii": iv.scale(dil),
            "iii": iv.shift(-two_pi),
            "iv": iv.shift(-two_pi).scale(dil),
        }[condition]
        old = f(image.lo)
        return replace_on(f, image, _changed_amplitude(old))
    if condition == "v":
        if cell.amplitude != INV_SQRT2:
            raise ValueError("condition (v) can only be broken on a partial-amplitude cell")
        return replace_on(f, iv, -f(iv.lo))
    raise ValueError(condition)
