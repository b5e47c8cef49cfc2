"""Exact verification and classification of step-function wavelets.

A function is handled through its Fourier transform ``f = psi_hat``, given as a
real :class:`StepFunction`.  It is an orthonormal wavelet iff

* ``int |f|^2 = 2 pi``,
* ``sum_j |f(2^j xi)|^2 = 1`` a.e. (the Calderon sum), and
* ``t_q(xi) = sum_{j>=0} f(2^j xi) f(2^j (xi + 2 q pi)) = 0`` a.e. for odd q.

All three are evaluated exactly.  The translation-invariance class of a
wavelet follows from the set of integers k for which ``supp f`` and
``supp f + 2 k pi`` overlap in positive measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import sn_constants
from .errors import (
    NotVerifiedError,
    SupportTouchesOriginError,
    UnboundedSupportError,
    ValueFieldError,
)
from .intervals import (
    AffineMap,
    Interval,
    IntervalSet,
    StepFunction,
    apply_affine,
    cells,
    sum_functions,
)
from .scalars import ONE, ZERO, QPi, QuadReal, floor_log2, pow2, two_adic_valuation

TWO_PI = QPi(2)
FUNDAMENTAL_DOMAIN = IntervalSet.pi((-2, -1), (1, 2))


def _check_finite(f: StepFunction) -> None:
    # Fraction endpoints are always finite; guard against foreign subclasses
    for iv, _ in f:
        for p in (iv.lo, iv.hi):
            if not isinstance(p.coeff, Fraction):
                raise UnboundedSupportError("support endpoints must be finite rationals")


def norm_check(f: StepFunction) -> QPi:
    """``int |f|^2 d xi`` as an exact multiple of pi."""
    total = ZERO
    for iv, v in f:
        total = total + (v * v) * iv.length.coeff
    if not total.is_rational():
        raise ValueFieldError(f"squared norm {total}*pi is not a rational multiple of pi", total)
    return QPi(total.a)


# ---------------------------------------------------------------------------
# Calderon sum


def _fold_piece(iv: Interval):
    """Split ``iv`` into dyadic blocks and rescale each into [pi,2pi) or [-2pi,-pi)."""
    lo, hi = iv.lo.coeff, iv.hi.coeff
    if lo < 0 < hi or lo == 0 or hi == 0:
        raise SupportTouchesOriginError(f"support piece {iv} touches the origin")
    sgn = 1 if lo > 0 else -1
    alo, ahi = sorted((abs(lo), abs(hi)))
    j = floor_log2(alo)
    while pow2(j) < ahi:
        block_lo, block_hi = pow2(j), pow2(j + 1)
        if sgn > 0:
            part = Interval.pi(max(lo, block_lo), min(hi, block_hi)) if max(lo, block_lo) < min(hi, block_hi) else None
        else:
            plo, phi = max(lo, -block_hi), min(hi, -block_lo)
            part = Interval.pi(plo, phi) if plo < phi else None
        if part is not None:
            yield part.scale(pow2(-j))
        j += 1


def calderon_sum(f: StepFunction) -> StepFunction:
    """``rho(xi) = sum_j |f(2^j xi)|^2`` restricted to [-2pi,-pi) U [pi,2pi).

    ``rho`` is dilation invariant, so this restriction determines it on
    R minus the origin.
    """
    _check_finite(f)
    folded = []
    for iv, v in f:
        sq = v * v
        for part in _fold_piece(iv):
            folded.append((part, sq))
    return StepFunction(folded)


def calderon_violations(rho: StepFunction) -> list[tuple[Interval, QuadReal]]:
    """Cells of the fundamental domain where ``rho != 1``, with the achieved value."""
    target = StepFunction.indicator(FUNDAMENTAL_DOMAIN)
    out = []
    for iv, (got, want) in cells((rho, target)):
        if want == ONE and got != ONE:
            out.append((iv, got))
    return out


# ---------------------------------------------------------------------------
# Overlap sets


@dataclass
class OverlapIndexSet:
    entries: dict[int, IntervalSet]

    @property
    def indices(self) -> list[int]:
        return sorted(self.entries)

    def __contains__(self, k: int) -> bool:
        return k in self.entries

    def to_json(self) -> dict:
        return {
            "indices": self.indices,
            "sets": {str(k): self.entries[k].to_json() for k in self.indices},
        }


def overlap_candidates(support: IntervalSet) -> set[int]:
    """Integers k for which some pair of pieces can overlap after a ``2 k pi`` shift."""
    ks: set[int] = set()
    for p in support:
        for q in support:
            # p meets q + 2k pi iff (p.lo - q.hi)/2 < k < (p.hi - q.lo)/2
            lo = (p.lo.coeff - q.hi.coeff) / 2
            hi = (p.hi.coeff - q.lo.coeff) / 2
            ks.update(range(math.floor(lo) + 1, math.ceil(hi)))
    return ks


def overlap_sets(f: StepFunction) -> OverlapIndexSet:
    """``E(k) = supp f  n  (supp f + 2 k pi)`` for every k where it has positive measure."""
    _check_finite(f)
    supp = f.support()
    entries = {}
    for k in sorted(overlap_candidates(supp)):
        e = supp & supp.shift(TWO_PI * k)
        if e:
            entries[k] = e
    return OverlapIndexSet(entries)


# ---------------------------------------------------------------------------
# t_q sums


def tq_term(f: StepFunction, q: int, j: int) -> StepFunction:
    """``xi -> f(2^j xi) f(2^j xi + 2^(j+1) q pi)``."""
    shifted = apply_affine(f, AffineMap.translation(TWO_PI * (q * 2**j)))
    return apply_affine(f * shifted, AffineMap.dilation(j))


def tq_sum(f: StepFunction, q: int, overlaps: OverlapIndexSet | None = None) -> StepFunction:
    """``t_q(xi) = sum_{j>=0} f(2^j xi) conj(f(2^j (xi + 2 q pi)))``.

    Values are real, so conjugation is the identity.  The j-th term can only
    be non-zero when ``-2^j q`` is an overlap index, which bounds j.
    """
    _check_finite(f)
    if q % 2 == 0:
        raise ValueError(f"q must be odd, got {q}")
    if f.is_zero():
        return StepFunction()
    if overlaps is None:
        overlaps = overlap_sets(f)
    span = max(abs(k) for k in overlaps.indices)
    terms = []
    j = 0
    while abs(q) * 2**j <= span:
        if -q * 2**j in overlaps:
            terms.append(tq_term(f, q, j))
        j += 1
    return sum_functions(terms)


def relevant_qs(f: StepFunction) -> list[int]:
    """Odd q with ``|q| <= ceil(R/pi)``, where ``[-R, R)`` contains the support."""
    bound = math.ceil(f.extent().coeff)
    return [q for q in range(-bound, bound + 1) if q % 2]


# ---------------------------------------------------------------------------
# Verification report


@dataclass
class VerificationReport:
    norm_sq_times_2pi: QPi
    calderon_ok: bool
    calderon_violations: list[tuple[Interval, QuadReal]]
    tq_ok: bool
    tq_violations: list[tuple[int, Interval, QuadReal]]
    qs_checked: list[int] = field(default_factory=list)

    @property
    def norm_ok(self) -> bool:
        return self.norm_sq_times_2pi == TWO_PI

    @property
    def overall(self) -> bool:
        return self.norm_ok and self.calderon_ok and self.tq_ok

    def to_json(self) -> dict:
        return {
            "norm_sq_times_2pi": self.norm_sq_times_2pi.to_json(),
            "norm_ok": self.norm_ok,
            "calderon_ok": self.calderon_ok,
            "calderon_violations": [
                {"cell": iv.to_json(), "value": v.to_json()} for iv, v in self.calderon_violations
            ],
            "tq_ok": self.tq_ok,
            "tq_violations": [
                {"q": q, "cell": iv.to_json(), "value": v.to_json()} for q, iv, v in self.tq_violations
            ],
            "q_window": [min(self.qs_checked), max(self.qs_checked)] if self.qs_checked else [],
            "overall": self.overall,
        }


def verify_wavelet(f: StepFunction) -> VerificationReport:
    norm = norm_check(f)
    rho = calderon_sum(f)
    cal = calderon_violations(rho)
    overlaps = overlap_sets(f)
    qs = relevant_qs(f)
    tq_bad = []
    for q in qs:
        for iv, v in tq_sum(f, q, overlaps):
            tq_bad.append((q, iv, v))
    tq_bad.sort(key=lambda t: (t[0], t[1].lo))
    return VerificationReport(
        norm_sq_times_2pi=norm,
        calderon_ok=not cal,
        calderon_violations=cal,
        tq_ok=not tq_bad,
        tq_violations=tq_bad,
        qs_checked=qs,
    )


# ---------------------------------------------------------------------------
# Classification


def is_msf(f: StepFunction) -> bool:
    return all(v * v == ONE for _, v in f)


@dataclass(frozen=True)
class ClassLabel:
    """Membership in M_n; ``class_index`` is None for M_infinity."""

    class_index: int | None
    witness_divisor: int | None
    overlap_indices: tuple[int, ...] = ()

    @property
    def name(self) -> str:
        return "M_inf" if self.class_index is None else f"M_{self.class_index}"

    def to_json(self) -> dict:
        return {
            "class": self.name,
            "class_index": "inf" if self.class_index is None else self.class_index,
            "witness": self.witness_divisor,
            "overlap_indices": list(self.overlap_indices),
        }


def class_from_overlaps(indices) -> ClassLabel:
    nonzero = [k for k in indices if k != 0]
    if not nonzero:
        return ClassLabel(None, None, tuple(sorted(indices)))
    best = min(two_adic_valuation(k) for k in nonzero)
    witness = min((k for k in nonzero if two_adic_valuation(k) == best), key=lambda k: (abs(k), -k))
    return ClassLabel(best, witness, tuple(sorted(indices)))


def classify(f: StepFunction, report: VerificationReport | None = None) -> ClassLabel:
    if report is None:
        report = verify_wavelet(f)
    if not report.overall:
        raise NotVerifiedError("classification needs a function that passes verify_wavelet")
    return class_from_overlaps(overlap_sets(f).indices)


# ---------------------------------------------------------------------------
# Hit tables


@dataclass(frozen=True)
class HitRow:
    piece: Interval
    value: QuadReal
    translate_hits: frozenset[int]
    dilate_hits: frozenset[int]

    def to_json(self) -> dict:
        return {
            "piece": self.piece.to_json(),
            "value": self.value.to_json(),
            "translate_hits": sorted(self.translate_hits),
            "dilate_hits": sorted(self.dilate_hits),
        }


@dataclass
class HitTable:
    rows: list[HitRow]

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows]}


def _dilation_candidates(piece: Interval, supp: IntervalSet) -> range:
    lo, hi = piece.lo.coeff, piece.hi.coeff
    if lo < 0 < hi or lo == 0 or hi == 0:
        raise SupportTouchesOriginError(f"support piece {piece} touches the origin")
    inner = min(abs(lo), abs(hi))
    outer = max(abs(lo), abs(hi))
    s_inner = min(min(abs(p.lo.coeff), abs(p.hi.coeff)) for p in supp)
    s_outer = max(max(abs(p.lo.coeff), abs(p.hi.coeff)) for p in supp)
    # 2^j * piece can only meet the support if 2^j outer > s_inner and 2^j inner < s_outer
    return range(floor_log2(s_inner / outer), floor_log2(s_outer / inner) + 2)


def hit_table(f: StepFunction) -> HitTable:
    """For each value piece: the k with ``piece + 2k pi`` and the j with
    ``2^j piece`` meeting the support in positive measure.

    Pieces whose hit sets are not uniform are split so that every row holds
    pointwise on its whole interior.
    """
    _check_finite(f)
    supp = f.support()
    ks = sorted(overlap_candidates(supp))
    rows: list[HitRow] = []
    for iv, v in f:
        piece = IntervalSet([iv])
        js = list(_dilation_candidates(iv, supp))
        # where does xi + 2k pi (resp. 2^j xi) land in the support?
        t_sets = {k: piece & supp.shift(-TWO_PI * k) for k in ks}
        d_sets = {j: piece & supp.scale(pow2(-j)) for j in js}
        points = {iv.lo, iv.hi}
        for s in (*t_sets.values(), *d_sets.values()):
            for p in s:
                points.update((p.lo, p.hi))
        points = sorted(points)
        piece_rows: list[HitRow] = []
        for lo, hi in zip(points, points[1:]):
            th = frozenset(k for k, s in t_sets.items() if lo in s)
            dh = frozenset(j for j, s in d_sets.items() if lo in s)
            if piece_rows and piece_rows[-1].translate_hits == th and piece_rows[-1].dilate_hits == dh:
                prev = piece_rows[-1]
                piece_rows[-1] = HitRow(Interval(prev.piece.lo, hi), v, th, dh)
            else:
                piece_rows.append(HitRow(Interval(lo, hi), v, th, dh))
        rows.extend(piece_rows)
    return HitTable(rows)


# ---------------------------------------------------------------------------
# S_n characterization


@dataclass
class ConditionResult:
    ok: bool
    violations: list[tuple[Interval, QuadReal]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"cell": iv.to_json(), "value": v.to_json()} for iv, v in self.violations],
        }


@dataclass
class SnReport:
    n: int
    support_ok: bool
    conditions: dict[str, ConditionResult]
    phase_active: IntervalSet

    @property
    def all_ok(self) -> bool:
        return self.support_ok and all(c.ok for c in self.conditions.values())

    def failed(self) -> list[str]:
        out = [] if self.support_ok else ["support"]
        return out + [name for name, c in self.conditions.items() if not c.ok]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "support_in_sn": self.support_ok,
            "conditions": {name: c.to_json() for name, c in self.conditions.items()},
            "phase_active": self.phase_active.to_json(),
            "all_ok": self.all_ok,
        }


def _equals_on(g: StepFunction, target: QuadReal, where: IntervalSet) -> ConditionResult:
    goal = StepFunction.indicator(where, target) if target else StepFunction()
    mask = StepFunction.indicator(where)
    bad = []
    for iv, (got, want, inside) in cells((g, goal, mask)):
        if inside and got != target:
            bad.append((iv, got))
    return ConditionResult(not bad, bad)


def check_sn_characterization(f: StepFunction, n: int) -> SnReport:
    """Evaluate conditions (i)-(v) for ``f`` against the template S_n.

    Phases are restricted to {0, pi}, i.e. real signed values; condition (v)
    becomes: the product of the signs of f at ``xi``, ``2^(n-1)(xi - 2pi)``,
    ``xi - 2pi`` and ``2^(n-1) xi`` is -1 wherever all four are non-zero.
    """
    k = sn_constants(n)
    support_ok = f.support().issubset(k.sn())
    amp = f.abs()
    amp_sq = f.square()
    free = IntervalSet([k.free_interval()])
    dil = AffineMap(k.dilation)
    back = AffineMap.translation(-TWO_PI)
    both = dil.compose(back)

    conds = {}
    core = IntervalSet([Interval(k.a, k.e), Interval(-k.e, -k.a)])
    conds["i"] = _equals_on(amp, ONE, core)
    conds["ii"] = _equals_on(amp_sq + apply_affine(amp_sq, dil), ONE, free)
    conds["iii"] = _equals_on(amp_sq + apply_affine(amp_sq, back), ONE, free)
    conds["iv"] = _equals_on(amp - apply_affine(amp, both), ZERO, free)

    sign = f.map_values(lambda v: QuadReal(v.sign()))
    images = (sign, apply_affine(sign, both), apply_affine(sign, back), apply_affine(sign, dil))
    mask = StepFunction.indicator(free)
    active = []
    bad = []
    for iv, (inside, s0, s1, s2, s3) in cells((mask, *images)):
        if not inside or not (s0 and s1 and s2 and s3):
            continue
        active.append(iv)
        prod = s0 * s1 * s2 * s3
        if prod != -ONE:
            bad.append((iv, prod))
    conds["v"] = ConditionResult(not bad, bad)
    return SnReport(n, support_ok, conds, IntervalSet(active))
