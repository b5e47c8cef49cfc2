from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiwave.constructions import psi_n, sn_constants
from tiwave.intervals import (
    AffineMap,
    Interval,
    IntervalSet,
    StepFunction,
    apply_affine,
    refine,
    set_diff,
    set_intersect,
    set_measure,
    set_union,
    step_eval,
)
from tiwave.scalars import INV_SQRT2, ONE, QPi, QuadReal


def test_half_open_abutment():
    assert set_intersect(IntervalSet.pi((0, 1)), IntervalSet.pi((1, 2))) == IntervalSet()


def test_intersection_example():
    a = IntervalSet.pi((F(4, 7), F(8, 7)), (F(24, 7), F(32, 7)))
    assert a & IntervalSet.pi((1, 2)) == IntervalSet.pi((1, F(8, 7)))


def test_union_identity_and_diff():
    a = IntervalSet.pi((0, 1), (3, 5))
    assert set_union(a, IntervalSet()) == a
    assert set_diff(a, IntervalSet.pi((4, 6))) == IntervalSet.pi((0, 1), (3, 4))


def test_union_merges_abutting():
    assert IntervalSet.pi((0, 1)) | IntervalSet.pi((1, 2)) == IntervalSet.pi((0, 2))


def test_measures():
    # S_3: (8/7 - 4/7) + (32/7 - 24/7) = 12/7 per half
    pieces_s3 = [(F(4, 7), F(8, 7)), (F(24, 7), F(32, 7)), (F(-8, 7), F(-4, 7)), (F(-32, 7), F(-24, 7))]
    brute = sum(hi - lo for lo, hi in pieces_s3)
    assert brute == F(24, 7)
    assert set_measure(sn_constants(3).sn()) == QPi(F(24, 7))
    assert set_measure(IntervalSet()) == QPi(0)
    w3 = IntervalSet.pi((F(-8, 7), F(-4, 7)), (F(4, 7), F(6, 7)), (F(24, 7), F(32, 7)))
    assert set_measure(w3) == QPi(2)


def test_affine_pullback_examples():
    for n in (3, 5, 8):
        k = sn_constants(n)
        f = StepFunction([(Interval(k.e, k.b), ONE)])
        left = apply_affine(f, AffineMap.translation(QPi(2)))
        assert left == StepFunction([(Interval(-k.b, -k.e), ONE)])
        up = apply_affine(f, AffineMap(F(1, 2 ** (n - 1))))
        assert up == StepFunction([(Interval(k.c, k.d), ONE)])
        assert apply_affine(f, AffineMap(F(1))) == f


def test_affine_scale_must_be_dyadic():
    with pytest.raises(ValueError):
        AffineMap(F(3))
    with pytest.raises(ValueError):
        AffineMap(F(0))
    AffineMap(F(-1, 8))


def test_refine_examples():
    f = StepFunction.pi((0, 1, ONE), (1, 2, INV_SQRT2))
    assert refine([f]) == [QPi(0), QPi(1), QPi(2)]
    assert refine([f, f]) == f.breakpoints()

    p = psi_n(3)
    shifted = p.translate_graph(QPi(8))
    # brute-force endpoint merge of both piece lists
    own = {F(x, 7) for x in (-8, -4, 2, 3, 4, 6, 24, 30, 31, 32, 60, 62)}
    expected = sorted(own | {x + 8 for x in own})
    assert [x.coeff for x in refine([p, shifted])] == expected
    # [4/7, 6/7) + 8 lands exactly on [60/7, 62/7), which stays a single cell
    i = expected.index(F(60, 7))
    assert expected[i + 1] == F(62, 7)


def test_step_eval_examples():
    p = psi_n(3)
    assert step_eval(p, QPi(F(5, 7))) == INV_SQRT2
    assert step_eval(p, QPi(0)) == QuadReal()
    assert step_eval(p, QPi(F(61, 7))) == -INV_SQRT2
    # half-open boundaries
    assert p(QPi(F(4, 7))) == INV_SQRT2
    assert p(QPi(F(6, 7))) == QuadReal()


def test_canonical_merging():
    f = StepFunction.pi((0, 1, ONE), (1, 2, ONE), (3, 4, 0))
    assert f.pieces == ((Interval.pi(0, 2), ONE),)
    g = StepFunction.pi((0, 2, ONE), (1, 3, ONE))
    assert g == StepFunction.pi((0, 1, ONE), (1, 2, 2 * ONE), (2, 3, ONE))


def test_json_roundtrip():
    p = psi_n(4)
    assert StepFunction.from_json(p.to_json()) == p


# --- properties -------------------------------------------------------------

coeffs = st.fractions(min_value=-40, max_value=40, max_denominator=16)


@st.composite
def interval_sets(draw, max_size=5):
    pts = draw(st.lists(coeffs, min_size=0, max_size=2 * max_size, unique=True))
    pts.sort()
    return IntervalSet(Interval.pi(lo, hi) for lo, hi in zip(pts[::2], pts[1::2]))


values = st.sampled_from([ONE, -ONE, INV_SQRT2, -INV_SQRT2, QuadReal(F(1, 3), F(-2, 5))])


@st.composite
def step_functions(draw):
    s = draw(interval_sets())
    return StepFunction((iv, draw(values)) for iv in s)


affine_maps = st.builds(
    lambda j, sgn, t: AffineMap(F(2) ** j * sgn, QPi(t)),
    st.integers(-4, 4),
    st.sampled_from([1, -1]),
    coeffs,
)


@given(interval_sets(), interval_sets())
def test_inclusion_exclusion(a, b):
    lhs = set_measure(a | b) + set_measure(a & b)
    assert lhs == set_measure(a) + set_measure(b)


@given(interval_sets(), interval_sets())
def test_set_algebra_partitions(a, b):
    assert (a - b) | (a & b) == a
    assert not ((a - b) & b)


@given(step_functions(), affine_maps)
def test_affine_measure_scaling(f, m):
    pulled = apply_affine(f, m)
    assert set_measure(pulled.support()) == set_measure(f.support()) / abs(m.scale)


@given(step_functions(), affine_maps)
def test_affine_roundtrip(f, m):
    assert apply_affine(apply_affine(f, m), m.inverse()) == f


@given(step_functions(), affine_maps, coeffs)
def test_affine_pointwise(f, m, x):
    if m.scale > 0:
        assert apply_affine(f, m)(QPi(x)) == f(m(QPi(x)))


@given(step_functions(), step_functions(), coeffs)
def test_pointwise_algebra(f, g, x):
    p = QPi(x)
    assert (f + g)(p) == f(p) + g(p)
    assert (f * g)(p) == f(p) * g(p)


@given(step_functions())
def test_canonical_form_unique(f):
    # rebuilding from split pieces yields the same representation
    split = []
    for iv, v in f:
        mid = QPi((iv.lo.coeff + iv.hi.coeff) / 2)
        split += [(Interval(iv.lo, mid), v), (Interval(mid, iv.hi), v)]
    assert StepFunction(reversed(split)) == f
