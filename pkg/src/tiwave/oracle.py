"""Floating-point cross-check of orthonormality in the time domain.

Independent of the exact verifier: it evaluates inner products of the
dilate-translate system ``psi_{j,k}(x) = 2^(j/2) psi(2^j x - k)`` through
Plancherel, with every cell integral done in closed form,

    int_lo^hi exp(i a xi) d xi = w exp(i a m) sinc(a w / 2),

(``m`` the midpoint, ``w`` the width).  This form has no cancellation as
``a -> 0`` so no special branch is needed.  The Fourier convention is
``f_hat(xi) = int f(x) exp(-i xi x) dx``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .intervals import AffineMap, Interval, StepFunction, apply_affine
from .scalars import QPi, QuadReal


class DilTransIndex(NamedTuple):
    j: int
    k: int


def _arrays(f: StepFunction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Midpoints, widths and float values of the pieces (endpoints converted last)."""
    mids = np.array([float(iv.lo + iv.hi) / 2 for iv, _ in f], dtype=float)
    widths = np.array([float(iv.length) for iv, _ in f], dtype=float)
    vals = np.array([float(v) for _, v in f], dtype=float)
    return mids, widths, vals


def _cell_integrals(mids, widths, vals, alpha):
    """``sum_cells v * int exp(i alpha xi)`` for an array of ``alpha`` values."""
    alpha = np.asarray(alpha, dtype=float)[..., None]
    phase = np.exp(1j * alpha * mids)
    return (vals * widths * phase * np.sinc(alpha * widths / (2 * np.pi))).sum(axis=-1)


def eval_time_domain(f: StepFunction, x):
    """``psi(x) = (1/2pi) int f(xi) exp(i xi x) d xi``; scalar or array ``x``."""
    mids, widths, vals = _arrays(f)
    out = _cell_integrals(mids, widths, vals, x) / (2 * np.pi)
    return complex(out) if np.ndim(x) == 0 else out


def _scaled(f: StepFunction, j: int) -> StepFunction:
    # xi -> f(xi / 2^j)
    return apply_affine(f, AffineMap.dilation(-j))


def inner_product(f: StepFunction, p: DilTransIndex, q: DilTransIndex) -> complex:
    p, q = DilTransIndex(*p), DilTransIndex(*q)
    prod = _scaled(f, p.j) * _scaled(f, q.j)
    alpha = q.k / 2.0**q.j - p.k / 2.0**p.j
    mids, widths, vals = _arrays(prod)
    weight = 2.0 ** (-(p.j + q.j) / 2) / (2 * np.pi)
    return complex(weight * _cell_integrals(mids, widths, vals, alpha))


@dataclass
class GramResult:
    indices: list[DilTransIndex]
    entries: np.ndarray
    max_off_diagonal: float
    max_diagonal_deviation: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_off_diagonal, self.max_diagonal_deviation)

    def to_json(self) -> dict:
        return {
            "indices": [[i.j, i.k] for i in self.indices],
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
            "max_off_diagonal": self.max_off_diagonal,
            "max_diagonal_deviation": self.max_diagonal_deviation,
        }


def gram_matrix(f: StepFunction, j_range: tuple[int, int], k_range: tuple[int, int]) -> GramResult:
    """Gram matrix over the inclusive index box ``j_range x k_range``."""
    (j0, j1), (k0, k1) = j_range, k_range
    if j0 > j1 or k0 > k1:
        raise DomainError("index ranges must be non-empty")
    js = list(range(j0, j1 + 1))
    ks = np.arange(k0, k1 + 1, dtype=float)
    nk = len(ks)
    indices = [DilTransIndex(j, int(k)) for j in js for k in range(k0, k1 + 1)]
    size = len(indices)
    gram = np.zeros((size, size), dtype=complex)
    scaled = {j: _scaled(f, j) for j in js}
    for a, ja in enumerate(js):
        for b, jb in enumerate(js):
            mids, widths, vals = _arrays(scaled[ja] * scaled[jb])
            alpha = ks[None, :] / 2.0**jb - ks[:, None] / 2.0**ja
            block = _cell_integrals(mids, widths, vals, alpha)
            block *= 2.0 ** (-(ja + jb) / 2) / (2 * np.pi)
            gram[a * nk:(a + 1) * nk, b * nk:(b + 1) * nk] = block
    diag = np.abs(np.diag(gram) - 1.0)
    off = np.abs(gram - np.diag(np.diag(gram)))
    return GramResult(
        indices=indices,
        entries=gram,
        max_off_diagonal=float(off.max()) if size > 1 else 0.0,
        max_diagonal_deviation=float(diag.max()),
    )


def sample_series(f: StepFunction, x_min: float, x_max: float, count: int) -> list[tuple[float, float, float]]:
    """``(x, Re psi(x), Im psi(x))`` on a uniform grid including both ends."""
    if count < 2 or not x_min < x_max:
        raise DomainError("need count >= 2 and x_min < x_max")
    xs = np.linspace(x_min, x_max, count)
    ys = eval_time_domain(f, xs)
    return [(float(x), float(y.real), float(y.imag)) for x, y in zip(xs, ys)]


def frequency_graph(f: StepFunction) -> list[tuple[Fraction, QuadReal]]:
    """Corner points of the graph of ``f`` (xi/pi, value), zero between pieces."""
    rows: list[tuple[Fraction, QuadReal]] = []
    zero = QuadReal()
    prev_hi = None
    for iv, v in f:
        if prev_hi is not None and prev_hi != iv.lo:
            rows.append((prev_hi.coeff, zero))
            rows.append((iv.lo.coeff, zero))
        rows.append((iv.lo.coeff, v))
        rows.append((iv.hi.coeff, v))
        prev_hi = iv.hi
    return rows


def frequency_samples(f: StepFunction, lo: Fraction, hi: Fraction, count: int) -> list[tuple[Fraction, QuadReal]]:
    """Exact values of ``f`` on a uniform grid of ``xi/pi`` in ``[lo, hi]``."""
    if count < 2 or not lo < hi:
        raise DomainError("need count >= 2 and lo < hi")
    step = (hi - lo) / (count - 1)
    return [(lo + step * i, f(QPi(lo + step * i))) for i in range(count)]


def l2_norm_riemann(f: StepFunction, half_width: float = 400.0, count: int = 200_001) -> float:
    """Crude ``int |psi|^2 dx`` by a Riemann sum, a sanity check only."""
    xs = np.linspace(-half_width, half_width, count)
    ys = eval_time_domain(f, xs)
    return float(np.sum(np.abs(ys) ** 2) * (xs[1] - xs[0]))


__all__ = [
    "DilTransIndex",
    "GramResult",
    "eval_time_domain",
    "frequency_graph",
    "frequency_samples",
    "gram_matrix",
    "inner_product",
    "l2_norm_riemann",
    "sample_series",
]
