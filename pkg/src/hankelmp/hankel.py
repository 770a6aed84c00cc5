"""Hankel matrices, exact determinants, PSD testing, and window classification.

The classification follows the trichotomy induced by the sign pattern of the
Hankel determinant sequence D_0..D_N of a finite moment window: all positive,
a positive prefix followed only by zeros (the degenerate case, carrying a
finitely supported representing measure), or anything else, which cannot be a
moment sequence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import NotSymmetric, OutOfWindow

__all__ = [
    "Classification",
    "Degenerate",
    "Invalid",
    "InvalidReason",
    "MomentWindow",
    "PositiveWindow",
    "SymMatrix",
    "classify",
    "det_exact",
    "det_sequence",
    "hankel_matrix",
    "is_psd",
    "principal_minor_sums",
]


class MomentWindow:
    """Finite exact moment window s_0..s_m; Hankel matrices exist up to m // 2."""

    __slots__ = ("moments",)

    def __init__(self, moments: Iterable[Fraction | int | str]):
        vals = tuple(s if isinstance(s, Fraction) else Fraction(s) for s in moments)
        if not vals:
            raise ValueError("a moment window needs at least s_0")
        self.moments: tuple[Fraction, ...] = vals

    @property
    def m(self) -> int:
        """Largest stored moment index."""
        return len(self.moments) - 1

    @property
    def horizon(self) -> int:
        """Largest n for which H_n fits in the window."""
        return self.m // 2

    def with_appended(self, extra: Iterable[Fraction | int | str]) -> "MomentWindow":
        return MomentWindow(self.moments + tuple(Fraction(s) for s in extra))

    def __len__(self) -> int:
        return len(self.moments)

    def __iter__(self):
        return iter(self.moments)

    def __getitem__(self, k):
        return self.moments[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, MomentWindow) and self.moments == other.moments

    def __hash__(self) -> int:
        return hash(self.moments)

    def __repr__(self) -> str:
        return f"MomentWindow({[str(s) for s in self.moments]})"


def _as_window(w) -> MomentWindow:
    return w if isinstance(w, MomentWindow) else MomentWindow(w)


class SymMatrix:
    """Symmetric square matrix with exact rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Fraction | int | str]]):
        rs = tuple(tuple(c if isinstance(c, Fraction) else Fraction(c) for c in row) for row in rows)
        n = len(rs)
        if any(len(row) != n for row in rs):
            raise NotSymmetric("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if rs[i][j] != rs[j][i]:
                    raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
        self.rows: tuple[tuple[Fraction, ...], ...] = rs

    @property
    def order(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SymMatrix({[[str(c) for c in row] for row in self.rows]})"


def hankel_matrix(w, n: int) -> SymMatrix:
    """The (n+1) x (n+1) Hankel matrix with entry (i, j) = s_{i+j}."""
    w = _as_window(w)
    if n < 0 or 2 * n > w.m:
        raise OutOfWindow(f"H_{n} needs s_0..s_{2*n} but the window ends at s_{w.m}")
    return SymMatrix([[w[i + j] for j in range(n + 1)] for i in range(n + 1)])


def _as_rows(matrix) -> list[list[Fraction]]:
    if isinstance(matrix, SymMatrix):
        return [list(row) for row in matrix.rows]
    rows = [[c if isinstance(c, Fraction) else Fraction(c) for c in row] for row in matrix]
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("determinant needs a square matrix")
    return rows


def det_exact(matrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination.

    Rows are first scaled to integers (the scale is divided back out at the
    end); elimination then uses exact integer divisions only.  A zero pivot is
    repaired by a sign-tracked row swap, and a fully zero pivot column short
    circuits to zero.
    """
    rows = _as_rows(matrix)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    m: list[list[int]] = []
    for row in rows:
        den = reduce(math.lcm, (c.denominator for c in row), 1)
        m.append([int(c * den) for c in row])
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pivot_row = m[k]
        pivot_val = pivot_row[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot_val - factor * pivot_row[j]) // prev
            row_i[k] = 0
        prev = pivot_val
    return Fraction(sign * m[n - 1][n - 1], scale)


def det_sequence(w) -> list[Fraction]:
    """The Hankel determinants [D_0, ..., D_N] for N = horizon of the window."""
    w = _as_window(w)
    return [det_exact(hankel_matrix(w, n)) for n in range(w.horizon + 1)]


def _matmul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def principal_minor_sums(matrix) -> list[Fraction]:
    """[e_1, ..., e_n] where e_k is the sum of all k x k principal minors.

    Computed exactly by the Faddeev-LeVerrier trace recursion, so the cost is
    polynomial in the order; det(xI - M) = x^n - e_1 x^(n-1) + e_2 x^(n-2) - ...
    """
    a = _as_rows(matrix)
    n = len(a)
    b = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    sums: list[Fraction] = []
    for k in range(1, n + 1):
        ab = _matmul(a, b)
        d = -sum((ab[i][i] for i in range(n)), Fraction(0)) / k
        sums.append(d if k % 2 == 0 else -d)
        for i in range(n):
            ab[i][i] += d
        b = ab
    return sums


def is_psd(matrix) -> bool:
    """Exact positive semi-definiteness test for a symmetric matrix.

    With det(xI - M) = x^n - c_1 x^(n-1) + c_2 x^(n-2) - ..., the matrix is PSD
    iff every c_k >= 0 (the eigenvalues are real by symmetry).  Raises
    ``NotSymmetric`` for a non-symmetric argument.
    """
    if not isinstance(matrix, SymMatrix):
        matrix = SymMatrix(matrix)
    return all(c >= 0 for c in principal_minor_sums(matrix))


class InvalidReason(Enum):
    NEGATIVE_DETERMINANT = "NegativeDeterminant"
    ZERO_THEN_POSITIVE = "ZeroThenPositive"
    ZERO_S0_NONZERO_TAIL = "ZeroS0NonzeroTail"


@dataclass(frozen=True)
class PositiveWindow:
    """Every in-window determinant is positive; nothing is claimed beyond it."""

    horizon: int


@dataclass(frozen=True)
class Degenerate:
    """D_k > 0 for k < n0 and D_k = 0 for n0 <= k <= horizon.

    ``window_consistent`` records whether every window moment past index
    2*n0 - 1 agrees with the unique recurrence extension; only then is the
    window a truncated moment sequence of an n0-point measure.
    """

    n0: int
    window_consistent: bool


@dataclass(frozen=True)
class Invalid:
    """The window cannot be a moment sequence; carries the first witness index."""

    first_violation: int
    reason: InvalidReason


Classification = Union[PositiveWindow, Degenerate, Invalid]


def _tail_consistent(w: MomentWindow, n0: int) -> bool:
    # The monic degree-n0 orthogonal polynomial supplies the exact linear
    # recurrence that any n0-point moment sequence with this prefix obeys.
    from .orthopoly import monic_orthogonal_poly

    coeffs = monic_orthogonal_poly(w, n0).coeffs
    for k in range(2 * n0, len(w)):
        predicted = -sum(coeffs[j] * w[k - n0 + j] for j in range(n0))
        if w[k] != predicted:
            return False
    return True


def classify(w) -> Classification:
    """Classify a window by the sign pattern of its Hankel determinants.

    Scans D_0..D_N left to right: all positive gives ``PositiveWindow``; a
    positive prefix followed only by zeros gives ``Degenerate`` (with the
    tail-consistency bit computed from the unique extension); a negative
    determinant or a zero followed by a positive one gives ``Invalid``.  A
    window with s_0 = 0 is the zero measure when every moment is zero and
    ``Invalid`` otherwise, with ``first_violation`` pointing at the first
    nonzero moment.
    """
    w = _as_window(w)
    if w[0] == 0:
        first_nonzero = next((k for k, s in enumerate(w) if s != 0), None)
        if first_nonzero is None:
            return Degenerate(0, True)
        return Invalid(first_nonzero, InvalidReason.ZERO_S0_NONZERO_TAIL)
    n0 = None
    for k, d in enumerate(det_sequence(w)):
        if d < 0:
            return Invalid(k, InvalidReason.NEGATIVE_DETERMINANT)
        if n0 is None:
            if d == 0:
                n0 = k
        elif d > 0:
            return Invalid(k, InvalidReason.ZERO_THEN_POSITIVE)
    if n0 is None:
        return PositiveWindow(w.horizon)
    return Degenerate(n0, _tail_consistent(w, n0))
