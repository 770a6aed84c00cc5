"""Tests for Hankel matrices, exact determinants, the PSD test, and classify."""
from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from hankelmp.errors import NotSymmetric, OutOfWindow
from hankelmp.hankel import (
    Degenerate,
    Invalid,
    InvalidReason,
    MomentWindow,
    PositiveWindow,
    SymMatrix,
    classify,
    det_exact,
    det_sequence,
    hankel_matrix,
    is_psd,
    principal_minor_sums,
)
from oracles import det_cofactor, psd_all_principal_minors

REMARK = [1, 1, 1, 1, 0, 0, 0]
EXAMPLE_A4 = [1, 1, 4, 4, 16]


def random_matrix(rng, order):
    return [
        [F(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(order)]
        for _ in range(order)
    ]


def random_symmetric(rng, order):
    rows = random_matrix(rng, order)
    for i in range(order):
        for j in range(i):
            rows[i][j] = rows[j][i]
    return rows


class TestWindow:
    def test_horizon(self):
        assert MomentWindow([1]).horizon == 0
        assert MomentWindow([1, 2]).horizon == 0
        assert MomentWindow([1, 2, 3]).horizon == 1
        assert MomentWindow(REMARK).horizon == 3

    def test_needs_s0(self):
        with pytest.raises(ValueError):
            MomentWindow([])

    def test_accepts_strings(self):
        assert MomentWindow(["1/2", 3, F(1)]).moments == (F(1, 2), F(3), F(1))


class TestHankelMatrix:
    def test_examples(self):
        assert hankel_matrix([1, 1, 4], 1).rows == ((1, 1), (1, 4))
        assert hankel_matrix([1, 1, 1, 1, 0], 2).rows == ((1, 1, 1), (1, 1, 1), (1, 1, 0))
        assert hankel_matrix([5], 0).rows == ((5,),)

    def test_out_of_window(self):
        with pytest.raises(OutOfWindow):
            hankel_matrix([1, 1, 4], 2)
        with pytest.raises(OutOfWindow):
            hankel_matrix([1, 1, 4], -1)

    def test_symmetry_enforced(self):
        with pytest.raises(NotSymmetric):
            SymMatrix([[1, 2], [3, 4]])
        with pytest.raises(NotSymmetric):
            SymMatrix([[1, 2, 3], [2, 1, 2]])


class TestDetExact:
    def test_examples(self):
        assert det_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
        assert det_exact([[1, 1], [1, 4]]) == 3
        assert det_exact(hankel_matrix(REMARK, 3)) == 1

    def test_sign_tracking_via_permutations(self):
        assert det_exact([[0, 1], [1, 0]]) == -1
        assert det_exact([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1
        assert det_exact([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]) == 1

    def test_zero_pivot_column(self):
        assert det_exact([[0, 1, 2], [0, 3, 4], [0, 5, 6]]) == 0

    def test_rational_entries(self):
        assert det_exact([[F(1, 2), F(1, 3)], [F(1, 5), F(1, 7)]]) == F(1, 14) - F(1, 15)

    def test_agrees_with_cofactor_oracle(self):
        rng = random.Random(777)
        for _ in range(500):
            order = rng.randint(1, 5)
            rows = random_matrix(rng, order)
            assert det_exact(rows) == det_cofactor(rows)

    def test_det_sequence_examples(self):
        assert det_sequence(REMARK) == [1, 0, 0, 1]
        assert det_sequence(EXAMPLE_A4) == [1, 3, 0]
        assert det_sequence([0, 0, 0]) == [0, 0]


class TestIsPsd:
    def test_examples(self):
        assert is_psd(hankel_matrix([1, 1, 1, 1, 0], 2)) is False
        assert is_psd([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]) is True
        assert is_psd(hankel_matrix(EXAMPLE_A4, 2)) is True

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            is_psd([[1, 2], [3, 4]])

    def test_zero_matrix_is_psd(self):
        assert is_psd([[0, 0], [0, 0]]) is True

    def test_principal_minor_sums_against_direct(self):
        rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
        e1, e2, e3 = principal_minor_sums(rows)
        assert e1 == 9
        assert e2 == det_cofactor([[2, 1], [1, 3]]) + det_cofactor(
            [[2, 0], [0, 4]]
        ) + det_cofactor([[3, 1], [1, 4]])
        assert e3 == det_cofactor(rows)

    def test_agrees_with_all_minors_oracle(self):
        rng = random.Random(31337)
        for _ in range(200):
            order = rng.randint(1, 5)
            rows = random_symmetric(rng, order)
            assert is_psd(rows) == psd_all_principal_minors(rows)


class TestClassify:
    def test_spec_examples(self):
        assert classify(EXAMPLE_A4) == Degenerate(2, True)
        assert classify(REMARK) == Invalid(3, InvalidReason.ZERO_THEN_POSITIVE)
        assert classify([1, 0, 0]) == Degenerate(1, True)

    def test_positive_window(self):
        assert classify([5]) == PositiveWindow(0)
        assert classify([2, 0, 1, 0, 1]) == PositiveWindow(2)

    def test_negative_determinant(self):
        assert classify([-1]) == Invalid(0, InvalidReason.NEGATIVE_DETERMINANT)
        assert classify([1, 2, 1]) == Invalid(1, InvalidReason.NEGATIVE_DETERMINANT)

    def test_negative_after_zero(self):
        # D = [1, 0, -1]: the zero is followed by a negative value.
        window = [1, 1, 1, 2, 0]
        dets = det_sequence(window)
        assert dets[1] == 0 and dets[2] < 0
        assert classify(window) == Invalid(2, InvalidReason.NEGATIVE_DETERMINANT)

    def test_zero_s0(self):
        assert classify([0]) == Degenerate(0, True)
        assert classify([0, 0, 0]) == Degenerate(0, True)
        assert classify([0, 0, 1]) == Invalid(2, InvalidReason.ZERO_S0_NONZERO_TAIL)
        assert classify([0, 1, 0]) == Invalid(1, InvalidReason.ZERO_S0_NONZERO_TAIL)

    def test_inconsistent_tail_detected(self):
        # Degenerate determinant pattern whose tail breaks the recurrence.
        assert classify([1, 1, 1, 1, 0]) == Degenerate(1, False)
        assert classify([1, 2, 4, 8, 17]) == Degenerate(1, False)
        assert classify([1, 2, 4, 8, 16]) == Degenerate(1, True)

    def test_remark_caveat_all_nonnegative_yet_not_psd(self):
        # Every in-window determinant of [1,1,1,1,0] is >= 0, but H_2 is not PSD.
        window = MomentWindow([1, 1, 1, 1, 0])
        assert all(d >= 0 for d in det_sequence(window))
        assert is_psd(hankel_matrix(window, 2)) is False

    def test_trichotomy_on_random_windows(self):
        rng = random.Random(2718)
        for _ in range(300):
            length = rng.randint(1, 9)
            window = MomentWindow(
                [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(length)]
            )
            cls = classify(window)
            dets = det_sequence(window)
            assert isinstance(cls, (PositiveWindow, Degenerate, Invalid))
            if isinstance(cls, PositiveWindow):
                assert all(d > 0 for d in dets)
            elif isinstance(cls, Degenerate):
                assert all(d > 0 for d in dets[: cls.n0])
                assert all(d == 0 for d in dets[cls.n0 :])
            elif cls.reason is InvalidReason.NEGATIVE_DETERMINANT:
                assert dets[cls.first_violation] < 0
            elif cls.reason is InvalidReason.ZERO_THEN_POSITIVE:
                assert dets[cls.first_violation] > 0
                assert any(d == 0 for d in dets[: cls.first_violation])
            else:
                assert window[0] == 0 and window[cls.first_violation] != 0

    def test_degenerate_windows_have_psd_hankels(self):
        # Theorem direction, on genuine truncated moment sequences (a window
        # with a consistent degenerate pattern comes from an n0-atom measure).
        from hankelmp.recovery import DiscreteMeasure, measure_moments

        rng = random.Random(5)
        for _ in range(30):
            count = rng.randint(1, 4)
            atoms: set[F] = set()
            while len(atoms) < count:
                atoms.add(F(rng.randint(-6, 6), rng.randint(1, 4)))
            weights = [F(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(count)]
            mu = DiscreteMeasure(tuple(sorted(atoms)), tuple(weights))
            window = MomentWindow(measure_moments(mu, 2 * count + 4))
            cls = classify(window)
            assert cls == Degenerate(count, True)
            for k in range(window.horizon + 1):
                assert is_psd(hankel_matrix(window, k))
