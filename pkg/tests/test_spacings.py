import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from datasets import EPILEPTIC, KAMIOKANDE_11, KAMIOKANDE_12, PIGEON
from raospacing.spacings import (
    TWO_PI,
    ingest,
    read_angle_file,
    spacing_test,
    spacings,
    statistic,
    statistic_batch,
)


class TestIngest:
    def test_epileptic_sorted_radians(self):
        s = ingest(EPILEPTIC, "degrees")
        assert s.n == 15
        assert_allclose(s.angles, np.deg2rad(sorted(EPILEPTIC)))
        # the repeated 10 degrees is kept
        assert np.count_nonzero(np.isclose(s.angles, math.radians(10))) == 2

    def test_radians_passthrough(self):
        s = ingest([0.0, math.pi], "radians")
        assert s.n == 2
        assert list(s.angles) == [0.0, math.pi]

    def test_wraps_out_of_range(self):
        s = ingest([370, -10], "deg")
        assert_allclose(np.rad2deg(s.angles), [10.0, 350.0])

    def test_tiny_negative_stays_below_two_pi(self):
        s = ingest([-1e-300, 1.0], "radians")
        assert np.all((s.angles >= 0) & (s.angles < TWO_PI))

    def test_stored_angles_are_read_only(self):
        s = ingest([1, 2, 3])
        with pytest.raises(ValueError):
            s.angles[0] = 0.0

    @pytest.mark.parametrize("raw", [[], [1.0]])
    def test_too_few(self, raw):
        with pytest.raises(ValueError, match="at least 2"):
            ingest(raw)

    def test_non_finite_reports_index(self):
        with pytest.raises(ValueError, match="index 2"):
            ingest([1.0, 2.0, float("nan"), 4.0])

    def test_unknown_unit(self):
        with pytest.raises(ValueError, match="unit"):
            ingest([1, 2], "grad")


class TestAngleFile:
    def test_comments_and_blanks(self, tmp_path):
        f = tmp_path / "angles.txt"
        f.write_text("# pigeons\n\n" + "\n".join(str(a) for a in PIGEON) + "\n\n")
        s = read_angle_file(f)
        assert s.n == 13
        assert_allclose(statistic(s), 2.826091, atol=1e-6)

    def test_bad_line(self, tmp_path):
        f = tmp_path / "angles.txt"
        f.write_text("10\nnorth\n")
        with pytest.raises(ValueError, match=":2:"):
            read_angle_file(f)


class TestSpacings:
    def test_grid(self):
        for n in (2, 3, 7, 50):
            gaps = spacings(ingest(np.arange(n) * TWO_PI / n, "radians")).spacings
            assert_allclose(gaps, TWO_PI / n, atol=1e-12)

    def test_quarter_turns(self):
        gaps = spacings(ingest([0, 90, 180, 270])).spacings
        assert_allclose(gaps, math.pi / 2, atol=1e-12)

    def test_wraparound(self):
        gaps = spacings(ingest([0, 350])).spacings
        assert_allclose(gaps, [math.radians(350), math.radians(10)], atol=1e-12)


class TestStatistic:
    @pytest.mark.parametrize(
        "data, expected",
        [
            (EPILEPTIC, 3.089233),
            (PIGEON, 2.826091),
            (KAMIOKANDE_12, 1.989675),
            (KAMIOKANDE_11, 1.869089),
        ],
    )
    def test_worked_examples(self, data, expected):
        assert abs(statistic(ingest(data)) - expected) < 1e-6

    def test_pigeon_degrees(self):
        assert math.degrees(statistic(ingest(PIGEON))) == pytest.approx(161.9231, abs=1e-4)

    def test_grid_is_zero(self):
        assert statistic(ingest(np.arange(12) * 30.0)) == pytest.approx(0.0, abs=1e-12)

    def test_coincident_points_hit_upper_bound(self):
        n = 9
        assert statistic(ingest([42.0] * n)) == pytest.approx(TWO_PI * (1 - 1 / n))

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(3)
        theta = rng.uniform(-10, 10, size=(20, 17))
        expected = [statistic(ingest(row, "radians")) for row in theta]
        assert_allclose(statistic_batch(theta), expected, rtol=1e-12)


angle_lists = st.lists(
    st.floats(0, 2 * math.pi, exclude_max=True, allow_nan=False), min_size=2, max_size=60
)


@settings(max_examples=300, deadline=None)
@given(angle_lists, st.floats(-20, 20, allow_nan=False))
def test_rotation_invariance(angles, shift):
    u0 = statistic(ingest(angles, "radians"))
    u1 = statistic(ingest(np.asarray(angles) + shift, "radians"))
    assert abs(u0 - u1) < 1e-10


@settings(max_examples=200, deadline=None)
@given(angle_lists, st.randoms(use_true_random=False))
def test_permutation_invariance(angles, rnd):
    shuffled = list(angles)
    rnd.shuffle(shuffled)
    assert statistic(ingest(angles, "radians")) == statistic(ingest(shuffled, "radians"))


@settings(max_examples=300, deadline=None)
@given(angle_lists)
def test_support_and_conservation(angles):
    s = ingest(angles, "radians")
    gaps = spacings(s).spacings
    assert np.all(gaps >= 0)
    assert abs(gaps.sum() - TWO_PI) < 1e-12
    assert 0.0 <= statistic(s) <= TWO_PI * (1 - 1 / s.n)


class TestSpacingTest:
    def test_auto_uses_exact_below_threshold(self):
        res = spacing_test(ingest([0, 10, 20, 200, 300]))
        assert res.method == "exact_quadrature"
        assert res.truncation_order is None

    def test_auto_uses_gc_from_threshold(self):
        res = spacing_test(ingest(PIGEON))
        assert res.method == "gram_charlier"
        assert res.truncation_order == 10
        assert res.statistic_deg == pytest.approx(math.degrees(res.statistic_rad))

    def test_threshold_is_configurable(self):
        res = spacing_test(ingest(PIGEON), small_n_threshold=20)
        assert res.method == "exact_quadrature"

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            spacing_test(ingest(PIGEON), method="saddlepoint")
