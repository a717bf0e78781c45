import numpy as np
import pytest

import oracle
from ivif_edas.errors import DomainError, InvalidIVIFN
from ivif_edas.ivif import (
    IVIFN, MAX, MIN, HesitancyInterval, Ordering, accuracy_simple, accuracy_wc, add, compare,
    complement, dist_hamming, dist_hausdorff, dist_hybrid, dist_hybrid_by_pair, hesitancy, join,
    meet, mul, power, scale, score_simple, score_wc, validate_array,
)
from strategies import random_ivifn

X = IVIFN(0.50, 0.60, 0.25, 0.30)
CELL_11 = IVIFN(0.580, 0.682, 0.154, 0.212)
AV_1 = IVIFN(0.607, 0.720, 0.142, 0.205)
CELL_21 = IVIFN(0.775, 0.878, 0.050, 0.100)
ZERO = IVIFN(0.0, 0.0, 0.0, 0.0)


class TestConstruction:
    @pytest.mark.parametrize("bad", [
        (0.6, 0.5, 0.1, 0.2),     # lm > rm
        (0.1, 0.2, 0.4, 0.3),     # ln > rn
        (0.5, 0.7, 0.2, 0.4),     # rm + rn > 1
        (-0.1, 0.2, 0.1, 0.2),
        (0.1, 1.2, 0.0, 0.0),
        (float("nan"), 0.2, 0.1, 0.2),
    ])
    def test_rejects_invalid(self, bad):
        with pytest.raises(InvalidIVIFN):
            IVIFN(*bad)

    def test_does_not_clamp(self):
        with pytest.raises(InvalidIVIFN):
            IVIFN(0.5, 0.6, 0.3, 0.41)

    def test_constants(self):
        assert MAX.as_tuple() == (1.0, 1.0, 0.0, 0.0)
        assert MIN.as_tuple() == (0.0, 0.0, 1.0, 1.0)

    def test_validate_array_names_offending_cell(self):
        cells = np.tile(X.as_array(), (2, 3, 1))
        cells[1, 2] = (0.5, 0.7, 0.2, 0.4)
        with pytest.raises(InvalidIVIFN) as info:
            validate_array(cells)
        assert info.value.context["index"] == [1, 2]

    def test_immutable(self):
        with pytest.raises(AttributeError):
            X.lm = 0.1


class TestAlgebra:
    def test_complement_swaps_intervals(self):
        assert complement(X) == IVIFN(0.25, 0.30, 0.50, 0.60)

    def test_complement_of_max_is_min(self):
        assert complement(MAX) == MIN

    def test_min_is_additive_identity(self):
        assert add(X, MIN) == X

    def test_exponent_one_is_identity(self):
        # 1 - (1 - m) is exact only up to rounding.
        assert scale(1, X).as_tuple() == pytest.approx(X.as_tuple(), abs=1e-15)
        assert power(X, 1).as_tuple() == pytest.approx(X.as_tuple(), abs=1e-15)

    def test_mul_example(self):
        y = IVIFN(0.5, 0.5, 0.3, 0.3)
        got = mul(y, y)
        assert got.as_tuple() == pytest.approx((0.25, 0.25, 0.51, 0.51), abs=1e-15)

    def test_join_meet(self):
        y = IVIFN(0.3, 0.7, 0.1, 0.2)
        assert join(X, y) == IVIFN(0.5, 0.7, 0.1, 0.2)
        assert meet(X, y) == IVIFN(0.3, 0.6, 0.25, 0.30)

    @pytest.mark.parametrize("k", [0, -1.0, float("inf")])
    def test_scale_power_domain(self, k):
        with pytest.raises(DomainError):
            scale(k, X)
        with pytest.raises(DomainError):
            power(X, k)

    def test_array_and_scalar_routes_agree(self):
        rng = np.random.default_rng(1)
        a, b = random_ivifn(rng, 50), random_ivifn(rng, 50)
        for fn in (add, mul, join, meet):
            batch = fn(a, b)
            for i in range(50):
                scalar = fn(IVIFN(*a[i]), IVIFN(*b[i]))
                assert scalar.as_tuple() == pytest.approx(tuple(batch[i]), abs=0)


class TestCharacteristics:
    def test_hesitancy(self):
        h = hesitancy(X)
        assert (h.lo, h.hi) == pytest.approx((0.10, 0.25))
        assert hesitancy(MAX) == HesitancyInterval(0.0, 0.0)
        assert hesitancy(ZERO) == HesitancyInterval(1.0, 1.0)

    def test_hesitancy_never_exceeds_unit_interval(self):
        cells = random_ivifn(np.random.default_rng(2), 500)
        h = hesitancy(cells)
        assert (h >= -1e-12).all() and (h <= 1 + 1e-12).all()
        assert (h[:, 0] <= h[:, 1] + 1e-12).all()

    def test_score_wc(self):
        assert score_wc(MAX) == 1
        assert score_wc(MIN) == -1
        assert score_wc(CELL_11) == pytest.approx(0.299552, abs=1e-9)

    def test_accuracy_wc(self):
        assert accuracy_wc(ZERO) == 1
        assert accuracy_wc(MAX) == 0
        assert accuracy_wc(AV_1) == pytest.approx(0.179544, abs=1e-9)

    def test_simple_score_and_accuracy(self):
        agg = IVIFN(0.668, 0.782, 0.103, 0.172)
        assert score_simple(agg) == pytest.approx(0.588, abs=5e-4)
        # Exactly 0.8625 on the rounded inputs; the reference table rounds it to 0.863.
        assert accuracy_simple(agg) == pytest.approx(0.8625, abs=1e-12)
        assert (score_simple(MAX), accuracy_simple(MAX)) == (1, 1)
        assert (score_simple(ZERO), accuracy_simple(ZERO)) == (0, 0)

    def test_vectorized_scores_match_oracle(self):
        cells = random_ivifn(np.random.default_rng(3), 200)
        np.testing.assert_allclose(score_wc(cells), [oracle.score_wc(c) for c in cells], atol=1e-15)
        np.testing.assert_allclose(accuracy_wc(cells), [oracle.accuracy_wc(c) for c in cells], atol=1e-15)
        np.testing.assert_allclose(score_simple(cells), [oracle.score_simple(c) for c in cells], atol=1e-15)


class TestCompare:
    def test_examples(self):
        assert compare(MAX, MIN) is Ordering.GREATER
        assert compare(X, X) is Ordering.EQUAL
        assert compare(CELL_11, AV_1) is Ordering.LESS

    def test_accuracy_breaks_score_ties(self):
        # Same score_wc, different accuracy.
        a = IVIFN(0.0, 0.0, 0.0, 0.0)
        b = IVIFN(0.0, 0.0, 0.0, 0.0)
        assert compare(a, b) is Ordering.EQUAL
        c, d = IVIFN(0.2, 0.2, 0.2, 0.2), IVIFN(0.1, 0.1, 0.1, 0.1)
        assert score_wc(c) == pytest.approx(score_wc(d))
        assert compare(c, d) is Ordering.LESS   # accuracy 0.6 vs 0.8

    def test_tie_tolerance(self):
        y = IVIFN(0.5 + 1e-12, 0.6, 0.25, 0.30)
        assert compare(X, y) is Ordering.EQUAL

    def test_antisymmetry_on_batch(self):
        rng = np.random.default_rng(4)
        a, b = random_ivifn(rng, 1000), random_ivifn(rng, 1000)
        np.testing.assert_array_equal(compare(a, b), -compare(b, a))


class TestDistances:
    def test_examples(self):
        assert dist_hybrid(X, X) == 0
        assert dist_hamming(MAX, MIN) == 1
        assert dist_hausdorff(MAX, MIN) == 0.5
        assert dist_hybrid(MAX, MIN) == 1.5
        assert dist_hybrid(CELL_21, AV_1) == pytest.approx(0.21475, abs=1e-12)

    def test_by_pair_variant_differs(self):
        nip = IVIFN(0.370, 0.470, 0.379, 0.430)
        # Hausdorff taken per interval adds both maxima.
        assert dist_hybrid(CELL_11, nip) == pytest.approx(0.32875, abs=1e-12)
        assert dist_hybrid_by_pair(CELL_11, nip) == pytest.approx(0.865 / 4 + 0.212 / 2 + 0.225 / 2, abs=1e-12)

    def test_hybrid_matches_oracle(self):
        rng = np.random.default_rng(5)
        a, b = random_ivifn(rng, 300), random_ivifn(rng, 300)
        np.testing.assert_allclose(dist_hybrid(a, b), [oracle.hybrid(x, y) for x, y in zip(a, b)], atol=1e-15)
