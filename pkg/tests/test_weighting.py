import numpy as np
import pytest

import golden
import oracle
from ivif_edas.errors import DegenerateProblemError, ShapeError
from ivif_edas.weighting import (
    entropy, entropy_breakdown, entropy_distance_matrix, entropy_weights, negative_ideal,
    normalize_distances,
)
from strategies import random_ivifn

G = golden.GROUP_NORMALIZED


def test_negative_ideal_single_row():
    m = G[:1]
    np.testing.assert_array_equal(negative_ideal(m), m[0])


def test_negative_ideal_reference_columns():
    nip = negative_ideal(G)
    np.testing.assert_allclose(nip[0], (0.370, 0.470, 0.379, 0.430))
    np.testing.assert_allclose(nip[4], (0.514, 0.615, 0.231, 0.283))


def test_distances_first_column():
    dist = entropy_distance_matrix(G, negative_ideal(G))
    np.testing.assert_allclose(dist[:, 0], (0.32875, 0.572, 0.20575, 0.0, 0.4645), atol=1e-12)
    assert dist[3, 0] == 0 and dist[0, 3] == 0
    assert dist[:, 0].sum() == pytest.approx(1.571, abs=1e-12)


def test_normalize_distances():
    norm, deg = normalize_distances(np.array([[0.3288, 1.0], [0.572, 1.0], [0.2058, 1.0],
                                              [0.0, 1.0], [0.4645, 1.0]]))
    np.testing.assert_allclose(norm[:, 0], (0.209, 0.364, 0.131, 0.0, 0.296), atol=5e-4)
    np.testing.assert_allclose(norm[:, 1], 0.2)
    assert not deg.any()


def test_degenerate_column_flagged():
    norm, deg = normalize_distances(np.array([[0.0, 1.0], [0.0, 3.0]]))
    assert deg.tolist() == [True, False]
    assert entropy(norm, deg)[0] == 1.0


def test_entropy_extremes():
    assert entropy(np.full((5, 1), 0.2))[0] == pytest.approx(1.0)
    assert entropy(np.array([[1.0], [0.0], [0.0]]))[0] == 0.0
    with pytest.raises(ShapeError):
        entropy(np.array([[1.0]]))


def test_weights_match_oracle():
    rng = np.random.default_rng(20)
    for _ in range(20):
        m = random_ivifn(rng, (4, 3))
        np.testing.assert_allclose(entropy_weights(m), oracle.entropy_weights(m.tolist()), atol=1e-12)


def test_identical_columns_get_equal_weight():
    rng = np.random.default_rng(21)
    col = random_ivifn(rng, (5, 1))
    m = np.concatenate([col, col, random_ivifn(rng, (5, 1))], axis=1)
    w = entropy_weights(m)
    assert w[0] == pytest.approx(w[1], abs=1e-15)


def test_informative_column_gets_largest_weight():
    # Column 0 separates one alternative; column 1 spreads distances evenly.
    m = np.array([
        [(0.1, 0.2, 0.6, 0.7), (0.1, 0.2, 0.6, 0.7)],
        [(0.1, 0.2, 0.6, 0.7), (0.3, 0.4, 0.4, 0.5)],
        [(0.7, 0.8, 0.1, 0.2), (0.3, 0.4, 0.4, 0.5)],
    ])
    b = entropy_breakdown(m)
    assert b.weights[0] > b.weights[1]
    assert b.weights.sum() == pytest.approx(1.0)


def test_all_columns_degenerate():
    m = np.tile(G[:1], (3, 1, 1))
    with pytest.raises(DegenerateProblemError):
        entropy_weights(m)


def test_by_pair_distance_option():
    b = entropy_breakdown(G, distance="hybrid_by_pair")
    assert b.norm_dist[0, 0] == pytest.approx(0.2111, abs=1e-4)
