"""Bayes-optimal classification and the exhaustive classifier oracle."""

import numpy as np
import pytest

from misbounds import (
    Classifier,
    LengthMismatchError,
    OutOfRangeError,
    TooLargeError,
    bayes_classifier,
    bayes_error,
    brute_force_bayes_error,
    classifier_error,
    validate_joint,
)

EXAMPLE = validate_joint([[0.4, 0.1], [0.1, 0.4]])


def random_model(rng, k, n):
    w = rng.random((k, n))
    return validate_joint(w / w.sum())


class TestClassifierError:
    def test_matched_rule(self):
        assert classifier_error(EXAMPLE, Classifier(np.array([1, 2]))) == pytest.approx(0.2)

    def test_anti_matched_rule(self):
        assert classifier_error(EXAMPLE, Classifier(np.array([2, 1]))) == pytest.approx(0.8)

    def test_perfect_classifier_has_zero_error(self):
        # all mass on row 1, rule always answers 1
        m = validate_joint([[0.3, 0.7], [0.0, 0.0]])
        assert classifier_error(m, Classifier(np.array([1, 1]))) == pytest.approx(0.0, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            classifier_error(EXAMPLE, Classifier(np.array([1, 2, 1])))

    def test_label_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            classifier_error(EXAMPLE, Classifier(np.array([1, 3])))


class TestBayesClassifier:
    def test_example_model(self):
        assert bayes_classifier(EXAMPLE).labels.tolist() == [1, 2]

    def test_ties_break_to_smallest_label(self):
        m = validate_joint([[0.2, 0.0], [0.2, 0.6]])
        assert bayes_classifier(m).labels.tolist() == [1, 2]

    def test_identical_rows_all_label_one(self):
        m = validate_joint(np.full((3, 4), 1.0 / 12))
        assert bayes_classifier(m).labels.tolist() == [1, 1, 1, 1]

    def test_labels_are_minimal_argmaxes(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            m = random_model(rng, int(rng.integers(2, 6)), int(rng.integers(1, 6)))
            f = bayes_classifier(m)
            for x in range(m.n):
                col = m.w[:, x]
                argmaxes = np.flatnonzero(col == col.max())
                assert f.labels[x] == argmaxes.min() + 1

    def test_callable_interface_is_one_based(self):
        f = bayes_classifier(EXAMPLE)
        assert (f(1), f(2)) == (1, 2)


class TestBayesError:
    def test_example_model(self):
        assert bayes_error(EXAMPLE) == pytest.approx(0.2)

    def test_equals_error_of_bayes_classifier(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            m = random_model(rng, int(rng.integers(2, 8)), int(rng.integers(1, 7)))
            assert bayes_error(m) == pytest.approx(
                classifier_error(m, bayes_classifier(m)), abs=1e-14
            )

    def test_identical_subdistributions_hit_upper_extreme(self):
        for k in (2, 3, 5):
            m = validate_joint(np.full((k, 3), 1.0 / (3 * k)))
            assert bayes_error(m) == pytest.approx(1 - 1 / k, abs=1e-14)

    def test_disjoint_supports_give_zero(self):
        m = validate_joint([[0.5, 0.0], [0.0, 0.5]])
        assert bayes_error(m) == pytest.approx(0.0, abs=1e-15)

    def test_range_invariant(self):
        rng = np.random.default_rng(23)
        for _ in range(300):
            k = int(rng.integers(2, 9))
            m = random_model(rng, k, int(rng.integers(1, 7)))
            assert -1e-15 <= bayes_error(m) <= 1 - 1 / k + 1e-15

    def test_no_classifier_beats_it(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            k, n = int(rng.integers(2, 6)), int(rng.integers(1, 6))
            m = random_model(rng, k, n)
            star = bayes_error(m)
            f = Classifier(rng.integers(1, k + 1, size=n))
            assert classifier_error(m, f) >= star - 1e-14


class TestBruteForce:
    def test_example_model(self):
        assert brute_force_bayes_error(EXAMPLE) == pytest.approx(0.2)

    def test_uniform_model_any_rule_is_optimal(self):
        m = validate_joint(np.full((3, 3), 1.0 / 9))
        assert brute_force_bayes_error(m) == pytest.approx(2 / 3, abs=1e-14)

    def test_agrees_with_closed_form_randomized(self):
        rng = np.random.default_rng(31)
        for _ in range(150):
            k, n = int(rng.integers(2, 5)), int(rng.integers(1, 6))
            m = random_model(rng, k, n)
            assert abs(brute_force_bayes_error(m) - bayes_error(m)) <= 1e-12

    def test_chunking_does_not_change_result(self):
        rng = np.random.default_rng(37)
        m = random_model(rng, 3, 7)
        assert brute_force_bayes_error(m, chunk=5) == brute_force_bayes_error(m, chunk=4096)

    def test_guard_rejects_huge_instances(self):
        rng = np.random.default_rng(41)
        m = random_model(rng, 8, 9)
        with pytest.raises(TooLargeError):
            brute_force_bayes_error(m)
