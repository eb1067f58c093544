"""Conditional entropy, Feder-Merhav bounds, Renyi entropy, counterexample.

High-precision reference values in this file were produced with mpmath at
40 significant digits and frozen here.
"""

import math

import numpy as np
import pytest

from misbounds import (
    BadBetaError,
    EntropyOutOfRangeError,
    NegativeEntropyError,
    OutOfRangeError,
    conditional_entropy,
    entropy_of_profile,
    ep_counterexample_check,
    lower_fm,
    phi,
    renyi_conditional_entropy,
    upper_fm,
    validate_joint,
    validate_profile,
)

H2_02 = 0.5004024235381879  # binary entropy of 0.2, nats


def random_model(rng, k, n):
    w = rng.random((k, n))
    return validate_joint(w / w.sum())


class TestConditionalEntropy:
    def test_example_model_equals_binary_entropy(self):
        m = validate_joint([[0.4, 0.1], [0.1, 0.4]])
        assert conditional_entropy(m).h == pytest.approx(H2_02, abs=1e-14)

    def test_deterministic_posteriors_give_zero(self):
        m = validate_joint([[0.5, 0.0], [0.0, 0.5]])
        assert conditional_entropy(m).h == pytest.approx(0.0, abs=1e-15)

    def test_uniform_posteriors_give_log_k(self):
        for k in (2, 3, 6):
            m = validate_joint(np.full((k, 4), 1.0 / (4 * k)))
            assert conditional_entropy(m).h == pytest.approx(math.log(k), abs=1e-13)

    def test_zero_marginal_columns_ignored(self):
        with_zero = validate_joint([[0.4, 0.1, 0.0], [0.1, 0.4, 0.0]])
        without = validate_joint([[0.4, 0.1], [0.1, 0.4]])
        assert conditional_entropy(with_zero).h == conditional_entropy(without).h

    def test_range_invariant_randomized(self):
        rng = np.random.default_rng(53)
        for _ in range(200):
            k = int(rng.integers(2, 9))
            h = conditional_entropy(random_model(rng, k, int(rng.integers(1, 7))))
            assert 0.0 <= h.h <= math.log(k)


class TestEntropyOfProfile:
    def test_half_half_zero(self):
        p = validate_profile([0.5, 0.5, 0.0])
        assert entropy_of_profile(p).h == pytest.approx(math.log(2), abs=1e-15)

    def test_flat_support_of_size_ell(self):
        for k, ell in ((5, 2), (6, 4), (7, 7)):
            a = np.zeros(k)
            a[:ell] = 1.0 / ell
            assert entropy_of_profile(validate_profile(a)).h == pytest.approx(
                math.log(ell), abs=1e-13
            )

    def test_lifted_flat_example(self):
        p = validate_profile([2 / 3, 1 / 6, 1 / 6])
        expected = (2 / 3) * math.log(3 / 2) + (1 / 3) * math.log(6)
        assert entropy_of_profile(p).h == pytest.approx(expected, abs=1e-14)
        assert entropy_of_profile(p).h == pytest.approx(0.8675632284814612, abs=1e-13)

    def test_geometric_profile_reference(self):
        # H(4/7, 2/7, 1/7), frozen from a 40-digit evaluation
        p = validate_profile([4 / 7, 2 / 7, 1 / 7])
        assert entropy_of_profile(p).h == pytest.approx(0.9556998911125343, abs=1e-13)


class TestPhi:
    def test_binary_case_is_binary_entropy(self):
        assert phi(2, 0.5) == pytest.approx(math.log(2), abs=1e-15)
        assert phi(2, 0.2) == pytest.approx(H2_02, abs=1e-15)

    def test_endpoints(self):
        for k in (2, 3, 7, 20):
            assert phi(k, 0.0) == 0.0
            assert phi(k, 1 - 1 / k) == pytest.approx(math.log(k), abs=1e-13)

    def test_equals_entropy_of_flat_remainder_profile(self):
        # phi(p) is the entropy of (1-p, p/(k-1), ..., p/(k-1))
        rng = np.random.default_rng(59)
        for _ in range(50):
            k = int(rng.integers(2, 9))
            p = float(rng.uniform(0, 1 - 1 / k))
            a = np.full(k, p / (k - 1))
            a[0] = 1 - p
            assert phi(k, p) == pytest.approx(
                entropy_of_profile(validate_profile(a)).h, abs=1e-12
            )

    def test_strictly_increasing(self):
        for k in (2, 5, 11):
            grid = np.linspace(0, 1 - 1 / k, 200)
            vals = [phi(k, float(p)) for p in grid]
            assert all(x < y for x, y in zip(vals, vals[1:]))

    def test_domain_enforced(self):
        with pytest.raises(OutOfRangeError):
            phi(3, 0.7)


class TestLowerFM:
    def test_binary_full_entropy(self):
        assert lower_fm(2, math.log(2)) == pytest.approx(0.5, abs=1e-12)

    def test_zero_entropy(self):
        assert lower_fm(5, 0.0) == 0.0

    def test_inverts_binary_entropy_at_point_two(self):
        assert lower_fm(2, H2_02) == pytest.approx(0.2, abs=1e-11)

    def test_frozen_inverse_references(self):
        # roots of phi(k, .) = h found independently at 40-digit precision
        for k, h, expected in (
            (3, 0.5, 0.13920211580348593),
            (3, 1.0, 0.44993842447405774),
            (5, 1.2, 0.38490175669769777),
            (8, 2.0, 0.7260745028775),
        ):
            assert lower_fm(k, h) == pytest.approx(expected, abs=1e-12)

    def test_round_trip_through_phi(self):
        for k in (2, 3, 7, 13, 20):
            for h in np.linspace(0, math.log(k), 60):
                h = float(h)
                assert phi(k, lower_fm(k, h)) == pytest.approx(h, abs=1e-11)

    def test_monotone_in_h(self):
        grid = np.linspace(0, math.log(4), 100)
        vals = [lower_fm(4, float(h)) for h in grid]
        assert all(x <= y + 1e-15 for x, y in zip(vals, vals[1:]))

    def test_entropy_domain_enforced(self):
        with pytest.raises(EntropyOutOfRangeError):
            lower_fm(3, math.log(3) + 0.01)
        with pytest.raises(EntropyOutOfRangeError):
            lower_fm(3, -0.01)


class TestUpperFM:
    def test_knot_values(self):
        for m in range(1, 21):
            assert upper_fm(math.log(m)) == pytest.approx(1 - 1 / m, abs=1e-12)

    def test_zero_entropy_is_zero(self):
        assert upper_fm(0.0) == 0.0

    def test_first_branch_is_scaled_log(self):
        # on [0, ln 2] the bound is h / (2 ln 2)
        for h in (0.05, 0.3, 0.6, math.log(2)):
            assert upper_fm(h) == pytest.approx(h / (2 * math.log(2)), abs=1e-13)

    def test_frozen_references(self):
        for h, expected in (
            (0.3, 0.21640425613334452),
            (1.2, 0.6960358097360192),
            (2.0, 0.8643762887461418),
            (2.5, 0.917875424438122),
        ):
            assert upper_fm(h) == pytest.approx(expected, abs=1e-13)

    def test_continuous_at_knots(self):
        for m in range(1, 8):
            node = upper_fm(math.log(m))
            assert abs(upper_fm(math.log(m) - 1e-9) - node) <= 1e-6
            assert abs(upper_fm(math.log(m) + 1e-9) - node) <= 1e-6

    def test_monotone_nondecreasing(self):
        grid = np.linspace(0, math.log(30), 400)
        vals = [upper_fm(float(h)) for h in grid]
        assert all(x <= y + 1e-14 for x, y in zip(vals, vals[1:]))

    def test_negative_entropy_rejected(self):
        with pytest.raises(NegativeEntropyError):
            upper_fm(-0.1)


class TestRenyi:
    def test_deterministic_rows_given_columns(self):
        m = validate_joint([[0.5, 0.5], [0.0, 0.0]])
        for beta in (0.5, 1.0, 2.0, 5.0):
            assert renyi_conditional_entropy(m, beta).h_beta == pytest.approx(0.0, abs=1e-15)

    def test_uniform_rows_given_columns(self):
        for k in (2, 4):
            m = validate_joint(np.full((k, 3), 1.0 / (3 * k)))
            for beta in (0.5, 2.0, 7.0):
                assert renyi_conditional_entropy(m, beta).h_beta == pytest.approx(
                    math.log2(k), abs=1e-12
                )

    def test_frozen_references_on_example_model(self):
        # per-column posterior (0.8, 0.2); 40-digit references
        m = validate_joint([[0.4, 0.1], [0.1, 0.4]])
        assert renyi_conditional_entropy(m, 0.5).h_beta == pytest.approx(
            0.84799690655495, abs=1e-13
        )
        assert renyi_conditional_entropy(m, 2.0).h_beta == pytest.approx(
            0.5563933485243853, abs=1e-13
        )

    def test_beta_one_is_shannon_in_bits(self):
        m = validate_joint([[0.4, 0.1], [0.1, 0.4]])
        assert renyi_conditional_entropy(m, 1.0).h_beta == pytest.approx(
            0.7219280948873623, abs=1e-13
        )

    def test_beta_one_is_limit_of_neighbors(self):
        rng = np.random.default_rng(61)
        m = random_model(rng, 3, 4)
        at_one = renyi_conditional_entropy(m, 1.0).h_beta
        near = renyi_conditional_entropy(m, 1.0 + 1e-7).h_beta
        assert near == pytest.approx(at_one, abs=1e-5)

    def test_rectangular_models_allowed(self):
        m = validate_joint([[0.2, 0.1, 0.1], [0.2, 0.2, 0.2]])
        assert renyi_conditional_entropy(m, 2.0).h_beta >= 0.0

    def test_bad_beta_rejected(self):
        m = validate_joint([[0.4, 0.1], [0.1, 0.4]])
        with pytest.raises(BadBetaError):
            renyi_conditional_entropy(m, 0.0)
        with pytest.raises(BadBetaError):
            renyi_conditional_entropy(m, -2.0)


class TestCounterexample:
    def test_reported_values_are_exact(self):
        rep = ep_counterexample_check()
        assert rep.p_e == pytest.approx(0.5, abs=1e-12)
        assert rep.h_beta == pytest.approx(0.0, abs=1e-12)
        assert rep.h_s == pytest.approx(1.0, abs=1e-12)
        assert rep.ep_numerator == pytest.approx(-1.0, abs=1e-12)

    def test_bound_flagged_false(self):
        rep = ep_counterexample_check()
        assert rep.bound_false
        assert rep.ok

    def test_all_named_checks_pass(self):
        rep = ep_counterexample_check()
        assert dict(rep.checks) == {
            "error_is_half": True,
            "renyi_all_zero": True,
            "shannon_of_error_one_bit": True,
            "numerator_negative": True,
        }

    def test_dict_serialization_shape(self):
        doc = ep_counterexample_check().to_dict()
        assert set(doc) == {"P_e", "H_beta", "H_S", "ep_numerator", "bound_false", "checks"}
