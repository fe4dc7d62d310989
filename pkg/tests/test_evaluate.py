import math

import numpy as np
import pytest

from mahler import (SignPolynomial, UndersamplingError, default_grid_size,
                    evaluate_at_roots, evaluate_at_roots_any, evaluate_point,
                    evaluate_points, fekete, rudin_shapiro)
from mahler.evaluate import is_power_of_two, next_power_of_two


def test_power_of_two_helpers():
    assert [is_power_of_two(k) for k in (1, 2, 3, 4, 12, 16)] == \
        [True, True, False, True, False, True]
    assert next_power_of_two(1) == 1
    assert next_power_of_two(5) == 8
    assert next_power_of_two(64) == 64
    assert default_grid_size(3, oversample=16) == 64


def test_evaluate_constant_and_monomial():
    one = SignPolynomial.from_text("+")
    s = evaluate_at_roots(one, 8)
    np.testing.assert_allclose(s.values, np.ones(8), atol=1e-14)
    z = SignPolynomial.from_text("0+")
    s = evaluate_at_roots(z, 8)
    np.testing.assert_allclose(s.values, np.exp(2j * np.pi * np.arange(8) / 8),
                               atol=1e-14)


def test_fft_matches_horner_on_pow2_grid():
    f = rudin_shapiro(6).p
    a = evaluate_at_roots(f, 256).values
    b = evaluate_at_roots_any(f, 256).values
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_non_pow2_grid_uses_horner():
    f = fekete(13)
    s = evaluate_at_roots(f, 100)
    t = evaluate_at_roots_any(f, 100)
    np.testing.assert_allclose(s.values, t.values, atol=0)


def test_undersampling_rejected():
    f = rudin_shapiro(4).p
    with pytest.raises(UndersamplingError):
        evaluate_at_roots(f, 8)


def test_evaluate_point_agrees_with_grid():
    f = rudin_shapiro(5).p
    m = 64
    s = evaluate_at_roots(f, m)
    for j in (0, 7, 33):
        v = evaluate_point(f, 2 * math.pi * j / m)
        assert v == pytest.approx(s.values[j], abs=1e-10)


def test_evaluate_points_at_one():
    # f(1) is the coefficient sum
    f = fekete(11)
    assert evaluate_point(f, 0.0) == pytest.approx(0.0, abs=1e-12)
    g = rudin_shapiro(3).p
    assert evaluate_point(g, 0.0) == pytest.approx(np.sum(g.coeffs), abs=1e-12)


def test_thetas_shape_and_spacing():
    s = evaluate_at_roots(rudin_shapiro(2).p, 16)
    th = s.thetas()
    assert th.shape == (16,)
    assert th[1] == pytest.approx(2 * math.pi / 16)
