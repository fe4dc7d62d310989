import numpy as np
import pytest

from mahler import (DomainError, Family, SignPolynomial, SizeError, fekete,
                    fekete_shifted, legendre_symbol, negate_variable,
                    normalize, rudin_shapiro)
from mahler.polynomials import is_odd_prime


def test_rudin_shapiro_base_case():
    pair = rudin_shapiro(0)
    assert pair.p.coeffs.tolist() == [1]
    assert pair.q.coeffs.tolist() == [1]
    assert pair.N == 1


def test_rudin_shapiro_recursion_concatenation():
    for n in range(0, 8):
        cur = rudin_shapiro(n)
        nxt = rudin_shapiro(n + 1)
        np.testing.assert_array_equal(nxt.p.coeffs[:cur.N], cur.p.coeffs)
        np.testing.assert_array_equal(nxt.p.coeffs[cur.N:], cur.q.coeffs)
        np.testing.assert_array_equal(nxt.q.coeffs[:cur.N], cur.p.coeffs)
        np.testing.assert_array_equal(nxt.q.coeffs[cur.N:], -cur.q.coeffs)


def test_rudin_shapiro_small_values():
    pair = rudin_shapiro(2)
    assert pair.p.coeffs.tolist() == [1, 1, 1, -1]
    assert pair.q.coeffs.tolist() == [1, 1, -1, 1]


def test_rudin_shapiro_rejects_bad_n():
    with pytest.raises(DomainError):
        rudin_shapiro(-1)
    with pytest.raises(SizeError):
        rudin_shapiro(27)


def test_sign_polynomial_text_round_trip():
    f = SignPolynomial.from_text("+-0+")
    assert f.coeffs.tolist() == [1, -1, 0, 1]
    assert f.to_text() == "+-0+"
    g = SignPolynomial.from_text(f.to_text())
    np.testing.assert_array_equal(g.coeffs, f.coeffs)


def test_sign_polynomial_rejects_out_of_range():
    with pytest.raises(DomainError):
        SignPolynomial(np.array([1, 2], dtype=np.int8), Family.CUSTOM)
    with pytest.raises(DomainError):
        SignPolynomial.from_text("+0")


def test_sign_polynomial_coeffs_immutable():
    f = SignPolynomial.from_text("++")
    with pytest.raises(ValueError):
        f.coeffs[0] = -1


def test_legendre_symbol_small_primes():
    # squares mod 7 are {1, 2, 4}
    assert [legendre_symbol(a, 7) for a in range(1, 7)] == [1, 1, -1, 1, -1, -1]
    assert legendre_symbol(0, 7) == 0
    assert legendre_symbol(14, 7) == 0


def test_is_odd_prime():
    primes = {3, 5, 7, 11, 13, 1009, 10007}
    for k in list(primes) + [2, 4, 9, 15, 1001, 10005]:
        assert is_odd_prime(k) == (k in primes)


def test_fekete_small_case():
    # symbols mod 5: 1, -1, -1, 1
    assert fekete(5).coeffs.tolist() == [0, 1, -1, -1, 1]
    assert fekete_shifted(5).coeffs.tolist() == [1, -1, -1, 1]


def test_fekete_rejects_composite():
    with pytest.raises(DomainError):
        fekete(9)
    with pytest.raises(DomainError):
        fekete(2)


def test_negate_variable_flips_odd_coefficients():
    f = SignPolynomial.from_text("++-+")
    g = negate_variable(f)
    assert g.coeffs.tolist() == [1, -1, -1, -1]


def test_normalize_scale():
    pair = rudin_shapiro(4)
    np_, nq = normalize(pair)
    assert np_.scale == pytest.approx(2.0 ** (-2.5))
    assert nq.scale == np_.scale
    assert np_.base is pair.p
