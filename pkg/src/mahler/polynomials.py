"""Exact integer construction of Rudin-Shapiro pairs, Fekete polynomials,
and generic sign polynomials.

Coefficients are stored as read-only int8 vectors in increasing-degree
order; every value is built iteratively, never by recursion.
"""

from __future__ import annotations

import dataclasses
import enum

import numpy as np

from .errors import DomainError, SizeError

MAX_RS_LEVEL = 26

# Deterministic Miller-Rabin witness set, valid for all n < 3.4e14.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


class Family(str, enum.Enum):
    RUDIN_SHAPIRO_P = "rudin_shapiro_P"
    RUDIN_SHAPIRO_Q = "rudin_shapiro_Q"
    FEKETE_F = "fekete_f"
    FEKETE_G = "fekete_g"
    CUSTOM = "custom"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int8)
    arr.flags.writeable = False
    return arr


@dataclasses.dataclass(frozen=True)
class SignPolynomial:
    """Polynomial with coefficients in {-1, 0, 1}, index k holding the z^k term."""

    coeffs: np.ndarray
    family: Family = Family.CUSTOM

    def __post_init__(self):
        coeffs = _frozen(np.asarray(self.coeffs))
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.size == 0:
            raise DomainError("empty coefficient vector")
        vals = np.unique(coeffs)
        if not np.all(np.isin(vals, (-1, 0, 1))):
            raise DomainError("coefficients must lie in {-1, 0, 1}")
        if coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")
        if self.family in (Family.RUDIN_SHAPIRO_P, Family.RUDIN_SHAPIRO_Q):
            n = coeffs.size
            if n & (n - 1):
                raise DomainError("Rudin-Shapiro length must be a power of two")
            if np.any(coeffs == 0):
                raise DomainError("Rudin-Shapiro coefficients must be +-1")
        if self.family is Family.FEKETE_F:
            if coeffs[0] != 0:
                raise DomainError("fekete_f constant coefficient must be 0")
            if not is_odd_prime(coeffs.size):
                raise DomainError("fekete_f length must be an odd prime")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def to_text(self) -> str:
        return "".join("+" if c > 0 else "-" if c < 0 else "0" for c in self.coeffs)

    @classmethod
    def from_text(cls, line: str, family: Family = Family.CUSTOM) -> "SignPolynomial":
        line = line.strip()
        bad = set(line) - set("+-0")
        if bad:
            raise DomainError(f"invalid characters in polynomial text: {sorted(bad)!r}")
        if not line:
            raise DomainError("empty polynomial text")
        coeffs = np.array([1 if c == "+" else -1 if c == "-" else 0 for c in line],
                          dtype=np.int8)
        return cls(coeffs, family)


@dataclasses.dataclass(frozen=True)
class RudinShapiroPair:
    """The coupled pair (P_n, Q_n) with N = 2^n coefficients each."""

    n: int
    N: int
    p: SignPolynomial
    q: SignPolynomial

    def __post_init__(self):
        if self.N != 2 ** self.n:
            raise DomainError("N must equal 2^n")
        if self.p.coeffs.size != self.N or self.q.coeffs.size != self.N:
            raise DomainError("pair members must have exactly N coefficients")
        half = self.N // 2
        if self.n >= 1:
            if not np.array_equal(self.p.coeffs[:half], self.q.coeffs[:half]):
                raise DomainError("P and Q must agree on their first halves")
            if not np.array_equal(self.p.coeffs[half:], -self.q.coeffs[half:]):
                raise DomainError("Q must negate P on the second half")


@dataclasses.dataclass(frozen=True)
class NormalizedPolynomial:
    """A sign polynomial together with a positive scalar multiplier."""

    base: SignPolynomial
    scale: float

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError("scale must be strictly positive")


def rudin_shapiro(n: int, max_level: int = MAX_RS_LEVEL) -> RudinShapiroPair:
    """Build (P_n, Q_n) by iterative buffer doubling; O(N) time and memory."""
    if n < 0:
        raise DomainError("recursion depth must be nonnegative")
    if n > max_level:
        raise SizeError(f"n={n} exceeds the configured cap {max_level}")
    p = np.ones(1, dtype=np.int8)
    q = np.ones(1, dtype=np.int8)
    for _ in range(n):
        p, q = np.concatenate([p, q]), np.concatenate([p, -q])
    return RudinShapiroPair(
        n=n,
        N=2 ** n,
        p=SignPolynomial(p, Family.RUDIN_SHAPIRO_P),
        q=SignPolynomial(q, Family.RUDIN_SHAPIRO_Q),
    )


def is_odd_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for p below 3.4e14."""
    if p < 3 or p % 2 == 0:
        return False
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def legendre_symbol(k: int, p: int) -> int:
    """Euler's criterion: k^((p-1)/2) mod p, mapped to {-1, 0, 1}."""
    if not is_odd_prime(p):
        raise DomainError(f"p={p} is not an odd prime")
    k %= p
    if k == 0:
        return 0
    e = pow(k, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def fekete(p: int) -> SignPolynomial:
    """f_p with Legendre-symbol coefficients; index 0 is zero, length p."""
    if not is_odd_prime(p):
        raise DomainError(f"p={p} is not an odd prime")
    coeffs = np.zeros(p, dtype=np.int8)
    # Mark quadratic residues by squaring, then flip the rest.
    residues = np.zeros(p, dtype=bool)
    sq = (np.arange(1, p, dtype=np.int64) ** 2) % p
    residues[sq] = True
    coeffs[1:] = np.where(residues[1:], 1, -1).astype(np.int8)
    return SignPolynomial(coeffs, Family.FEKETE_F)


def fekete_shifted(p: int) -> SignPolynomial:
    """g_p = f_p / z, the Littlewood form of degree p-2."""
    f = fekete(p)
    return SignPolynomial(f.coeffs[1:], Family.FEKETE_G)


def negate_variable(f: SignPolynomial) -> SignPolynomial:
    """Return f(-z): odd-index coefficients negated."""
    coeffs = f.coeffs.copy()
    coeffs[1::2] = -coeffs[1::2]
    return SignPolynomial(coeffs, Family.CUSTOM)


def normalize(pair: RudinShapiroPair) -> tuple[NormalizedPolynomial, NormalizedPolynomial]:
    """Wrap both pair members with the flatness scale 2^{-(n+1)/2}."""
    scale = 2.0 ** (-(pair.n + 1) / 2.0)
    return NormalizedPolynomial(pair.p, scale), NormalizedPolynomial(pair.q, scale)
