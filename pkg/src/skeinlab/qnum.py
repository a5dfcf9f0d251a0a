"""
Quantum integers and binomials, their values under specializations, the q-characteristic,
and the quantum Lucas factorization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import LaurentPoly, NotDivisibleError, PolyError, is_prime

INF = math.inf
ZERO_TOL = 1e-9


class SpecializationError(ValueError):
    pass


@dataclass(frozen=True)
class Specialization:
    """Where q lives: generic (symbolic), complex, rational (exact Fraction), or F_p."""

    kind: str
    q: object = None
    prime: int = 0
    sqrt_q: object = None

    def __post_init__(self):
        if self.kind == "generic":
            return
        if self.kind == "complex":
            if complex(self.q) == 0:
                raise SpecializationError("q must be nonzero")
        elif self.kind == "rational":
            if Fraction(self.q) == 0:
                raise SpecializationError("q must be nonzero")
        elif self.kind == "finite":
            if not is_prime(self.prime):
                raise SpecializationError(f"{self.prime} is not prime")
            if self.q % self.prime == 0:
                raise SpecializationError("q must be a unit mod p")
            if self.sqrt_q is not None and (self.sqrt_q ** 2 - self.q) % self.prime:
                raise SpecializationError("sqrt_q^2 != q mod p")
        else:
            raise SpecializationError(f"unknown specialization kind {self.kind!r}")

    @classmethod
    def generic(cls):
        return cls("generic")

    @classmethod
    def complex_at(cls, q: complex, sqrt_q: complex | None = None):
        return cls("complex", complex(q), 0, sqrt_q)

    @classmethod
    def rational(cls, q):
        return cls("rational", Fraction(q))

    @classmethod
    def finite_field(cls, prime: int, q: int, sqrt_q: int | None = None):
        return cls("finite", q % prime, prime, sqrt_q)

    @property
    def characteristic(self) -> int:
        return self.prime if self.kind == "finite" else 0

    def evaluate(self, p: LaurentPoly):
        if self.kind == "generic":
            return p
        if self.kind == "complex":
            return p.eval_complex(self.q, self.sqrt_q)
        if self.kind == "finite":
            return p.eval_modp(self.prime, self.q, self.sqrt_q)
        if p.has_half_integer_powers():
            raise SpecializationError("rational specialization cannot take q^(1/2)")
        q = self.q
        return sum((Fraction(v) * q ** (k // 2) for k, v in p.coeffs.items()), Fraction(0))

    def is_zero(self, value, tol: float = ZERO_TOL) -> bool:
        if self.kind == "complex":
            return abs(value) < tol
        if self.kind == "generic":
            return value.is_zero()
        return value == 0

    def label(self) -> str:
        if self.kind == "generic":
            return "generic"
        if self.kind == "finite":
            return f"q={self.q} p={self.prime}"
        if self.kind == "rational":
            return f"q={self.q} p=0"
        return f"q={self.q:.6g}"


@lru_cache(maxsize=None)
def qint(a: int) -> LaurentPoly:
    """[a] = q^(a-1) + q^(a-3) + ... + q^(1-a); [-a] = -[a]."""
    if a == 0:
        return LaurentPoly()
    if a < 0:
        return -qint(-a)
    return LaurentPoly({2 * (a - 1 - 2 * t): 1 for t in range(a)})


@lru_cache(maxsize=None)
def qfactorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    out = LaurentPoly.const(1)
    for i in range(1, n + 1):
        out = out * qint(i)
    return out


@lru_cache(maxsize=None)
def qbinom(a: int, b: int) -> LaurentPoly:
    """Quantum binomial [a choose b].

    For a >= 0 built by [a, b] = q^(-b) [a-1, b] + q^(a-b) [a-1, b-1]; negative tops use the
    quotient of products.
    """
    if b < 0:
        raise ValueError("b must be nonnegative")
    if b == 0:
        return LaurentPoly.const(1)
    if 0 <= a < b:
        return LaurentPoly()
    if a < 0:
        num = LaurentPoly.const(1)
        for i in range(b):
            num = num * qint(a - i)
        try:
            return num.exact_div(qfactorial(b))
        except NotDivisibleError as exc:  # pragma: no cover - would be a bug
            raise AssertionError(f"quantum binomial ({a},{b}) did not divide exactly") from exc
    if b == a:
        return LaurentPoly.const(1)
    return qbinom(a - 1, b).shift(-2 * b) + qbinom(a - 1, b - 1).shift(2 * (a - b))


def qint_at(a: int, spec: Specialization):
    return spec.evaluate(qint(a))


def _order_mod(x: int, p: int) -> int:
    x %= p
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


def q_characteristic(spec: Specialization, bound: int = 10_000):
    """Smallest a > 0 with [a]_q = 0, or math.inf.

    Away from q = +-1 this is the multiplicative order of q^2 (since [a] is q^(1-a)(q^(2a)-1)/(q^2-1)).
    At q = +-1 it is the characteristic of the field.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if spec.kind == "generic":
        return INF
    if spec.kind == "finite":
        p, q = spec.prime, spec.q
        if q in (1, p - 1):
            return p
        return _order_mod(q * q, p)
    if spec.kind == "rational":
        return INF
    q = spec.q
    if abs(q - 1) < ZERO_TOL or abs(q + 1) < ZERO_TOL:
        return INF
    if abs(abs(q) - 1) > ZERO_TOL:
        return INF
    q2 = q * q
    z = q2
    for a in range(1, bound + 1):
        if abs(z - 1) < ZERO_TOL:
            return a
        z *= q2
        z /= abs(z)
    return INF


def qbinom_at(a: int, b: int, spec: Specialization, check: bool = True):
    """Value of [a choose b] under spec.

    In F_p the value comes from the quantum Lucas factorization followed by classical Lucas,
    and is cross-checked against direct evaluation of the symbolic binomial.
    """
    if spec.kind != "finite":
        return spec.evaluate(qbinom(a, b))
    value = qbinom_lucas(a, b, spec)
    if check:
        direct = spec.evaluate(qbinom(a, b))
        if direct != value:  # pragma: no cover - would be a bug
            raise AssertionError(f"Lucas value {value} != direct {direct} for ({a},{b}) at {spec.label()}")
    return value


def _binom_mod(m: int, n: int, p: int) -> int:
    """Classical Lucas: product of digitwise binomials."""
    out = 1
    while m or n:
        mi, ni = m % p, n % p
        if ni > mi:
            return 0
        out = out * math.comb(mi, ni) % p
        m //= p
        n //= p
    return out


def qbinom_lucas(a: int, b: int, spec: Specialization):
    """[a choose b] via a = m*l + a0, b = n*l + b0 with l the q-characteristic.

    [a choose b] = s * binom(m, n) * [a0 choose b0], where s = 1 when q^l = 1 and
    s = (-1)^(n(m-n)l + n(a0-b0) + b0(m-n)) when q^l = -1.
    """
    if a < 0 or b < 0:
        raise ValueError("Lucas factorization needs a, b >= 0")
    if b > a:
        return 0 if spec.kind == "finite" else 0j
    ell = q_characteristic(spec)
    if ell == INF:
        return spec.evaluate(qbinom(a, b))
    ell = int(ell)
    m, a0 = divmod(a, ell)
    n, b0 = divmod(b, ell)
    inner = spec.evaluate(qbinom(a0, b0))
    e = n * (m - n) * ell + n * (a0 - b0) + b0 * (m - n)
    if spec.kind == "finite":
        p = spec.prime
        q_ell = pow(spec.q, ell, p)
        sign = -1 if (q_ell == p - 1 and e % 2) else 1
        return sign * _binom_mod(m, n, p) * inner % p
    q_ell = spec.q ** ell
    sign = -1 if (abs(q_ell + 1) < 1e-6 and e % 2) else 1
    return sign * math.comb(m, n) * inner


def _digits(n: int, base: int) -> list:
    out = []
    while n:
        out.append(n % base)
        n //= base
    return out


def all_qbinoms_nonzero(i: int, spec: Specialization, check: bool = True) -> bool:
    """True iff [i choose j] != 0 for every 0 <= j <= i.

    Digit criterion: with l the q-characteristic and i = m*l + a0, one needs l > i, or
    a0 = l - 1 together with binom(m, n) != 0 for all n <= m (automatic in characteristic 0;
    in characteristic p every base-p digit of m except the leading one must be p - 1).
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    ell = q_characteristic(spec)
    if ell == INF or ell > i:
        verdict = True
    else:
        ell = int(ell)
        m, a0 = divmod(i, ell)
        verdict = a0 == ell - 1
        p = spec.characteristic
        if verdict and p:
            digits = _digits(m, p)
            verdict = all(d == p - 1 for d in digits[:-1])
    if check:
        direct = all(not spec.is_zero(qbinom_at(i, j, spec, check=False)) for j in range(i + 1))
        if direct != verdict:  # pragma: no cover - would be a bug
            raise AssertionError(f"digit criterion {verdict} != direct {direct} for i={i} at {spec.label()}")
    return verdict


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


def catalan_recursive(n: int) -> int:
    """C_0 = 1, C_(k+1) = sum C_i C_(k-i); used as an independent oracle."""
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c[n]


def involution_count(n: int) -> int:
    """Number of involutions of {1..n}: s_n = s_(n-1) + (n-1) s_(n-2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = 1, 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    value = b if n >= 1 else a
    if value != involution_count_closed(n):  # pragma: no cover
        raise AssertionError("recursion and closed form disagree")
    return value


def involution_count_closed(n: int) -> int:
    """sum over k of n! / ((n-2k)! 2^k k!)."""
    return sum(
        math.factorial(n) // (math.factorial(n - 2 * k) * 2 ** k * math.factorial(k))
        for k in range(n // 2 + 1)
    )


def root_of_unity(num: int, den: int) -> complex:
    """exp(2 pi i num / den); exact at quarter turns."""
    f = Fraction(num, den) % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if f in exact:
        return exact[f]
    return cmath.exp(2j * math.pi * num / den)


def qint_table(specs, a_max: int) -> list:
    return [[qint_at(a, s) for a in range(a_max + 1)] for s in specs]


def qbinom_table(specs, a: int) -> list:
    return [[qbinom_at(a, b, s) for b in range(a + 1)] for s in specs]
