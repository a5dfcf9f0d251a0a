"""
Exact Laurent polynomials in q^(1/2), rational functions, and two-variable (a, z) polynomials.

Exponents of LaurentPoly are stored in half units: the key h stands for q^(h/2). This makes the
braiding weights q^(+-1/2) and twists like q^(-3/2) ordinary integers, and keeps all arithmetic
exact on Python ints.
"""

from __future__ import annotations

import cmath
import json
from math import gcd
from typing import Mapping, Union


class PolyError(ValueError):
    pass


class NotDivisibleError(PolyError):
    pass


class LaurentPoly:
    """Immutable sparse Laurent polynomial; keys are half-exponents, values nonzero ints."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if not isinstance(k, int) or not isinstance(v, int):
                    raise TypeError("LaurentPoly needs integer half-exponents and integer coefficients")
                if v:
                    c[k] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, half_exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({half_exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: c} if c else {})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- inspection

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        """(half_exponent, coeff) pairs, highest exponent first."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def min_half(self) -> int:
        if not self._c:
            raise PolyError("zero polynomial has no degree")
        return min(self._c)

    def max_half(self) -> int:
        if not self._c:
            raise PolyError("zero polynomial has no degree")
        return max(self._c)

    def coeff(self, half_exp: int) -> int:
        return self._c.get(half_exp, 0)

    def has_half_integer_powers(self) -> bool:
        return any(k % 2 for k in self._c)

    def content(self) -> int:
        g = 0
        for v in self._c.values():
            g = gcd(g, v)
        return g

    # -- arithmetic

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        c: dict = {}
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                c[k] = c.get(k, 0) + va * vb
        return LaurentPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise PolyError("negative power of a non-monomial")
            (k, v), = self._c.items()
            if v not in (1, -1):
                raise PolyError("negative power needs a unit monomial")
            return LaurentPoly._raw({k * n: v ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, half: int) -> "LaurentPoly":
        """Multiply by q^(half/2)."""
        return LaurentPoly._raw({k + half: v for k, v in self._c.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute q -> q^-1."""
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    def exact_div(self, other) -> "LaurentPoly":
        """Quotient in Z[q^(1/2), q^(-1/2)]; raises NotDivisibleError if there is a remainder."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            (k, v), = other._c.items()
            out = {}
            for kk, vv in self._c.items():
                qq, r = divmod(vv, v)
                if r:
                    raise NotDivisibleError("coefficient not divisible")
                out[kk - k] = qq
            return LaurentPoly._raw(out)
        num = self._c.copy()
        dmax = other.max_half()
        dmin = other.min_half()
        lead = other._c[dmax]
        out = {}
        while num:
            top = max(num)
            if top - dmax < min(num) - dmin:
                raise NotDivisibleError("polynomial remainder is nonzero")
            qq, r = divmod(num[top], lead)
            if r:
                raise NotDivisibleError("leading coefficient not divisible")
            shift = top - dmax
            out[shift] = qq
            for k, v in other._c.items():
                kk = k + shift
                s = num.get(kk, 0) - qq * v
                if s:
                    num[kk] = s
                else:
                    num.pop(kk, None)
        return LaurentPoly._raw(out)

    def divides(self, other) -> bool:
        try:
            LaurentPoly.coerce(other).exact_div(self)
        except NotDivisibleError:
            return False
        return True

    # -- comparison / hashing

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    # -- evaluation

    def eval_complex(self, q: complex, sqrt_q: complex | None = None) -> complex:
        """Value at a nonzero complex q; q^(1/2) is the principal root unless sqrt_q is given."""
        q = complex(q)
        if q == 0:
            raise PolyError("cannot evaluate a Laurent polynomial at q = 0")
        if sqrt_q is None:
            sqrt_q = cmath.sqrt(q)
        else:
            sqrt_q = complex(sqrt_q)
            if abs(sqrt_q * sqrt_q - q) > 1e-9 * max(1.0, abs(q)):
                raise PolyError("sqrt_q does not square to q")
        if sqrt_q in (1, -1, 1j, -1j):
            # exact: sum integer coefficients by exponent mod 4 before touching floats
            buckets = [0, 0, 0, 0]
            for k, v in self._c.items():
                buckets[k % 4] += v
            return complex(sum(b * sqrt_q ** e for e, b in enumerate(buckets)))
        return sum((v * sqrt_q ** k for k, v in self._c.items()), 0j)

    def eval_modp(self, prime: int, q: int, sqrt_q: int | None = None) -> int:
        """Value in F_p. sqrt_q is only needed when half-integer powers occur."""
        if not is_prime(prime):
            raise PolyError(f"{prime} is not prime")
        q %= prime
        if q == 0:
            raise PolyError("q must be a unit mod p")
        if sqrt_q is not None:
            sqrt_q %= prime
            if sqrt_q * sqrt_q % prime != q:
                raise PolyError("invalid specialization: sqrt_q^2 != q mod p")
        elif self.has_half_integer_powers():
            raise PolyError("half-integer powers need sqrt_q")
        total = 0
        for k, v in self._c.items():
            if k % 2:
                total += v * pow(sqrt_q, k, prime)
            else:
                total += v * pow(q, k // 2, prime)
        return total % prime

    # -- text and json

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in self.items():
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "q"
            elif k % 2 == 0:
                mono = f"q^{k // 2}"
            else:
                mono = f"q^({k}/2)"
            if mono and abs(v) == 1:
                body = mono
            elif mono:
                body = f"{abs(v)}*{mono}"
            else:
                body = str(abs(v))
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict:
        return {str(k): v for k, v in self.items()}

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict):
            raise PolyError("polynomial JSON must be an object")
        out = {}
        for k, v in obj.items():
            try:
                kk = int(k)
            except ValueError as exc:
                raise PolyError(f"bad exponent key {k!r}") from exc
            if not isinstance(v, int) or isinstance(v, bool):
                raise PolyError(f"bad coefficient {v!r}")
            out[kk] = v
        return cls(out)


Q = LaurentPoly.monomial(2)
Q_HALF = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly.const(0)
DELTA = -(Q + Q ** -1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- univariate gcd over Q, on dense coefficient lists (lowest degree first)

def _dense(p: LaurentPoly) -> tuple[list, int]:
    lo = p.min_half()
    hi = p.max_half()
    out = [0] * (hi - lo + 1)
    for k, v in p._c.items():
        out[k - lo] = v
    return out, lo


def _primitive(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return coeffs
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    if g != 1:
        coeffs = [c // g for c in coeffs]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def _prem(a: list, b: list) -> list:
    """Primitive part of the pseudo-remainder of a by b (integer lists, lowest degree first)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db:
        la = a[-1]
        off = len(a) - 1 - db
        g = gcd(la, lb)
        fa, fb = lb // g, la // g
        if fa != 1:
            a = [x * fa for x in a]
        for i, bc in enumerate(b):
            a[off + i] -= fb * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
        if not a:
            return a
        a = _primitive(a)
    return a


def poly_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """Primitive gcd up to units: positive leading coefficient, lowest half-exponent 0."""
    if p.is_zero():
        return _normalize_unit(r)
    if r.is_zero():
        return _normalize_unit(p)
    a, _ = _dense(p)
    b, _ = _dense(r)
    # strip powers of the variable (units in the Laurent ring)
    a, b = _primitive(_strip_low(a)), _primitive(_strip_low(b))
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        a, b = b, _prem(a, b)
        if not b:
            break
    g = a if not b else [1]
    return LaurentPoly._raw({i: c for i, c in enumerate(_primitive(list(g))) if c})


def _strip_low(c: list) -> list:
    i = 0
    while c[i] == 0:
        i += 1
    return c[i:]


def _normalize_unit(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    d, _ = _dense(p)
    return LaurentPoly._raw({i: c for i, c in enumerate(_primitive(d)) if c})


class RationalFn:
    """Quotient of LaurentPolys in canonical form (coprime, denominator normalized)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, _canonical: bool = False):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        return cls(x)

    def is_poly(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise NotDivisibleError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, (RationalFn, LaurentPoly, int)):
            return NotImplemented
        other = RationalFn.coerce(other)
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, (RationalFn, LaurentPoly, int)):
            return NotImplemented
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (RationalFn, LaurentPoly, int)):
            return NotImplemented
        other = RationalFn.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFn(0)
        if self.den == ONE and other.den == ONE:
            return RationalFn(self.num * other.num, 1, _canonical=True)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (RationalFn, LaurentPoly, int)):
            return NotImplemented
        other = RationalFn.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero RationalFn")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            other = RationalFn.coerce(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def mirror(self) -> "RationalFn":
        return RationalFn(self.num.mirror(), self.den.mirror())

    def eval_complex(self, q: complex, sqrt_q: complex | None = None) -> complex:
        d = self.den.eval_complex(q, sqrt_q)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this q")
        return self.num.eval_complex(q, sqrt_q) / d

    def eval_modp(self, prime: int, q: int, sqrt_q: int | None = None) -> int:
        d = self.den.eval_modp(prime, q, sqrt_q)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes mod p")
        return self.num.eval_modp(prime, q, sqrt_q) * pow(d, -1, prime) % prime

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _canonicalize(num: LaurentPoly, den: LaurentPoly) -> tuple:
    if num.is_zero():
        return num, ONE
    if den.is_monomial():
        (k, v), = den._c.items()
        g = gcd(num.content(), v)
        if v < 0:
            g = -g
        return num.shift(-k).exact_div(g), LaurentPoly.const(v // g)
    g = poly_gcd(num, den)
    if not g.is_monomial():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lo = den.min_half()
    num = num.shift(-lo)
    den = den.shift(-lo)
    c = gcd(num.content(), den.content())
    if den._c[den.max_half()] < 0:
        c = -c
    if c != 1:
        num = num.exact_div(c)
        den = den.exact_div(c)
    return num, den


class TwoVarLaurentPoly:
    """Sparse Laurent polynomial in a and z = q - q^-1; keys are (a_exp, z_exp)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple, int] | None = None):
        self._c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    self._c[(int(k[0]), int(k[1]))] = v

    @classmethod
    def _raw(cls, c):
        p = object.__new__(cls)
        p._c = c
        return p

    @classmethod
    def monomial(cls, a_exp: int, z_exp: int, coeff: int = 1):
        return cls._raw({(a_exp, z_exp): coeff} if coeff else {})

    @classmethod
    def const(cls, c: int):
        return cls.monomial(0, 0, c)

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items(), reverse=True)

    def is_zero(self):
        return not self._c

    def __add__(self, other):
        if isinstance(other, int):
            other = TwoVarLaurentPoly.const(other)
        if not isinstance(other, TwoVarLaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return TwoVarLaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return TwoVarLaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TwoVarLaurentPoly.const(other)
        if not isinstance(other, TwoVarLaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TwoVarLaurentPoly._raw({k: v * other for k, v in self._c.items()} if other else {})
        if not isinstance(other, TwoVarLaurentPoly):
            return NotImplemented
        c: dict = {}
        for (a1, z1), v1 in self._c.items():
            for (a2, z2), v2 in other._c.items():
                k = (a1 + a2, z1 + z2)
                c[k] = c.get(k, 0) + v1 * v2
        return TwoVarLaurentPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise PolyError("negative power of a non-monomial")
            ((a, z), v), = self._c.items()
            if v not in (1, -1):
                raise PolyError("negative power needs a unit monomial")
            return TwoVarLaurentPoly._raw({(a * n, z * n): v ** (-n)})
        out = TwoVarLaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = TwoVarLaurentPoly.const(other)
        if not isinstance(other, TwoVarLaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def mirror(self) -> "TwoVarLaurentPoly":
        """a -> a^-1, z -> -z (the Kauffman polynomial of the mirror diagram)."""
        return TwoVarLaurentPoly._raw({(-a, z): -v if z % 2 else v for (a, z), v in self._c.items()})

    def __repr__(self):
        return f"TwoVarLaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for (a, z), v in self.items():
            mono = "*".join(x for x in (
                "" if a == 0 else ("a" if a == 1 else f"a^{a}"),
                "" if z == 0 else ("z" if z == 1 else f"z^{z}"),
            ) if x)
            if not mono:
                terms.append(str(v))
            elif v == 1:
                terms.append(mono)
            elif v == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{v}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {f"{a},{z}": v for (a, z), v in self.items()}

    @classmethod
    def from_json(cls, obj) -> "TwoVarLaurentPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        out = {}
        for k, v in obj.items():
            a, z = k.split(",")
            out[(int(a), int(z))] = int(v)
        return cls(out)


Z_VALUE = Q - Q ** -1

Number = Union[int, LaurentPoly, RationalFn]


# -- operation-level entry points

def poly_arith(p, r, op: str) -> LaurentPoly:
    p, r = LaurentPoly.coerce(p), LaurentPoly.coerce(r)
    if op == "add":
        return p + r
    if op == "sub":
        return p - r
    if op == "mul":
        return p * r
    raise PolyError(f"unknown op {op!r}")


def poly_eval_complex(p, q_val: complex, sqrt_q: complex | None = None) -> complex:
    return LaurentPoly.coerce(p).eval_complex(q_val, sqrt_q)


def poly_eval_modp(p, prime: int, q_val: int, sqrt_q: int | None = None) -> int:
    return LaurentPoly.coerce(p).eval_modp(prime, q_val, sqrt_q)


def twovar_specialize(p: TwoVarLaurentPoly, a_val, q: complex | None = None):
    """Substitute a -> a_val and z -> q - q^-1.

    With q None the result must be an exact LaurentPoly; otherwise a complex number at q.
    """
    a_val = LaurentPoly.coerce(a_val)
    if q is not None:
        a = a_val.eval_complex(q)
        z = complex(q) - 1 / complex(q)
        if a == 0:
            raise PolyError("a specializes to zero")
        return sum((v * a ** ea * z ** ez for (ea, ez), v in p._c.items()), 0j)
    if p.is_zero():
        return ZERO
    zmin = min(ez for _, ez in p._c)
    m = max(0, -zmin)
    total = ZERO
    for (ea, ez), v in p._c.items():
        total = total + v * a_val ** ea * Z_VALUE ** (ez + m)
    try:
        return total.exact_div(Z_VALUE ** m) if m else total
    except NotDivisibleError as exc:
        raise NotDivisibleError(
            "z^-1 terms do not cancel after substitution; evaluate numerically instead"
        ) from exc

