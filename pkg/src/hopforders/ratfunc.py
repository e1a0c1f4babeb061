"""Exact arithmetic in K = F_q(T), the scalar layer under every matrix.

T is the uniformizer of the valuation ring R = {x in K : v(x) >= 0}; v is the
normalized T-adic valuation with v(T) = 1 and v(0) = +infinity.  :class:`Poly`
is a polynomial in T over F_q; :class:`RatFunc` is the canonical reduced
fraction (gcd(num, den) = 1, den monic) with its valuation cached.  Negative
powers of T are ordinary fractions with T-power denominators, so one scalar
type covers all of K.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

from .fields import FieldSpec, FqElem

INF = math.inf


class Poly:
    """A polynomial in T over F_q, coefficients ascending, trailing zeros trimmed."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Sequence[FqElem]):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.spec = spec
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, spec: FieldSpec, ints: Sequence[int]) -> "Poly":
        return cls(spec, [spec.element(c) for c in ints])

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.one,))

    @classmethod
    def monomial(cls, spec: FieldSpec, e: int, coeff: Union[int, FqElem] = 1) -> "Poly":
        c = spec.element(coeff)
        if not c:
            return cls.zero(spec)
        return cls(spec, (spec.zero,) * e + (c,))

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    @property
    def ord(self):
        """Order of vanishing at T = 0; +infinity for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.spec.one

    def lc(self) -> FqElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant(self) -> FqElem:
        return self.coeffs[0] if self.coeffs else self.spec.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one

    def monic(self) -> "Poly":
        if not self.coeffs or self.is_monic():
            return self
        inv = self.coeffs[-1].inverse()
        return Poly(self.spec, [c * inv for c in self.coeffs])

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.spec, out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = list(self.coeffs) + [self.spec.zero] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return Poly(self.spec, out)

    def __neg__(self) -> "Poly":
        return Poly(self.spec, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.spec)
        if len(a) == 1:
            c = a[0]
            return Poly(self.spec, [c * x for x in b])
        if len(b) == 1:
            c = b[0]
            return Poly(self.spec, [x * c for x in a])
        zero = self.spec.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return Poly(self.spec, out)

    def scale(self, c: FqElem) -> "Poly":
        if not c:
            return Poly.zero(self.spec)
        return Poly(self.spec, [x * c for x in self.coeffs])

    def shift(self, m: int) -> "Poly":
        """Multiply by T^m, m >= 0."""
        if not self.coeffs:
            return self
        return Poly(self.spec, (self.spec.zero,) * m + self.coeffs)

    def rshift(self, m: int) -> "Poly":
        """Exact division by T^m; requires ord >= m."""
        if m == 0 or not self.coeffs:
            return self
        return Poly(self.spec, self.coeffs[m:])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        spec = self.spec
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.coeffs[-1].inverse()
        q = [spec.zero] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv_lead
            d = len(rem) - 1 - db
            if c:
                q[d] = c
                for i, bc in enumerate(other.coeffs):
                    rem[d + i] = rem[d + i] - c * bc
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(spec, q), Poly(spec, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def pth_power(self) -> "Poly":
        """(sum c_i T^i)^p = sum c_i^p T^(p i); exact in characteristic p."""
        if not self.coeffs:
            return self
        p = self.spec.p
        zero = self.spec.zero
        out = [zero] * ((len(self.coeffs) - 1) * p + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * p] = c.frobenius()
        return Poly(self.spec, out)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.spec == other.spec

    def __hash__(self):
        return hash((self.coeffs, self.spec.p, self.spec.k))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            needs_parens = "+" in cs
            if e == 0:
                terms.append(f"({cs})" if needs_parens else cs)
                continue
            t = "T" if e == 1 else f"T^{e}"
            if c == self.spec.one:
                terms.append(t)
            else:
                terms.append(f"({cs})*{t}" if needs_parens else f"{cs}*{t}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm, splitting off the T-power part."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    m = min(a.ord, b.ord)
    a, b = a.rshift(int(a.ord)), b.rshift(int(b.ord))
    while not b.is_zero():
        a, b = b, a % b
    return a.monic().shift(m)


class RatFunc:
    """An element of K in canonical form: reduced fraction, monic denominator.

    The T-adic valuation is cached at construction; v = +infinity exactly for
    the zero element.  Canonical forms are unique, so equality and hashing are
    structural.
    """

    __slots__ = ("spec", "num", "den", "val")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in K")
        if num.spec != den.spec:
            raise ValueError("numerator and denominator from different field specs")
        if num.is_zero():
            num, den = num, Poly.one(num.spec)
        elif den.is_one():
            pass
        else:
            m = min(int(num.ord), int(den.ord))
            if m:
                num, den = num.rshift(m), den.rshift(m)
            if den.degree == 0:
                c = den.coeffs[0]
                num = num if c == num.spec.one else num.scale(c.inverse())
                den = Poly.one(num.spec)
            elif den.ord == den.degree or num.ord == num.degree:
                # a monomial on either side is coprime to the other side now
                if not den.is_monic():
                    inv = den.lc().inverse()
                    num, den = num.scale(inv), den.scale(inv)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
                if not den.is_monic():
                    inv = den.lc().inverse()
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.spec = num.spec
        self.num = num
        self.den = den
        self.val = (num.ord - den.ord) if num.coeffs else INF

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        """Trusted constructor for inputs already in canonical form."""
        self = object.__new__(cls)
        self.spec = num.spec
        self.num = num
        self.den = den
        self.val = (num.ord - den.ord) if num.coeffs else INF
        return self

    @classmethod
    def from_poly(cls, num: Poly) -> "RatFunc":
        return cls._raw(num, Poly.one(num.spec))

    @classmethod
    def constant(cls, spec: FieldSpec, c: Union[int, FqElem]) -> "RatFunc":
        return cls.from_poly(Poly(spec, (spec.element(c),)))

    @classmethod
    def zero(cls, spec: FieldSpec) -> "RatFunc":
        return cls.from_poly(Poly.zero(spec))

    @classmethod
    def one(cls, spec: FieldSpec) -> "RatFunc":
        return cls.from_poly(Poly.one(spec))

    @classmethod
    def pi_power(cls, spec: FieldSpec, m: int) -> "RatFunc":
        """T^m for any integer m; negative m gives a T-power denominator."""
        if m >= 0:
            return cls._raw(Poly.monomial(spec, m), Poly.one(spec))
        return cls._raw(Poly.one(spec), Poly.monomial(spec, -m))

    def is_integral(self) -> bool:
        """Membership in R, i.e. v >= 0 (reduced form: T does not divide den)."""
        return self.val >= 0

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def residue(self) -> FqElem:
        """The image in F_q under reduction mod T; requires an integral input."""
        if self.val < 0:
            raise ValueError(f"cannot reduce a non-integral element mod T (v = {self.val})")
        if self.is_zero():
            return self.spec.zero
        return self.num.constant() / self.den.constant()

    def pth_power(self) -> "RatFunc":
        """x^p computed by the coefficient Frobenius spread on num and den."""
        # gcd(num, den) = 1 implies gcd(num^p, den^p) = 1, and den^p stays monic
        return RatFunc._raw(self.num.pth_power(), self.den.pth_power())

    def __add__(self, other):
        other = _coerce(self, other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num + other.num)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self, other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num - other.num)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce(self, other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in K")
        num, den = self.den, self.num
        if not den.is_monic():
            inv = den.lc().inverse()
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(self, other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = RatFunc.one(self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.num.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return (self.num == other.num and self.den == other.den
                    and self.spec == other.spec)
        if isinstance(other, int):
            return self == RatFunc.constant(self.spec, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        ds = str(self.den)
        if " + " in ns:
            ns = f"({ns})"
        if " + " in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({self})"


def _coerce(ref: RatFunc, other) -> RatFunc:
    if isinstance(other, RatFunc):
        if ref.spec != other.spec:
            raise ValueError("cannot combine elements over different field specs")
        return other
    if isinstance(other, int):
        return RatFunc.constant(ref.spec, other)
    if isinstance(other, FqElem):
        return RatFunc.constant(ref.spec, other)
    if isinstance(other, Poly):
        return RatFunc.from_poly(other)
    return NotImplemented
