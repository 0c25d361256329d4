"""Exact scalar arithmetic: rationals, univariate polynomials, rational
functions and truncated multivariate Laurent series.

Everything here is exact over Q.  The only floating-point escape hatch is
``gamma_float``, a high-precision Gamma evaluator used by one normalization
side check; it never feeds back into the exact pipeline.

Conventions:
  * ``Q`` is ``fractions.Fraction``; ``rat("3/7")`` parses exact rationals.
  * Polynomial coefficients are stored lowest degree first.
  * Rational functions keep a monic, gcd-reduced denominator.
  * Laurent series allow negative exponents and carry a per-variable
    exactness cap; coefficient extraction outside the cap is an error,
    never a silent zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath

Q = Fraction


def rat(value, den=None) -> Fraction:
    """Build an exact rational from ints, strings like "p/q", or Fractions."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in the exact pipeline")
    return Fraction(value)


class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Poly":
        return Poly([Fraction(c)])

    @staticmethod
    def x() -> "Poly":
        """The polynomial u."""
        return Poly([0, 1])

    @staticmethod
    def linear(shift) -> "Poly":
        """u + shift."""
        return Poly([Fraction(shift), 1])

    @staticmethod
    def from_roots(roots: Iterable) -> "Poly":
        p = Poly([1])
        for r in roots:
            p = p * Poly([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __call__(self, x):
        """Exact Horner evaluation; x may be a Fraction or another Poly."""
        if isinstance(x, int):
            x = Fraction(x)
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, c) -> "Poly":
        """p(u + c)."""
        return self(Poly([Fraction(c), 1]))

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.leading()
        dlen = len(other.coeffs)
        while len(rem) >= dlen and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < dlen:
                break
            factor = rem[-1] / dlead
            pos = len(rem) - dlen
            quo[pos] = factor
            for i, c in enumerate(other.coeffs):
                rem[pos + i] -= factor * c
            rem.pop()
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else Poly()

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def rational_roots(self):
        """All rational roots with multiplicity, plus the deflated cofactor.

        Returns (roots, remainder) where remainder has no rational roots.
        """
        p = self
        roots = []
        while not p.is_zero() and p.degree >= 1:
            # root 0 first
            if p.coeffs[0] == 0:
                roots.append(Fraction(0))
                p = Poly(p.coeffs[1:])
                continue
            # clear denominators -> integer polynomial
            den_lcm = 1
            for c in p.coeffs:
                den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
            ints = [int(c * den_lcm) for c in p.coeffs]
            a0, ad = abs(ints[0]), abs(ints[-1])
            found = None
            for pnum in _divisors(a0):
                for qden in _divisors(ad):
                    for sign in (1, -1):
                        cand = Fraction(sign * pnum, qden)
                        if p(cand) == 0:
                            found = cand
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
            if found is None:
                break
            roots.append(found)
            p = p // Poly([-found, 1])
        return roots, p

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*u")
            else:
                parts.append(f"{c}*u^{i}")
        return "Poly(" + " + ".join(parts) + ")"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(m: int):
    m = abs(m)
    if m == 0:
        return [1]
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            if d != m // d:
                out.append(m // d)
        d += 1
    return sorted(out)


class RationalFunction:
    """Quotient of polynomials over Q, reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif isinstance(den, (int, Fraction)):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading()
        self.num = Poly([c / lead for c in num.coeffs])
        self.den = den.monic()

    @staticmethod
    def variable() -> "RationalFunction":
        return RationalFunction(Poly.x())

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Poly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction(other) / self

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at {x}")
        return self.num(x) / d

    def shift(self, c) -> "RationalFunction":
        return RationalFunction(self.num.shift(c), self.den.shift(c))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


class TruncationExceeded(Exception):
    """A Laurent coefficient was requested outside the exactness window."""


class LaurentSeries:
    """Truncated multivariate Laurent series.

    ``terms`` maps integer exponent tuples (negative allowed) to coefficients
    in an arbitrary commutative coefficient domain: Fraction, RationalFunction
    or sparse state vectors; the domain only needs ``+`` and ``*``.

    ``caps`` gives, per variable, the largest exponent up to which the stored
    terms are guaranteed complete; ``None`` means the series is exact
    everywhere (a Laurent polynomial).  Multiplication propagates the caps so
    extraction is provably exact or refused.
    """

    __slots__ = ("variables", "terms", "caps")

    def __init__(self, variables: Sequence[str], terms: Mapping, caps=None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        if caps is None:
            caps = (None,) * nv
        self.caps = tuple(caps)
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nv:
                raise ValueError("exponent arity mismatch")
            if _is_zero_coeff(coeff):
                continue
            for e, cap in zip(exps, self.caps):
                if cap is not None and e > cap:
                    raise ValueError("stored exponent outside truncation bound")
            clean[exps] = coeff
        self.terms = clean

    def min_exponents(self):
        """Per-variable lowest stored exponent (0 for an empty series)."""
        if not self.terms:
            return (0,) * len(self.variables)
        return tuple(
            min(e[i] for e in self.terms) for i in range(len(self.variables))
        )

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        if self.variables != other.variables:
            raise ValueError("variable mismatch in series product")
        mins_a, mins_b = self.min_exponents(), other.min_exponents()
        caps = []
        for i in range(len(self.variables)):
            ca, cb = self.caps[i], other.caps[i]
            ca_eff = None if ca is None else ca + mins_b[i]
            cb_eff = None if cb is None else cb + mins_a[i]
            if ca_eff is None:
                caps.append(cb_eff)
            elif cb_eff is None:
                caps.append(ca_eff)
            else:
                caps.append(min(ca_eff, cb_eff))
        out = {}
        for ea, va in self.terms.items():
            for eb, vb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                if any(c is not None and e > c for e, c in zip(exps, caps)):
                    continue
                prod = va * vb
                if exps in out:
                    out[exps] = out[exps] + prod
                else:
                    out[exps] = prod
        return LaurentSeries(self.variables, out, caps)

    def extract(self, exponents: Sequence[int]):
        """Coefficient at the given exponent tuple; exact or an error.

        Returns 0 (int) when the coefficient is provably absent.
        """
        exps = tuple(int(e) for e in exponents)
        for e, cap in zip(exps, self.caps):
            if cap is not None and e > cap:
                raise TruncationExceeded(
                    f"exponent {exps} outside exact window (caps {self.caps})"
                )
        return self.terms.get(exps, 0)


def _is_zero_coeff(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    is_zero = getattr(c, "is_zero", None)
    if callable(is_zero):
        return is_zero()
    return False


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    """Exact Horner evaluation of a polynomial at a rational point."""
    return p(Fraction(x))


def laurent_extract(series: LaurentSeries, exponents: Sequence[int]):
    """Coefficient extraction; raises TruncationExceeded outside the window."""
    return series.extract(exponents)


_GAMMA_DPS = 60


def gamma_float(x) -> mpmath.mpf:
    """Gamma(x) at 60 decimal digits of working precision (>= 30 exact).

    x may be a Fraction, int or mpf.  Raises ValueError at the poles
    (non-positive integers).
    """
    if isinstance(x, Fraction):
        if x.denominator == 1 and x <= 0:
            raise ValueError(f"gamma pole at {x}")
        arg = mpmath.mpf(x.numerator) / x.denominator
    else:
        arg = mpmath.mpf(x)
        if arg <= 0 and arg == mpmath.floor(arg):
            raise ValueError(f"gamma pole at {x}")
    with mpmath.workdps(_GAMMA_DPS):
        return mpmath.gamma(arg)
