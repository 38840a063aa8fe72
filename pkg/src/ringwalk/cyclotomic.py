"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as the canonical residue modulo the N-th cyclotomic
polynomial: a tuple of phi(N) rationals c_k representing sum c_k zeta_N^k.
Orders are never minimized; elements of different orders are combined by
lifting both to the least common multiple.  All arithmetic is exact; the
complex-float image exists only for display and cross-checks.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from .rings import factorize

# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (dense ascending coefficient lists)


def _poly_trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod_exact(num: list, den: list) -> tuple[list, list]:
    """Long division; exact over the integers when den is monic."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [0] * max(len(num) - dden, 0)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q = c / lead if isinstance(c, Fraction) or isinstance(lead, Fraction) else c // lead
        quot[i - dden] = q
        for j, dj in enumerate(den):
            num[i - dden + j] -= q * dj
    return _poly_trim(quot), _poly_trim(num)


def _poly_mod(num: list, den: list) -> list:
    return _poly_divmod_exact(num, den)[1]


def _poly_xgcd(a: list, b: list) -> tuple[list, list, list]:
    """Extended Euclid over Q[x]: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = [Fraction(c) for c in a], [Fraction(c) for c in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod_exact(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
        t0, t1 = t1, _poly_trim([x - y for x, y in _zip_pad(t0, _poly_mul(q, t1))])
    return r0, s0, t0


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    return zip(a + [Fraction(0)] * (n - len(a)), b + [Fraction(0)] * (n - len(b)))


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorize(n).items() if n > 1 else []:
        divs = [d * p ** e for d in divs for e in range(k + 1)]
    return sorted(divs)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree.

    Computed by iterated exact division of x^n - 1 by the lower-order
    cyclotomic polynomials.  Cached; concurrent callers may race on first
    construction but always observe the same immutable tuple.
    """
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d == n:
            continue
        num, rem = _poly_divmod_exact(num, list(cyclotomic_poly(d)))
        assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n == 1:
        return 1
    return reduce(lambda acc, pk: acc * (pk[0] - 1) * pk[0] ** (pk[1] - 1),
                  factorize(n).items(), 1)


# ---------------------------------------------------------------------------


class CycloElement:
    """An element of Q(zeta_N) in canonical reduced form.

    Supports +, -, *, / with other elements, ints and Fractions.  Equality
    lifts both sides to a common order first, so the same algebraic number
    compares equal at any declared order.  Unhashable on purpose: a
    canonical order-independent hash would require subfield descent.
    """

    __slots__ = ("order", "coeffs")
    __hash__ = None

    def __init__(self, order: int, coeffs) -> None:
        if order < 1:
            raise ValueError("order must be positive")
        phi = euler_phi(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = [Fraction(c) for c in _poly_mod(cs, list(cyclotomic_poly(order)))]
        cs += [Fraction(0)] * (phi - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> "CycloElement":
        return cls(1, [Fraction(value)])

    @classmethod
    def zero(cls) -> "CycloElement":
        return cls(1, [0])

    @classmethod
    def one(cls) -> "CycloElement":
        return cls(1, [1])

    # -- structure ----------------------------------------------------------

    def lift(self, order: int) -> "CycloElement":
        """Rewrite at a larger order (must be a multiple of the current one)."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        poly = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return CycloElement(order, poly)

    def _common(self, other: "CycloElement"):
        n = self.order * other.order // gcd(self.order, other.order)
        return self.lift(n), other.lift(n)

    @staticmethod
    def _coerce(value):
        if isinstance(value, CycloElement):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloElement(1, [Fraction(value)])
        return None

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return CycloElement(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational:
            r = o.coeffs[0]
            return CycloElement(self.order, [c * r for c in self.coeffs])
        if self.is_rational:
            r = self.coeffs[0]
            return CycloElement(o.order, [c * r for c in o.coeffs])
        a, b = self._common(o)
        return CycloElement(a.order, _poly_mul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        if self.is_zero:
            raise ZeroDivisionError("cyclotomic division by zero")
        g, u, _ = _poly_xgcd(list(self.coeffs), list(cyclotomic_poly(self.order)))
        assert len(g) == 1, "nonzero residue must be invertible mod an irreducible"
        return CycloElement(self.order, [c / g[0] for c in u])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return a * b.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def conjugate(self) -> "CycloElement":
        """Complex conjugation, zeta_N -> zeta_N^(N-1)."""
        n = self.order
        poly = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            poly[(n - k) % n] += c
        return CycloElement(n, poly)

    def abs_squared(self) -> "CycloElement":
        """z * conj(z); always fixed by conjugation (totally real)."""
        return self * self.conjugate()

    # -- comparisons / conversions -------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return a.coeffs == b.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def to_complex(self) -> complex:
        """Double-precision image at zeta_N = exp(2*pi*i/N); approximate."""
        zeta = cmath.exp(2j * cmath.pi / self.order)
        return sum((complex(c) * zeta ** k for k, c in enumerate(self.coeffs)),
                   complex(0))

    def __repr__(self) -> str:
        terms = [f"{c}*z{self.order}^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return "CycloElement(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [frac_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloElement":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


def root_of_unity(order: int, k: int) -> CycloElement:
    """zeta_order^k in canonical form (exponent reduced mod order)."""
    if order < 1:
        raise ValueError("order must be positive")
    k %= order
    poly = [Fraction(0)] * (k + 1)
    poly[k] = Fraction(1)
    return CycloElement(order, poly)


def frac_to_str(value: Fraction) -> str:
    """Render a rational as "p/q" in lowest terms with q > 0."""
    return f"{value.numerator}/{value.denominator}"


def frac_from_str(text: str) -> Fraction:
    return Fraction(text)
