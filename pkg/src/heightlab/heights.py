"""The absolute logarithmic Weil height and the vector space of algebraic
numbers modulo torsion.

Heights are computed from the Mahler measure of the exact minimal
polynomial: h(a) = (log|lead| + sum of log+|root|) / deg, with the roots
taken at certified precision.  Torsion decisions are always exact (a power
test against the field's torsion order), never numeric.

Elements of the Q-vector space are scalar--base pairs (q, b) denoting b^q
up to roots of unity, kept in the canonical form (1/s, b^r) for q = r/s.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from math import lcm as int_lcm

import mpmath

from .errors import ZeroElement
from .numberfield import FieldElement, WorkingField, minimal_polynomial
from .polynomials import content_and_primitive
from .roots import certified_roots, locked_workprec

# cushion for binary64 output of values computed at much higher precision
_FLOAT_SLACK = 1e-15


@dataclasses.dataclass(frozen=True)
class HeightValue:
    """Nonnegative real with a rigorous absolute error bound.

    abs_error == 0 marks an exact (torsion-certified) zero.
    """

    value: float
    abs_error: float

    @staticmethod
    def exact_zero() -> "HeightValue":
        return HeightValue(0.0, 0.0)

    def scaled(self, q) -> "HeightValue":
        f = abs(float(Fraction(q)))
        return HeightValue(self.value * f, self.abs_error * f)

    def __add__(self, other: "HeightValue") -> "HeightValue":
        return HeightValue(self.value + other.value,
                           self.abs_error + other.abs_error + _FLOAT_SLACK)


def _log_big(n: int) -> float:
    if n <= 0:
        raise ValueError("log of non-positive integer")
    if n.bit_length() <= 900:
        return math.log(n)
    shift = n.bit_length() - 64
    return math.log(n >> shift) + shift * math.log(2)


def weil_height(a: FieldElement, field: WorkingField | None = None) -> HeightValue:
    """Absolute logarithmic Weil height of a nonzero field element."""
    field = field or a.field
    if a.is_zero():
        raise ZeroElement("height of zero is undefined")
    if is_torsion(a, field):
        return HeightValue.exact_zero()
    mp = minimal_polynomial(a, field)
    _, P = content_and_primitive(mp)
    e = mp.degree
    lead = int(P.coeffs[-1])
    if e == 1:
        # qx - p: height of the rational p/q is log max(|p|, |q|)
        p = abs(int(P.coeffs[0]))
        val = _log_big(max(p, lead))
        return HeightValue(val, _FLOAT_SLACK * (1.0 + val))
    roots = certified_roots(P, field.precision_bits)
    with locked_workprec(field.precision_bits):
        total = mpmath.log(lead)
        err = 0.0
        for r in roots:
            m = abs(r.value)
            if m > 1:
                total += mpmath.log(m)
            # log+ is 1-Lipschitz in |z|
            err += r.radius
        value = float(total) / e
    return HeightValue(value, err / e + _FLOAT_SLACK * (1.0 + abs(value)))


def is_torsion(a: FieldElement, field: WorkingField | None = None) -> bool:
    """Exact root-of-unity test: a^w == 1 for the field torsion order w."""
    field = field or a.field
    if a.is_zero():
        raise ZeroElement("torsion test of zero is undefined")
    p = a ** field.torsion_order
    return p.is_rational() and p.as_rational() == 1


class GElement:
    """Scalar--base pair q * f_b, i.e. b^q in the group modulo torsion.

    Canonical form: scale 1/s with s a positive integer and the numerator
    absorbed into the base; the zero element is (1, 1).  Negative and
    non-unit-numerator scales are legal inputs and are canonicalized away.
    """

    __slots__ = ("field", "scale", "base")

    def __init__(self, field: WorkingField, scale, base: FieldElement):
        scale = Fraction(scale)
        if base.field is not field:
            raise ValueError("base element from a different field")
        if base.is_zero():
            raise ZeroElement("GElement base must be nonzero")
        if scale == 0 or is_torsion(base, field):
            self.field = field
            self.scale = Fraction(1)
            self.base = field.one()
            return
        r, s = scale.numerator, scale.denominator
        self.field = field
        self.scale = Fraction(1, s)
        self.base = base ** r

    @staticmethod
    def of(base: FieldElement, scale=1) -> "GElement":
        return GElement(base.field, scale, base)

    @staticmethod
    def zero(field: WorkingField) -> "GElement":
        return GElement(field, 1, field.one())

    def is_zero(self) -> bool:
        return is_torsion(self.base, self.field)

    def negate(self) -> "GElement":
        return GElement(self.field, -self.scale, self.base)

    def pow(self, q) -> "GElement":
        """Scalar multiplication by a rational."""
        return GElement(self.field, self.scale * Fraction(q), self.base)

    def apply(self, sigma) -> "GElement":
        """Image under a field automorphism (linear on the vector space)."""
        return GElement(self.field, self.scale, sigma(self.base))

    def __eq__(self, other):
        if not isinstance(other, GElement):
            return NotImplemented
        return g_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"GElement({self.scale} * f_{list(self.base.coords)})"


def g_equal(u: GElement, v: GElement) -> bool:
    """Exact equality in the group modulo torsion."""
    if u.field is not v.field:
        raise ValueError("elements of different working fields")
    s1, s2 = u.scale.denominator, v.scale.denominator
    ratio = u.base ** s2 * v.base ** (-s1)
    return is_torsion(ratio, u.field)


def g_height(u: GElement) -> HeightValue:
    """Height of the vector-space element: |scale| * h(base)."""
    if u.is_zero():
        return HeightValue.exact_zero()
    return weil_height(u.base, u.field).scaled(u.scale)


def g_combine(terms) -> GElement:
    """Canonical sum of scalar--base pairs: with s = lcm of denominators,
    the result is (1/s, prod base_i^(scale_i * s))."""
    terms = list(terms)
    if not terms:
        raise ValueError("g_combine needs at least one term")
    field = terms[0].field
    s = 1
    for t in terms:
        if t.field is not field:
            raise ValueError("elements of different working fields")
        s = int_lcm(s, t.scale.denominator)
    prod = field.one()
    for t in terms:
        e = t.scale * s
        assert e.denominator == 1
        prod = prod * t.base ** int(e)
    return GElement(field, Fraction(1, s), prod)


def g_sub(u: GElement, v: GElement) -> GElement:
    return g_combine([u, v.negate()])
