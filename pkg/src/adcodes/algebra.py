"""Exact scalar arithmetic: rationals, sums of square roots, polynomials in the loss rate.

Amplitudes that show up in damped bosonic states are (signed) square roots of
rationals times half-integer powers of gamma and (1-gamma).  Everything here
stays in exact arithmetic so that orthogonality and norm-equality checks are
true zero tests, with no tolerance anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

#: Trial-division limit for squarefree factorization.  Occupation numbers in
#: scope keep kernels tiny; anything needing a prime beyond this is refused
#: rather than silently approximated.
FACTOR_BOUND = 10**6

RationalLike = Union[int, Fraction]


class FactorizationError(ValueError):
    """A squarefree kernel could not be extracted within FACTOR_BOUND."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split a positive integer as n = root**2 * kernel with kernel squarefree."""
    if n <= 0:
        raise ValueError(f"need a positive integer, got {n}")
    root = 1
    kernel = 1
    d = 2
    while d * d <= n:
        if d > FACTOR_BOUND:
            raise FactorizationError(f"no factor of {n} below {FACTOR_BOUND}")
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            root *= d ** (e // 2)
            if e % 2:
                kernel *= d
        d += 1 if d == 2 else 2
    # leftover is 1 or a prime
    kernel *= n
    return root, kernel


class Radical:
    """A finite sum  sum_k c_k * sqrt(k)  with rational c_k and squarefree k.

    Canonical form (distinct squarefree kernels, no zero coefficients) is
    unique, so equality is structural.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        canon: dict[int, Fraction] = {}
        if terms:
            for kernel, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                root, sf = squarefree_decompose(kernel)
                canon[sf] = canon.get(sf, Fraction(0)) + coeff * root
        self._terms = {k: c for k, c in sorted(canon.items()) if c != 0}
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, q: RationalLike) -> "Radical":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt_rational(cls, q: RationalLike) -> "Radical":
        """Exact square root of a nonnegative rational, as root/den * sqrt(kernel)."""
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"cannot take a real square root of {q}")
        if q == 0:
            return cls()
        root, kernel = squarefree_decompose(q.numerator * q.denominator)
        return cls({kernel: Fraction(root, q.denominator)})

    # -- queries ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == 1 for k in self._terms)

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[1]

    def sqrt(self) -> "Radical":
        """Square root, defined only for nonnegative rational values."""
        return Radical.sqrt_rational(self.as_fraction())

    def __float__(self) -> float:
        return sum(float(c) * math.sqrt(k) for k, c in self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Radical | None":
        if isinstance(other, Radical):
            return other
        if isinstance(other, (int, Fraction)):
            return Radical.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Radical(out)

    __radd__ = __add__

    def __neg__(self):
        return Radical({k: -c for k, c in self._terms.items()})

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
        out: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in o._terms.items():
                # sqrt(k1)*sqrt(k2) = g * sqrt(k1*k2/g^2) with g = gcd(k1,k2)
                g = math.gcd(k1, k2)
                kernel = (k1 // g) * (k2 // g)
                coeff = c1 * c2 * g
                out[kernel] = out.get(kernel, Fraction(0)) + coeff
        return Radical(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return Radical({k: c / other for k, c in self._terms.items()})
        if isinstance(other, Radical):
            if len(other._terms) != 1:
                raise ValueError("division only by single-kernel radicals")
            (k, c), = other._terms.items()
            # 1/(c sqrt(k)) = sqrt(k)/(c k)
            return self * Radical({k: Fraction(1, 1) / (c * k)})
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms.items():
            if k == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({k})")
            else:
                parts.append(f"{c}*sqrt({k})")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = Radical()
ONE = Radical.from_rational(1)


class GammaPoly:
    """Exact polynomial in gamma built from monomials gamma^(a/2) * (1-gamma)^(b/2).

    Exponents are stored doubled (a2, b2 nonnegative integers counting
    half-powers) so that amplitudes with half-integer powers and their squared
    norms share one representation.  Coefficients are Radical values.
    """

    __slots__ = ("_monomials",)

    def __init__(self, monomials: Mapping[tuple[int, int], Radical] | None = None):
        canon: dict[tuple[int, int], Radical] = {}
        if monomials:
            for (a2, b2), coeff in monomials.items():
                if a2 < 0 or b2 < 0:
                    raise ValueError(f"negative exponent pair ({a2}, {b2})")
                if not isinstance(coeff, Radical):
                    coeff = Radical.from_rational(coeff)
                if coeff.is_zero():
                    continue
                key = (a2, b2)
                prev = canon.get(key)
                canon[key] = coeff if prev is None else prev + coeff
        self._monomials = {k: c for k, c in sorted(canon.items()) if not c.is_zero()}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "GammaPoly":
        return cls()

    @classmethod
    def constant(cls, value: Radical | RationalLike) -> "GammaPoly":
        if not isinstance(value, Radical):
            value = Radical.from_rational(value)
        return cls({(0, 0): value})

    @classmethod
    def one(cls) -> "GammaPoly":
        return cls.constant(1)

    @classmethod
    def monomial(cls, a2: int, b2: int, coeff: Radical | RationalLike = 1) -> "GammaPoly":
        if not isinstance(coeff, Radical):
            coeff = Radical.from_rational(coeff)
        return cls({(a2, b2): coeff})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[RationalLike]) -> "GammaPoly":
        """Build from an ascending coefficient list in plain powers of gamma."""
        return cls({(2 * i, 0): Radical.from_rational(c) for i, c in enumerate(coeffs)})

    # -- queries ---------------------------------------------------------

    @property
    def monomials(self) -> dict[tuple[int, int], Radical]:
        return dict(self._monomials)

    def is_zero(self) -> bool:
        """Exact zero test as a function of gamma on (0, 1).

        Monomials split into classes by (kernel, parity of exponents); the
        prefactors sqrt(kernel) * {1, sqrt(g), sqrt(1-g), sqrt(g(1-g))} of
        distinct classes are linearly independent over rational-coefficient
        polynomials, so the value vanishes iff every class expands to zero.
        """
        classes: dict[tuple[int, int, int], dict[int, Fraction]] = {}
        for (a2, b2), coeff in self._monomials.items():
            p, q = a2 // 2, b2 // 2
            for kernel, c in coeff.terms.items():
                acc = classes.setdefault((kernel, a2 % 2, b2 % 2), {})
                # expand gamma^p (1-gamma)^q
                for j in range(q + 1):
                    term = c * ((-1) ** j) * math.comb(q, j)
                    acc[p + j] = acc.get(p + j, Fraction(0)) + term
        return all(c == 0 for acc in classes.values() for c in acc.values())

    def expand(self) -> list[Fraction]:
        """Ascending rational coefficient list in plain powers of gamma.

        Only defined for integer exponents and rational coefficients; a
        radical coefficient signals an amplitude, not a probability.
        """
        coeffs: dict[int, Fraction] = {}
        degree = 0
        for (a2, b2), coeff in self._monomials.items():
            if a2 % 2 or b2 % 2:
                raise ValueError("half-integer exponents cannot be expanded")
            c = coeff.as_fraction()
            p, q = a2 // 2, b2 // 2
            degree = max(degree, p + q)
            for j in range(q + 1):
                term = c * ((-1) ** j) * math.comb(q, j)
                coeffs[p + j] = coeffs.get(p + j, Fraction(0)) + term
        return [coeffs.get(i, Fraction(0)) for i in range(degree + 1)]

    def eval_at(self, gamma: RationalLike) -> Fraction:
        """Exact evaluation at a rational gamma in [0, 1]."""
        gamma = Fraction(gamma)
        if not 0 <= gamma <= 1:
            raise ValueError(f"gamma={gamma} outside [0, 1]")
        total = Fraction(0)
        for (a2, b2), coeff in self._monomials.items():
            if a2 % 2 or b2 % 2:
                raise ValueError("half-integer exponents: evaluate the squared norm instead")
            total += coeff.as_fraction() * gamma ** (a2 // 2) * (1 - gamma) ** (b2 // 2)
        return total

    def eval_radical(self, gamma: RationalLike) -> Radical:
        """Exact evaluation allowing irrational coefficients (integer exponents)."""
        gamma = Fraction(gamma)
        if not 0 <= gamma <= 1:
            raise ValueError(f"gamma={gamma} outside [0, 1]")
        total = Radical()
        for (a2, b2), coeff in self._monomials.items():
            if a2 % 2 or b2 % 2:
                raise ValueError("half-integer exponents: evaluate the squared norm instead")
            total = total + coeff * (gamma ** (a2 // 2) * (1 - gamma) ** (b2 // 2))
        return total

    def eval_float(self, gamma: float) -> float:
        total = 0.0
        for (a2, b2), coeff in self._monomials.items():
            total += float(coeff) * gamma ** (a2 / 2) * (1 - gamma) ** (b2 / 2)
        return total

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "GammaPoly | None":
        if isinstance(other, GammaPoly):
            return other
        if isinstance(other, (int, Fraction, Radical)):
            return GammaPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._monomials)
        for key, coeff in o._monomials.items():
            prev = out.get(key)
            out[key] = coeff if prev is None else prev + coeff
        return GammaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GammaPoly({k: -c for k, c in self._monomials.items()})

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
        out: dict[tuple[int, int], Radical] = {}
        for (a1, b1), c1 in self._monomials.items():
            for (a2, b2), c2 in o._monomials.items():
                key = (a1 + a2, b1 + b2)
                term = c1 * c2
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
        return GammaPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        raise TypeError("GammaPoly is unhashable; equality is semantic")

    def __repr__(self):
        if not self._monomials:
            return "0"
        parts = []
        for (a2, b2), coeff in self._monomials.items():
            factors = []
            cs = repr(coeff)
            if cs != "1" or (a2 == 0 and b2 == 0):
                factors.append(f"({cs})" if "+" in cs or "-" in cs[1:] else cs)
            if a2:
                factors.append("g" + (f"^{a2 // 2}" if a2 % 2 == 0 and a2 != 2 else
                                      ("" if a2 == 2 else f"^{Fraction(a2, 2)}")))
            if b2:
                factors.append("(1-g)" + (f"^{b2 // 2}" if b2 % 2 == 0 and b2 != 2 else
                                          ("" if b2 == 2 else f"^{Fraction(b2, 2)}")))
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)


def format_poly(coeffs: Iterable[Fraction]) -> str:
    """Human-readable polynomial in g from an ascending coefficient list."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = str(abs(c))
        var = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        body = mag if not var else (var if abs(c) == 1 else f"{mag}*{var}")
        parts.append(("- " if c < 0 else ("+ " if parts else "")) + body)
    return " ".join(parts) if parts else "0"
