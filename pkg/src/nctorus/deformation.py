"""Deformation parameter arithmetic for the twisted shift algebra.

beta = alpha / (2*pi) is kept exact: a reduced fraction, or the symbolic tag
"irrational".  No floating approximation of beta ever enters the engine; the
rational/irrational dichotomy plus integer divisibility against the
denominator decide every phase question downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class InputError(ValueError):
    """Rejected constructor or command input."""


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive integer, sorted by prime."""
    if n < 1:
        raise InputError(f"cannot factor {n}: expected a positive integer")
    out: list[tuple[int, int]] = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@dataclass(frozen=True)
class DeformationParameter:
    """Reduced value of beta, or the symbolic irrational.

    In the rational case the denominator is positive, the fraction is in
    lowest terms, and the stored factorization multiplies back to the
    denominator.  The irrational case stores no numbers at all: the engine
    only ever uses that e^(2*pi*i*beta*m) = 1 forces m = 0 and that 1 and
    beta are rationally independent.
    """

    numerator: int | None = None
    denominator: int | None = None
    denominator_factors: tuple[tuple[int, int], ...] | None = None

    @property
    def is_rational(self) -> bool:
        return self.numerator is not None

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise InputError("irrational beta has no rational value")
        return Fraction(self.numerator, self.denominator)

    def twist_angle(self, m: int) -> Fraction | None:
        """Angle q in [0, 1) with e^(2*pi*i*beta*m) = e^(2*pi*i*q).

        None for symbolic beta with m != 0: the phase does not fold.
        """
        if not self.is_rational:
            return Fraction(0) if m == 0 else None
        return Fraction(self.numerator * m, self.denominator) % 1

    def __str__(self) -> str:
        if not self.is_rational:
            return "irrational"
        return f"{self.numerator}/{self.denominator}"


IRRATIONAL = DeformationParameter()


def canonicalize(numerator: int, denominator: int) -> DeformationParameter:
    """Reduce numerator/denominator to lowest terms with positive denominator."""
    if denominator == 0:
        raise InputError("deformation parameter needs a nonzero denominator")
    if denominator < 0:
        numerator, denominator = -numerator, -denominator
    g = gcd(numerator, denominator)
    numerator //= g
    denominator //= g
    return DeformationParameter(numerator, denominator, factorize(denominator))


def parse_beta(text: str) -> DeformationParameter:
    """Parse "N/D", a bare integer, or the word "irrational"."""
    s = text.strip()
    if s == "irrational":
        return IRRATIONAL
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad deformation parameter {text!r}: {exc}") from None
    return canonicalize(f.numerator, f.denominator)


@dataclass(frozen=True)
class IsotropySubgroup:
    """The integers k whose squared twist beta*k*k is an integer.

    generator None encodes the trivial subgroup {0}; its annihilator in the
    circle is then the whole circle.  Otherwise the subgroup is generator*Z
    and the annihilator is the finite group of roots of unity of that order.
    """

    generator: int | None

    @property
    def whole_circle_annihilator(self) -> bool:
        return self.generator is None

    @property
    def annihilator_order(self) -> int | None:
        return self.generator

    def contains(self, k: int) -> bool:
        if self.generator is None:
            return k == 0
        return k % self.generator == 0

    def annihilator_angles(self) -> tuple[Fraction, ...]:
        """The angles j/n of the finite annihilator (rational case only)."""
        if self.generator is None:
            raise InputError("the annihilator is the whole circle")
        n = self.generator
        return tuple(Fraction(j, n) for j in range(n))

    def __str__(self) -> str:
        if self.generator is None:
            return "{0}"
        return f"{self.generator}Z"


def isotropy(beta: DeformationParameter) -> IsotropySubgroup:
    """Isotropy subgroup of the squared twist at the given beta.

    For beta = N/D in lowest terms with D = prod p**m the generator is
    prod p**ceil(m/2), the least k with D | k*k; for symbolic beta the
    subgroup is trivial.
    """
    if not beta.is_rational:
        return IsotropySubgroup(None)
    n = 1
    for p, m in beta.denominator_factors:
        n *= p ** ((m + 1) // 2)
    return IsotropySubgroup(n)


def twist_exponent(k: int, l: int) -> int:
    """Integer m with swap phase e^(2*pi*i*beta*m) between powers k and l.

    Plain product; Python integers are arbitrary precision, so no overflow.
    """
    return k * l


def isotropy_generator_table(limit: int) -> list[int]:
    """Isotropy generator for every denominator 1..limit.

    Ceiling-exponent formula evaluated through a smallest-prime-factor
    sieve.  Entry 0 is a placeholder.
    """
    if limit < 1:
        raise InputError("limit must be >= 1")
    spf = list(range(limit + 1))
    p = 2
    while p * p <= limit:
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
        p += 1
    table = [0] * (limit + 1)
    table[1] = 1
    for d in range(2, limit + 1):
        p = spf[d]
        m = 0
        rest = d
        while rest % p == 0:
            rest //= p
            m += 1
        table[d] = p ** ((m + 1) // 2) * table[rest]
    return table
