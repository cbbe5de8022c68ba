"""Words and exact linear combinations in the twisted generators.

A word is a tuple of (index, exponent) factors.  Normal form sorts indices
ascending and merges repeats, collecting the commutation twist as an integer
exponent: swapping adjacent factors u_k^a u_l^b with k > l costs the phase
e^(-2*pi*i*beta*a*b).  Elements are finite sums of normal-form words with
PhaseCoefficient coefficients; zero coefficients are dropped on construction,
so equality is per-word coefficient equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .deformation import DeformationParameter, InputError, isotropy
from .scalars import PC_ONE, PC_ZERO, PhaseCoefficient, QQi

Word = tuple[tuple[int, int], ...]
EMPTY_WORD: Word = ()


def _sort_count(seq: list[tuple[int, int]]) -> tuple[list[tuple[int, int]], int]:
    # stable merge sort by index, counting exponent-weighted inversions
    if len(seq) <= 1:
        return list(seq), 0
    mid = len(seq) // 2
    left, linv = _sort_count(seq[:mid])
    right, rinv = _sort_count(seq[mid:])
    suffix = [0] * (len(left) + 1)
    for i in range(len(left) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + left[i][1]
    merged: list[tuple[int, int]] = []
    inv = linv + rinv
    i = j = 0
    nl, nr = len(left), len(right)
    while i < nl and j < nr:
        if left[i][0] <= right[j][0]:
            merged.append(left[i])
            i += 1
        else:
            inv += right[j][1] * suffix[i]
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, inv


def _merge_runs(sorted_seq: list[tuple[int, int]]) -> Word:
    out: list[tuple[int, int]] = []
    pos = 0
    n = len(sorted_seq)
    while pos < n:
        idx = sorted_seq[pos][0]
        total = 0
        while pos < n and sorted_seq[pos][0] == idx:
            total += sorted_seq[pos][1]
            pos += 1
        if total:
            out.append((idx, total))
    return tuple(out)


def normal_form(factors: Iterable[tuple[int, int]]) -> tuple[int, Word]:
    """Normal-order a factor sequence.

    Returns (twist, word) such that the input product equals
    e^(2*pi*i*beta*twist) times the ascending-index product word, for every
    deformation parameter.  twist is minus the exponent-weighted inversion
    count of the sequence; merging equal indices costs nothing and factors
    cancelling to exponent zero are elided.
    """
    seq = [(i, e) for i, e in factors if e != 0]
    ordered, inversions = _sort_count(seq)
    return -inversions, _merge_runs(ordered)


def word_degree(word: Word) -> int:
    return sum(e for _, e in word)


def word_translate(word: Word, offset: int) -> Word:
    return tuple((i + offset, e) for i, e in word)


def _as_phase(x) -> PhaseCoefficient:
    if isinstance(x, PhaseCoefficient):
        return x
    if isinstance(x, (int, Fraction)):
        return PhaseCoefficient.from_rational(x)
    if isinstance(x, QQi):
        return PhaseCoefficient.from_qqi(x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


class TorusAlgebra:
    """Fixes the deformation parameter; factory and context for elements."""

    __slots__ = ("beta", "isotropy", "_twist_cache")

    def __init__(self, beta: DeformationParameter):
        self.beta = beta
        self.isotropy = isotropy(beta)
        self._twist_cache: dict[int, PhaseCoefficient] = {0: PC_ONE}

    def twist_phase(self, exponent: int) -> PhaseCoefficient:
        """e^(2*pi*i*beta*exponent) as an exact scalar."""
        pc = self._twist_cache.get(exponent)
        if pc is None:
            if self.beta.is_rational:
                pc = PhaseCoefficient.unit_angle(self.beta.twist_angle(exponent))
            else:
                pc = PhaseCoefficient.symbolic_unit(exponent)
            self._twist_cache[exponent] = pc
        return pc

    def zero(self) -> Element:
        return Element(self, {}, canonical=True)

    def one(self) -> Element:
        return Element(self, {EMPTY_WORD: PC_ONE}, canonical=True)

    def scalar(self, value) -> Element:
        return Element(self, {EMPTY_WORD: _as_phase(value)})

    def u(self, index: int, exponent: int = 1) -> Element:
        if exponent == 0:
            return self.one()
        return Element(self, {((index, exponent),): PC_ONE}, canonical=True)

    def word(self, factors: Iterable[tuple[int, int]], coefficient=1) -> Element:
        """Element for one monomial, normal-ordered with its twist folded in."""
        twist, nf = normal_form(factors)
        coeff = _as_phase(coefficient)
        if twist:
            coeff = coeff * self.twist_phase(twist)
        return Element(self, {nf: coeff})

    def from_terms(self, terms: Iterable[tuple[Iterable[tuple[int, int]], object]]) -> Element:
        acc: dict[Word, PhaseCoefficient] = {}
        for factors, c in terms:
            twist, nf = normal_form(factors)
            coeff = _as_phase(c)
            if twist:
                coeff = coeff * self.twist_phase(twist)
            prev = acc.get(nf)
            acc[nf] = coeff if prev is None else prev + coeff
        return Element(self, acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusAlgebra) and other.beta == self.beta

    def __repr__(self) -> str:
        return f"TorusAlgebra(beta={self.beta})"


class Element:
    """Finite sum of normal-form words with exact coefficients."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: TorusAlgebra, terms: dict[Word, PhaseCoefficient],
                 *, canonical: bool = False):
        if not canonical:
            terms = {w: c for w, c in terms.items() if not c.is_zero()}
        self.algebra = algebra
        self._terms = terms

    def terms(self) -> list[tuple[Word, PhaseCoefficient]]:
        return sorted(self._terms.items())

    def words(self) -> list[Word]:
        return sorted(self._terms)

    def coefficient(self, word: Word) -> PhaseCoefficient:
        return self._terms.get(word, PC_ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def support_indices(self) -> set[int]:
        out: set[int] = set()
        for w in self._terms:
            out.update(i for i, _ in w)
        return out

    def _check_same_algebra(self, other: Element):
        if other.algebra.beta != self.algebra.beta:
            raise InputError("elements live over different deformation parameters")

    def __add__(self, other) -> Element:
        if not isinstance(other, Element):
            other = self.algebra.scalar(other)
        self._check_same_algebra(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            prev = out.get(w)
            out[w] = c if prev is None else prev + c
        return Element(self.algebra, out)

    def __radd__(self, other) -> Element:
        return self + other

    def __neg__(self) -> Element:
        return Element(
            self.algebra, {w: -c for w, c in self._terms.items()}, canonical=True
        )

    def __sub__(self, other) -> Element:
        if not isinstance(other, Element):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> Element:
        return (-self) + other

    def __mul__(self, other) -> Element:
        if not isinstance(other, Element):
            coeff = _as_phase(other)
            return Element(
                self.algebra, {w: c * coeff for w, c in self._terms.items()}
            )
        self._check_same_algebra(other)
        twist_phase = self.algebra.twist_phase
        out: dict[Word, PhaseCoefficient] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                twist, nf = normal_form(w1 + w2)
                c = c1 * c2
                if twist:
                    c = c * twist_phase(twist)
                prev = out.get(nf)
                out[nf] = c if prev is None else prev + c
        return Element(self.algebra, out)

    def __rmul__(self, other) -> Element:
        # scalars commute with everything; Element * Element goes via __mul__
        coeff = _as_phase(other)
        return Element(self.algebra, {w: coeff * c for w, c in self._terms.items()})

    def __truediv__(self, other) -> Element:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        raise TypeError("can only divide by a nonzero rational")

    def adjoint(self) -> Element:
        """Conjugate-linear involution: reverses words and negates exponents."""
        twist_phase = self.algebra.twist_phase
        out: dict[Word, PhaseCoefficient] = {}
        for w, c in self._terms.items():
            rev = tuple((i, -e) for i, e in reversed(w))
            twist, nf = normal_form(rev)
            cc = c.conjugate()
            if twist:
                cc = cc * twist_phase(twist)
            out[nf] = cc
        return Element(self.algebra, out, canonical=True)

    def degree(self) -> int | None:
        """Common total exponent of all words; None if mixed, 0 for zero."""
        deg: int | None = None
        for w in self._terms:
            d = word_degree(w)
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return 0 if deg is None else deg

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            if isinstance(other, (int, Fraction, QQi, PhaseCoefficient)):
                other = self.algebra.scalar(other)
            else:
                return NotImplemented
        if other.algebra.beta != self.algebra.beta:
            return False
        if self._terms.keys() != other._terms.keys():
            return False
        for w, c in self._terms.items():
            oc = other._terms[w]
            if c._terms != oc._terms and not (c - oc).is_zero():
                return False
        return True

    __hash__ = None

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"<Element {self}>"


def degree_zero_part(x: Element) -> Element:
    """Average over the global gauge circle: keeps the degree-zero terms."""
    kept = {w: c for w, c in x._terms.items() if word_degree(w) == 0}
    return Element(x.algebra, kept, canonical=True)


def divisible_exponent_part(x: Element, order: int | None) -> Element:
    """Average over per-coordinate rotations by the annihilator.

    Keeps the words whose every exponent is a multiple of order.  order None
    stands for the whole-circle annihilator and keeps only the unit word.
    """
    if order is not None and order < 1:
        raise InputError("order must be a positive integer")
    kept: dict[Word, PhaseCoefficient] = {}
    for w, c in x._terms.items():
        if order is None:
            if w == EMPTY_WORD:
                kept[w] = c
        elif all(e % order == 0 for _, e in w):
            kept[w] = c
    return Element(x.algebra, kept, canonical=True)


def _exact_angle(angle) -> Fraction:
    if isinstance(angle, float):
        raise InputError(
            "exact gauge needs a rational angle; floats go through "
            "gauge_orbit_numeric"
        )
    return Fraction(angle)


def apply_gauge(x: Element, angle) -> Element:
    """Rotate every generator by e^(2*pi*i*angle), angle rational.

    A degree-m term picks up the phase e^(2*pi*i*m*angle).
    """
    angle = _exact_angle(angle)
    out: dict[Word, PhaseCoefficient] = {}
    for w, c in x._terms.items():
        q = (angle * word_degree(w)) % 1
        out[w] = c if not q else c * PhaseCoefficient.unit_angle(q)
    return Element(x.algebra, out, canonical=True)


def apply_coordinate_gauge(x: Element, angles: Mapping[int, Fraction]) -> Element:
    """Rotate generator i by e^(2*pi*i*angles[i]); unlisted indices stay put."""
    out: dict[Word, PhaseCoefficient] = {}
    zero = Fraction(0)
    for w, c in x._terms.items():
        q = sum((_exact_angle(angles.get(i, zero)) * e for i, e in w), zero) % 1
        out[w] = c if not q else c * PhaseCoefficient.unit_angle(q)
    return Element(x.algebra, out, canonical=True)


def apply_index_map(x: Element, h: Callable[[int], int]) -> Element:
    """Relabel generator indices through a strictly increasing map.

    Order preservation means no new inversions, so coefficients are carried
    over unchanged.  Maps that fail to increase strictly on the support are
    rejected.
    """
    out: dict[Word, PhaseCoefficient] = {}
    for w, c in x._terms.items():
        new = tuple((h(i), e) for i, e in w)
        for (a, _), (b, _) in zip(new, new[1:]):
            if a >= b:
                raise InputError(
                    "index map is not strictly increasing on the support"
                )
        out[new] = c
    return Element(x.algebra, out, canonical=True)


def translate(x: Element, offset: int) -> Element:
    """Shift every generator index by a fixed offset."""
    out = {word_translate(w, offset): c for w, c in x._terms.items()}
    return Element(x.algebra, out, canonical=True)


def gauge_orbit_numeric(x: Element, angle: float, beta_value=None) -> dict[Word, complex]:
    """Floating gauge rotation for arbitrary angles.

    Returns the coefficient map with machine-precision phases; comparisons
    against the exact path are good to 1e-9.
    """
    import cmath
    from math import pi

    out = {}
    for w, c in x._terms.items():
        out[w] = c.to_complex(beta_value) * cmath.exp(2j * pi * angle * word_degree(w))
    return out
