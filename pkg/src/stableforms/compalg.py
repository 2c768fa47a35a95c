"""Cayley-Dickson composition algebras: H, split-H, O and split-O.

Multiplication is generated recursively from R by the doubling rule

    (a + b l)(c + d l) = (a c + l^2 conj(d) b) + (d a + b conj(c)) l

with the basis ordering e_0..e_3 = 1, i, j, k and e_{s+4} = e_s * l.  The
8x8 tables are never hard coded; they fall out of the rule and are snapshot
tested downstream.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import rat


class AlgebraTag(enum.Enum):
    H = "H"   # quaternions
    U = "U"   # split-quaternions
    O = "O"   # octonions
    B = "B"   # split-octonions

    @property
    def dim(self) -> int:
        return 4 if self in (AlgebraTag.H, AlgebraTag.U) else 8

    @property
    def doubling_signs(self) -> tuple[int, ...]:
        """l^2 at each doubling level, starting from R."""
        return {
            AlgebraTag.H: (-1, -1),
            AlgebraTag.U: (-1, 1),
            AlgebraTag.O: (-1, -1, -1),
            AlgebraTag.B: (-1, -1, 1),
        }[self]

    @property
    def signature(self) -> tuple[int, ...]:
        """Diagonal of the norm form N on the basis e_0, e_1, ..."""
        diag = [1]
        for s in self.doubling_signs:
            diag = diag + [-s * x for x in diag]
        return tuple(diag)


@dataclass(frozen=True)
class AlgElement:
    tag: AlgebraTag
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.tag.dim:
            raise ValueError(f"{self.tag.value} elements need {self.tag.dim} coordinates")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        _same_tag(self, other)
        return AlgElement(self.tag, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        _same_tag(self, other)
        return AlgElement(self.tag, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.tag, tuple(-a for a in self.coords))

    def __rmul__(self, c) -> "AlgElement":
        c = rat(c) if isinstance(c, (int, str)) else c
        return AlgElement(self.tag, tuple(c * a for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.tag == other.tag and self.coords == other.coords

    def __repr__(self):
        body = " + ".join(f"{c}*e{k}" for k, c in enumerate(self.coords) if c != 0) or "0"
        return f"{self.tag.value}({body})"


def element(tag: AlgebraTag, coords: Sequence) -> AlgElement:
    return AlgElement(tag, tuple(rat(c) if isinstance(c, (int, str)) else c for c in coords))


def basis_element(tag: AlgebraTag, k: int) -> AlgElement:
    return AlgElement(tag, tuple(Fraction(1 if i == k else 0) for i in range(tag.dim)))


def _same_tag(x: AlgElement, y: AlgElement):
    if x.tag != y.tag:
        raise ValueError(f"algebra tag mismatch: {x.tag.value} vs {y.tag.value}")


def _cd_mul(x: tuple, y: tuple, signs: tuple[int, ...]) -> tuple:
    if not signs:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    inner = signs[:-1]
    s = signs[-1]
    first = _add(_cd_mul(a, c, inner), _scale(s, _cd_mul(_cd_conj(d), b, inner)))
    second = _add(_cd_mul(d, a, inner), _cd_mul(b, _cd_conj(c), inner))
    return first + second


def _cd_conj(x: tuple) -> tuple:
    return (x[0],) + tuple(-c for c in x[1:])


def _add(x: tuple, y: tuple) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def _scale(s, x: tuple) -> tuple:
    return tuple(s * a for a in x)


def multiply(x: AlgElement, y: AlgElement) -> AlgElement:
    _same_tag(x, y)
    return AlgElement(x.tag, _cd_mul(x.coords, y.coords, x.tag.doubling_signs))


def conjugate(x: AlgElement) -> AlgElement:
    return AlgElement(x.tag, _cd_conj(x.coords))


def re(x: AlgElement) -> AlgElement:
    return AlgElement(x.tag, (x.coords[0],) + tuple(Fraction(0) for _ in x.coords[1:]))


def im(x: AlgElement) -> AlgElement:
    return AlgElement(x.tag, (Fraction(0),) + x.coords[1:])


def norm(x: AlgElement) -> Fraction:
    """N(x) = x * conj(x), a scalar multiple of e_0."""
    return multiply(x, conjugate(x)).coords[0]


def inner(x: AlgElement, y: AlgElement) -> Fraction:
    """Polarization (x conj(y) + y conj(x)) / 2, read off the e_0 coordinate."""
    _same_tag(x, y)
    s = _add(_cd_mul(x.coords, _cd_conj(y.coords), x.tag.doubling_signs),
             _cd_mul(y.coords, _cd_conj(x.coords), x.tag.doubling_signs))
    return s[0] / 2


def multiplication_table(tag: AlgebraTag) -> list[list[AlgElement]]:
    n = tag.dim
    return [[multiply(basis_element(tag, i), basis_element(tag, j)) for j in range(n)] for i in range(n)]


def random_element(tag: AlgebraTag, rng: random.Random, span: int = 9) -> AlgElement:
    return AlgElement(tag, tuple(Fraction(rng.randint(-span, span), rng.randint(1, 4))
                                 for _ in range(tag.dim)))


@dataclass(frozen=True)
class IdentityReport:
    tag: AlgebraTag
    trials: int
    passed: bool
    failures: tuple

    def failed_checks(self) -> tuple:
        return tuple(name for name, _ in self.failures)


def verify_identities(tag: AlgebraTag, trials: int, seed: int = 0) -> IdentityReport:
    """Randomized exact verification of the defining composition-algebra laws.

    Checks, per random pair/triple: multiplicativity of N, alternativity
    (two-generator associativity), the conjugation anti-homomorphism, and the
    two linearization identities
    x conj(y) + y conj(x) = 2 <x,y> e_0 and x(conj(y) z) + y(conj(x) z) = 2 <x,y> z.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    failures: list = []

    def record(name, witness):
        if len(failures) < 8:
            failures.append((name, witness))

    one = basis_element(tag, 0)
    for _ in range(trials):
        x = random_element(tag, rng)
        y = random_element(tag, rng)
        z = random_element(tag, rng)
        if norm(multiply(x, y)) != norm(x) * norm(y):
            record("composition", (x, y))
        if multiply(x, multiply(x, y)) != multiply(multiply(x, x), y):
            record("left_alternative", (x, y))
        if multiply(multiply(y, x), x) != multiply(y, multiply(x, x)):
            record("right_alternative", (x, y))
        if conjugate(multiply(x, y)) != multiply(conjugate(y), conjugate(x)):
            record("conjugation_antihom", (x, y))
        lhs = multiply(x, conjugate(y)) + multiply(y, conjugate(x))
        if lhs != (2 * inner(x, y)) * one:
            record("polarization", (x, y))
        lhs2 = multiply(x, multiply(conjugate(y), z)) + multiply(y, multiply(conjugate(x), z))
        if lhs2 != (2 * inner(x, y)) * z:
            record("linearized_moufang", (x, y, z))
    return IdentityReport(tag, trials, not failures, tuple(failures))
