"""Exact exterior algebra over R^n for n <= 8.

Conventions fixed here and inherited by every other module:

* Basis covectors are 1-indexed; a multi-index is a strictly increasing
  tuple of integers in 1..n.
* Contraction uses the antiderivation sign
  ``i_v(e^{i1} ^ ... ^ e^{ip}) = sum_k (-1)^(k-1) v^{ik} e^{...no ik...}``.
* The Hodge star is defined by ``b ^ *a = <b, a> vol`` for every b of the
  same degree as a, where <.,.> is the inner product induced on forms by the
  (possibly indefinite) inner product on vectors.  The caller's volume form
  carries the orientation choice.

Coefficients are Fractions; the operations only use field arithmetic, so
forms over a quadratic extension (QuadExt coefficients) work throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import det as _det
from .linalg import inverse as _inverse
from .scalars import rat

MAX_DIM = 8

Index = tuple[int, ...]


def sort_index(idx: Sequence[int]) -> tuple[Index, int]:
    """Sorted multi-index and permutation sign; sign 0 on repeated entries."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return idx, 0
    sign = 1
    lst = list(idx)
    for i in range(len(lst)):
        for j in range(len(lst) - 1, i, -1):
            if lst[j - 1] > lst[j]:
                lst[j - 1], lst[j] = lst[j], lst[j - 1]
                sign = -sign
    return tuple(lst), sign


def merge_sign(a: Index, b: Index) -> tuple[Index, int]:
    """Concatenate two increasing multi-indices; 0 sign if they intersect."""
    merged, sign = sort_index(a + b)
    if sign == 0:
        return merged, 0
    return merged, sign


@dataclass(frozen=True)
class AltForm:
    """Alternating p-form with exact coefficients on sorted multi-indices."""

    dim: int
    degree: int
    terms: dict

    def __post_init__(self):
        if not (0 <= self.dim <= MAX_DIM):
            raise ValueError(f"dimension {self.dim} out of range 0..{MAX_DIM}")
        if self.degree < 0 or (self.degree > self.dim and self.terms):
            raise ValueError(f"degree {self.degree} invalid in dimension {self.dim}")
        for idx in self.terms:
            if len(idx) != self.degree:
                raise ValueError(f"index {idx} has wrong length for degree {self.degree}")
            if any(not (1 <= i <= self.dim) for i in idx):
                raise ValueError(f"index {idx} out of range 1..{self.dim}")
            if any(idx[k] >= idx[k + 1] for k in range(len(idx) - 1)):
                raise ValueError(f"index {idx} is not strictly increasing")

    @staticmethod
    def zero(dim: int, degree: int) -> "AltForm":
        return AltForm(dim, degree, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, idx: Sequence[int]):
        key, sign = sort_index(tuple(idx))
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    def __add__(self, other: "AltForm") -> "AltForm":
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ValueError("form shape mismatch in addition")
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            s = terms.get(idx, 0) + c
            if s == 0:
                terms.pop(idx, None)
            else:
                terms[idx] = s
        return AltForm(self.dim, self.degree, terms)

    def __neg__(self) -> "AltForm":
        return AltForm(self.dim, self.degree, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + (-other)

    def __rmul__(self, c) -> "AltForm":
        if c == 0:
            return AltForm.zero(self.dim, self.degree)
        return AltForm(self.dim, self.degree, {i: c * x for i, x in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AltForm):
            return NotImplemented
        return (self.dim, self.degree) == (other.dim, other.degree) and self.terms == other.terms

    def __call__(self, *vectors: Sequence) -> Fraction:
        """Evaluate on `degree` many vectors given in coordinates."""
        if len(vectors) != self.degree:
            raise ValueError(f"expected {self.degree} vectors, got {len(vectors)}")
        total = Fraction(0)
        for idx, c in self.terms.items():
            m = [[vectors[col][row - 1] for col in range(self.degree)] for row in idx]
            total = total + c * (_det(m) if self.degree else Fraction(1))
        return total

    def __repr__(self):
        if not self.terms:
            return f"AltForm({self.dim},{self.degree}; 0)"
        parts = " + ".join(f"{c}*e{''.join(map(str, i))}" for i, c in sorted(self.terms.items()))
        return f"AltForm({self.dim},{self.degree}; {parts})"


def alt_form(dim: int, degree: int, terms: Mapping[Sequence[int], object] | Iterable) -> AltForm:
    """Build an AltForm, normalizing index order, signs and zero coefficients."""
    items = terms.items() if isinstance(terms, Mapping) else terms
    out: dict = {}
    for idx, c in items:
        key, sign = sort_index(tuple(idx))
        if sign == 0:
            continue
        c = rat(c) if isinstance(c, (int, str)) else c
        s = out.get(key, 0) + sign * c
        if s == 0:
            out.pop(key, None)
        else:
            out[key] = s
    return AltForm(dim, degree, out)


def basis_form(dim: int, *idx: int) -> AltForm:
    return alt_form(dim, len(idx), {tuple(idx): Fraction(1)})


@dataclass(frozen=True)
class LinearMap:
    """Linear map given by a rational matrix; column j is the image of e_j."""

    dim_in: int
    dim_out: int
    matrix: tuple

    def __post_init__(self):
        if len(self.matrix) != self.dim_out or any(len(r) != self.dim_in for r in self.matrix):
            raise ValueError("matrix shape does not match declared dimensions")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "LinearMap":
        rows = tuple(tuple(rat(x) if isinstance(x, (int, str)) else x for x in r) for r in rows)
        return LinearMap(len(rows[0]), len(rows), rows)

    @staticmethod
    def from_columns(cols: Sequence[Sequence]) -> "LinearMap":
        return LinearMap.from_rows(list(zip(*cols)))

    @staticmethod
    def identity(n: int) -> "LinearMap":
        return LinearMap.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(entries: Sequence) -> "LinearMap":
        n = len(entries)
        return LinearMap.from_rows([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def column(self, j: int) -> list:
        return [self.matrix[i][j] for i in range(self.dim_out)]

    def apply(self, v: Sequence) -> list:
        return [sum((row[j] * v[j] for j in range(self.dim_in)), Fraction(0)) for row in self.matrix]

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        from .linalg import mat_mul

        return LinearMap.from_rows(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "LinearMap":
        if self.dim_in != self.dim_out:
            raise ValueError("only square maps invert")
        return LinearMap.from_rows(_inverse([list(r) for r in self.matrix]))

    def det(self):
        if self.dim_in != self.dim_out:
            raise ValueError("determinant needs a square map")
        return _det([list(r) for r in self.matrix])

    def transpose(self) -> "LinearMap":
        return LinearMap.from_rows(list(zip(*self.matrix)))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.dim_in, self.dim_out) == (other.dim_in, other.dim_out) and all(
            a == b for ra, rb in zip(self.matrix, other.matrix) for a, b in zip(ra, rb)
        )


@dataclass(frozen=True)
class InnerProduct:
    """Symmetric nondegenerate bilinear form with rational Gram matrix."""

    dim: int
    gram: tuple

    def __post_init__(self):
        g = self.gram
        if len(g) != self.dim or any(len(r) != self.dim for r in g):
            raise ValueError("Gram matrix shape mismatch")
        for i in range(self.dim):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        if _det([list(r) for r in g]) == 0:
            raise ValueError("inner product is degenerate")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "InnerProduct":
        rows = tuple(tuple(rat(x) if isinstance(x, (int, str)) else x for x in r) for r in rows)
        return InnerProduct(len(rows), rows)

    @staticmethod
    def diagonal(entries: Sequence) -> "InnerProduct":
        n = len(entries)
        return InnerProduct.from_rows([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def euclidean(n: int) -> "InnerProduct":
        return InnerProduct.diagonal([1] * n)

    def pair(self, u: Sequence, v: Sequence):
        return sum((u[i] * self.gram[i][j] * v[j] for i in range(self.dim) for j in range(self.dim)),
                   Fraction(0))

    def inverse_gram(self) -> list:
        return _inverse([list(r) for r in self.gram])

    def signature(self) -> tuple[int, int]:
        from .linalg import inertia

        pos, neg, zero = inertia([list(r) for r in self.gram])
        return pos, neg


@dataclass(frozen=True)
class VolumeForm:
    """Nonzero top form; the stored form (times the flag) fixes orientation."""

    form: AltForm
    positive: bool = True

    def __post_init__(self):
        if self.form.degree != self.form.dim:
            raise ValueError("volume form must have top degree")
        if self.form.is_zero:
            raise ValueError("volume form must be nonzero")

    @staticmethod
    def standard(dim: int, coeff=Fraction(1)) -> "VolumeForm":
        return VolumeForm(alt_form(dim, dim, {tuple(range(1, dim + 1)): coeff}))

    def oriented(self) -> AltForm:
        return self.form if self.positive else -self.form

    def coefficient(self):
        """Coefficient against e^{1..n}; sign encodes the orientation."""
        full = tuple(range(1, self.form.dim + 1))
        c = self.oriented().terms.get(full, Fraction(0))
        if c == 0:
            raise ValueError("volume form does not hit the full multi-index")
        return c

    def ratio(self, top: AltForm):
        """Scalar r with top = r * vol; top must be a top-degree form."""
        if top.degree != self.form.dim:
            raise ValueError("ratio needs a top-degree form")
        full = tuple(range(1, self.form.dim + 1))
        return top.terms.get(full, Fraction(0)) / self.coefficient()


def wedge(a: AltForm, b: AltForm) -> AltForm:
    """Exterior product; bilinear, sign by permutation parity."""
    if a.dim != b.dim:
        raise ValueError("wedge of forms on different spaces")
    deg = a.degree + b.degree
    if deg > a.dim:
        return AltForm.zero(a.dim, deg)
    out: dict = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            key, sign = merge_sign(ia, ib)
            if sign == 0:
                continue
            s = out.get(key, 0) + sign * ca * cb
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return AltForm(a.dim, deg, out)


def wedge_all(*forms: AltForm) -> AltForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(v, a: AltForm) -> AltForm:
    """Interior product i_v a with the Leibniz sign convention.

    The vector may be a coordinate sequence or a single-column LinearMap.
    """
    if isinstance(v, LinearMap):
        if v.dim_in != 1:
            raise ValueError("contraction takes a single column")
        v = v.column(0)
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    if len(v) != a.dim:
        raise ValueError("vector length does not match form dimension")
    out: dict = {}
    for idx, c in a.terms.items():
        for k, i in enumerate(idx):
            vi = v[i - 1]
            if vi == 0:
                continue
            key = idx[:k] + idx[k + 1:]
            contrib = ((-1) ** k) * vi * c
            s = out.get(key, 0) + contrib
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return AltForm(a.dim, a.degree - 1, out)


def pullback(g: LinearMap, a: AltForm) -> AltForm:
    """(g* a)(v_1..v_p) = a(g v_1, .., g v_p); computed via p x p minors."""
    if g.dim_in != g.dim_out:
        raise ValueError("pullback needs a square map")
    if g.dim_in != a.dim:
        raise ValueError("map and form dimensions differ")
    n, p = a.dim, a.degree
    if p == 0:
        return a
    out: dict = {}
    for jdx in itertools.combinations(range(1, n + 1), p):
        total = Fraction(0)
        for idx, c in a.terms.items():
            minor = [[g.matrix[i - 1][j - 1] for j in jdx] for i in idx]
            d = _det(minor)
            if d != 0:
                total = total + c * d
        if total != 0:
            out[jdx] = total
    return AltForm(n, p, out)


def form_inner(a: AltForm, b: AltForm, ip: InnerProduct):
    """Inner product induced on p-forms: <e^I, e^J> = det(G^{-1}[I, J])."""
    if (a.dim, a.degree) != (b.dim, b.degree):
        raise ValueError("form shape mismatch")
    ginv = ip.inverse_gram()
    total = Fraction(0)
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            m = [[ginv[i - 1][j - 1] for j in ib] for i in ia]
            d = _det(m) if a.degree else Fraction(1)
            if d != 0:
                total = total + ca * cb * d
    return total


def hodge_star(a: AltForm, ip: InnerProduct, vol: VolumeForm) -> AltForm:
    """Hodge dual: the unique (n-p)-form with b ^ *a = <b, a> vol for all b."""
    if ip.dim != a.dim or vol.form.dim != a.dim:
        raise ValueError("dimension mismatch in hodge_star")
    n, p = a.dim, a.degree
    v = vol.coefficient()
    ginv = ip.inverse_gram()
    out: dict = {}
    for idx in itertools.combinations(range(1, n + 1), p):
        # <e^I, a>
        coeff = Fraction(0)
        for ja, ca in a.terms.items():
            m = [[ginv[i - 1][j - 1] for j in ja] for i in idx]
            d = _det(m) if p else Fraction(1)
            if d != 0:
                coeff = coeff + ca * d
        if coeff == 0:
            continue
        comp = tuple(i for i in range(1, n + 1) if i not in idx)
        _, sign = merge_sign(idx, comp)
        out_c = sign * v * coeff
        s = out.get(comp, 0) + out_c
        if s == 0:
            out.pop(comp, None)
        else:
            out[comp] = s
    return AltForm(n, n - p, out)


def divisor_space(a: AltForm) -> list[AltForm]:
    """Basis of D(a) = { u in V* : u ^ a = 0 }, by exact nullspace."""
    if a.is_zero:
        raise ValueError("divisor space of the zero form is undefined")
    n = a.dim
    rows_index = list(itertools.combinations(range(1, n + 1), a.degree + 1)) if a.degree + 1 <= n else []
    if not rows_index:
        # wedging a top form with any covector is zero
        return [basis_form(n, i) for i in range(1, n + 1)]
    from .linalg import nullspace

    system = []
    for key in rows_index:
        row = []
        for j in range(1, n + 1):
            w = wedge(basis_form(n, j), a)
            row.append(w.terms.get(key, Fraction(0)))
        system.append(row)
    basis = nullspace(system, ncols=n)
    return [alt_form(n, 1, {(j + 1,): c for j, c in enumerate(vec) if c != 0}) for vec in basis]


def is_decomposable(a: AltForm) -> bool:
    """True iff a is a wedge of 1-forms, i.e. dim D(a) equals the degree."""
    return len(divisor_space(a)) == a.degree
