"""Vector cross products on R^7 and R^8 and their fundamental forms.

The 2-fold product lives on the imaginary part of O or B (coordinates
e_1..e_7 of the algebra, stored as a 7-vector), the two 3-fold products X1
and X2 on the full algebra (8-vector).  Products built from a stable 3-form
(module stable7) reuse the same container, so the axiom verifiers run
uniformly over every construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import compalg
from .compalg import AlgebraTag, AlgElement
from .exteralg import AltForm, InnerProduct, LinearMap, alt_form
from .linalg import det as _det
from .linalg import mat_vec, nullspace, rank
from .scalars import rat

Vector = tuple


def _vec(v: Sequence) -> Vector:
    return tuple(rat(x) if isinstance(x, (int, str)) else x for x in v)


@dataclass(frozen=True)
class CrossProduct:
    """An r-fold cross product as an evaluation closure plus its metric."""

    dim: int
    fold: int
    variant: str
    ip: InnerProduct
    evaluator: Callable
    tag: AlgebraTag | None = None
    frame: tuple | None = None  # ambient coordinates of the basis, for reductions

    def __call__(self, *vectors: Sequence) -> Vector:
        if len(vectors) != self.fold:
            raise ValueError(f"{self.fold}-fold product takes {self.fold} vectors")
        vecs = [_vec(v) for v in vectors]
        for v in vecs:
            if len(v) != self.dim:
                raise ValueError(f"vectors must have dimension {self.dim}")
        return self.evaluator(*vecs)


def eval(cp: CrossProduct, *vectors: Sequence) -> Vector:  # noqa: A001 - spec name
    return cp(*vectors)


def _imaginary(tag: AlgebraTag, v: Vector) -> AlgElement:
    return AlgElement(tag, (Fraction(0),) + tuple(v))


def cross_2fold(tag: AlgebraTag) -> CrossProduct:
    """X(a,b) = a.b + <a,b> e_0 on the imaginary 7-space of O or B."""
    if tag not in (AlgebraTag.O, AlgebraTag.B):
        raise ValueError("2-fold products live on Im(O) or Im(B)")
    sig = tag.signature[1:]

    def ev(a: Vector, b: Vector) -> Vector:
        xa, xb = _imaginary(tag, a), _imaginary(tag, b)
        prod = compalg.multiply(xa, xb)
        ip0 = compalg.inner(xa, xb)
        # adding <a,b> e_0 kills the real part; the result is imaginary
        return tuple(prod.coords[1:]) if prod.coords[0] + ip0 == 0 else _fail_real(prod, ip0)

    return CrossProduct(7, 2, "X", InnerProduct.diagonal(sig), ev, tag=tag)


def _fail_real(prod, ip0):
    raise ArithmeticError("2-fold product produced a real component; broken algebra data")


def cross_3fold(tag: AlgebraTag, variant: str) -> CrossProduct:
    """X1(a,b,c) = -a(conj(b)c) + <a,b>c + <b,c>a - <c,a>b; X2 with -(a conj(b))c."""
    if tag not in (AlgebraTag.O, AlgebraTag.B):
        raise ValueError("3-fold products live on O or B")
    if variant not in ("X1", "X2"):
        raise ValueError("variant must be 'X1' or 'X2'")

    def ev(a: Vector, b: Vector, c: Vector) -> Vector:
        xa, xb, xc = (AlgElement(tag, a), AlgElement(tag, b), AlgElement(tag, c))
        if variant == "X1":
            lead = -compalg.multiply(xa, compalg.multiply(compalg.conjugate(xb), xc))
        else:
            lead = -compalg.multiply(compalg.multiply(xa, compalg.conjugate(xb)), xc)
        out = (lead
               + compalg.inner(xa, xb) * xc
               + compalg.inner(xb, xc) * xa
               + (-compalg.inner(xc, xa)) * xb)
        return out.coords

    return CrossProduct(8, 3, variant, InnerProduct.diagonal(tag.signature), ev, tag=tag)


@dataclass(frozen=True)
class FundamentalForm:
    mu: AltForm


def fundamental_form(cp: CrossProduct) -> FundamentalForm:
    """mu(v_1..v_{r+1}) = <X(v_1..v_r), v_{r+1}> as an exact AltForm."""
    n, r = cp.dim, cp.fold
    basis = [tuple(Fraction(1 if i == k else 0) for i in range(n)) for k in range(n)]
    terms = {}
    for idx in itertools.combinations(range(n), r + 1):
        val = cp.ip.pair(cp(*(basis[i] for i in idx[:r])), basis[idx[r]])
        if val != 0:
            terms[tuple(i + 1 for i in idx)] = val
    return FundamentalForm(alt_form(n, r + 1, terms))


@dataclass(frozen=True)
class AxiomReport:
    variant: str
    trials: int
    passed: bool
    failures: tuple

    def failed_checks(self) -> tuple:
        return tuple(name for name, _ in self.failures)


def _random_vector(rng: random.Random, n: int, span: int = 5) -> Vector:
    return tuple(Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(n))


def verify_axioms(cp: CrossProduct, trials: int, seed: int = 0) -> AxiomReport:
    """Exact randomized check of the two Brown-Gray axioms plus skewness."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    failures: list = []

    def record(name, witness):
        if len(failures) < 8:
            failures.append((name, witness))

    for _ in range(trials):
        ws = [_random_vector(rng, cp.dim) for _ in range(cp.fold)]
        x = cp(*ws)
        for i, w in enumerate(ws):
            if cp.ip.pair(x, w) != 0:
                record("orthogonality", (i, ws))
        gram = [[cp.ip.pair(u, v) for v in ws] for u in ws]
        if cp.ip.pair(x, x) != _det(gram):
            record("gram_norm", ws)
        i, j = rng.sample(range(cp.fold), 2) if cp.fold > 1 else (0, 0)
        if cp.fold > 1:
            swapped = list(ws)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            if cp(*swapped) != tuple(-c for c in x):
                record("skew_symmetry", (i, j, ws))
    return AxiomReport(cp.variant, trials, not failures, tuple(failures))


def reduce_by_unit_vector(cp3: CrossProduct, a: Sequence) -> CrossProduct:
    """Induced 2-fold product X(x,y) = X3(a,x,y) on the complement of a.

    Requires <a,a> = 1 exactly (space-like unit); null or time-like vectors
    are rejected since the Gram axiom fails on them.
    """
    if cp3.fold != 3:
        raise ValueError("reduction starts from a 3-fold product")
    a = _vec(a)
    na = cp3.ip.pair(a, a)
    if na == 0:
        raise ValueError("null vector cannot induce a reduction")
    if na != 1:
        raise ValueError("reduction vector must satisfy <a,a> = 1 exactly")
    # complement basis: nullspace of the covector <a, .>
    grow = [mat_vec([list(r) for r in cp3.ip.gram], list(a))]
    comp = nullspace(grow, ncols=cp3.dim)
    comp_t = [tuple(v) for v in comp]
    emb = [list(col) for col in zip(*comp_t)]  # dim x 7, columns = basis
    sub_gram = [[cp3.ip.pair(u, v) for v in comp_t] for u in comp_t]
    from .linalg import inverse as _inv

    sub_gram_inv = _inv(sub_gram)
    big_gram = [list(r) for r in cp3.ip.gram]

    def to_ambient(x: Vector) -> Vector:
        return tuple(sum((emb[i][k] * x[k] for k in range(len(comp_t))), Fraction(0))
                     for i in range(cp3.dim))

    def to_local(w: Sequence) -> Vector:
        rhs = mat_vec(sub_gram_inv, [sum((u[i] * s for i, s in enumerate(mat_vec(big_gram, list(w)))), Fraction(0)) for u in comp_t])
        return tuple(rhs)

    def ev(x: Vector, y: Vector) -> Vector:
        w = cp3(a, to_ambient(x), to_ambient(y))
        return to_local(w)

    return CrossProduct(7, 2, f"{cp3.variant}|{list(a)}", InnerProduct.from_rows(sub_gram), ev,
                        tag=cp3.tag, frame=comp_t)


@dataclass(frozen=True)
class ParaExtensionReport:
    variant: str
    trials: int
    identity_one: bool
    identity_two: bool
    branch: str            # "commuting" or "anticommuting"
    eigen_dims: tuple[int, int]
    passed: bool


def para_structure_from_plane(cp3: CrossProduct, a: Sequence, b: Sequence) -> LinearMap:
    """L v = -X3(a, b, v) on the orthogonal complement of the Lorentzian
    plane span{a, b}, extended to the plane by La = b, Lb = a."""
    a, b = _vec(a), _vec(b)
    _require_lorentzian(cp3, a, b)
    n = cp3.dim
    cols = []
    basis = [tuple(Fraction(1 if i == k else 0) for i in range(n)) for k in range(n)]
    ga = mat_vec([list(r) for r in cp3.ip.gram], list(a))
    gb = mat_vec([list(r) for r in cp3.ip.gram], list(b))
    for v in basis:
        pa = sum((ga[i] * v[i] for i in range(n)), Fraction(0))       # <a, v>
        pb = -sum((gb[i] * v[i] for i in range(n)), Fraction(0))      # <b,b> = -1
        tangent = tuple(v[i] - pa * a[i] - pb * b[i] for i in range(n))
        lv = tuple(-c for c in cp3(a, b, tangent))
        plane_part = tuple(pa * b[i] + pb * a[i] for i in range(n))   # La=b, Lb=a
        cols.append(tuple(x + y for x, y in zip(lv, plane_part)))
    return LinearMap.from_columns(cols)


def _require_lorentzian(cp3: CrossProduct, a: Vector, b: Vector):
    if cp3.ip.pair(a, a) != 1 or cp3.ip.pair(b, b) != -1 or cp3.ip.pair(a, b) != 0:
        raise ValueError("plane must be Lorentzian: <a,a>=1, <b,b>=-1, <a,b>=0")


def verify_para_extension_identities(cp3: CrossProduct, a: Sequence, b: Sequence,
                                     trials: int, seed: int = 0) -> ParaExtensionReport:
    """Exact check of the paracomplex-extension identities on a Lorentzian plane.

    With L v = -X(a, b, v) on the complement and La = b, Lb = a on the plane
    (so L^2 = Id), the following hold identically for tangent x, y and plane
    normal n, and are verified exactly on random rational tuples:

        X(Lx, y, n) + L X(x, y, n) = <Lx, y> n + <x, y> L n
        X(Lx, Ly, n) - X(x, y, n) = -2 <Lx, y> L n

    (The +/+ and -2 signs are forced: the left side of the first identity
    has a tangent component that any -/- right side could not produce.)
    In addition exactly one of

        L X(n, x, y) = X(Ln, x, y)                       (branch "commuting")
        L X(n, x, y) = -X(Ln, x, y) + 2 <Lx, y> n        (branch "anticommuting")

    holds; which one depends on the 3-fold variant and is reported.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    a, b = _vec(a), _vec(b)
    L = para_structure_from_plane(cp3, a, b)
    n_dim = cp3.dim
    rng = random.Random(seed)
    gram = [list(r) for r in cp3.ip.gram]
    ga, gb = mat_vec(gram, list(a)), mat_vec(gram, list(b))

    def project_tangent(v: Vector) -> Vector:
        pa = sum((ga[i] * v[i] for i in range(n_dim)), Fraction(0))
        pb = -sum((gb[i] * v[i] for i in range(n_dim)), Fraction(0))
        return tuple(v[i] - pa * a[i] - pb * b[i] for i in range(n_dim))

    def lv(v: Vector) -> Vector:
        return tuple(L.apply(list(v)))

    id1 = id2 = True
    commuting = anticommuting = True
    for _ in range(trials):
        x = project_tangent(_random_vector(rng, n_dim))
        y = project_tangent(_random_vector(rng, n_dim))
        s, t = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        nrm = tuple(s * a[i] + t * b[i] for i in range(n_dim))
        lx, ly, ln = lv(x), lv(y), lv(nrm)
        pair_lxy = cp3.ip.pair(lx, y)
        pair_xy = cp3.ip.pair(x, y)
        lhs1 = _add(cp3(lx, y, nrm), lv(cp3(x, y, nrm)))
        rhs1 = _add(_scale_vec(pair_lxy, nrm), _scale_vec(pair_xy, ln))
        if lhs1 != rhs1:
            id1 = False
        lhs2 = _sub(cp3(lx, ly, nrm), cp3(x, y, nrm))
        if lhs2 != _scale_vec(-2 * pair_lxy, ln):
            id2 = False
        lxn = lv(cp3(nrm, x, y))
        if lxn != cp3(ln, x, y):
            commuting = False
        alt = _add(_scale_vec(Fraction(-1), cp3(ln, x, y)), _scale_vec(2 * pair_lxy, nrm))
        if lxn != alt:
            anticommuting = False

    # eigenspace dimensions of L restricted to the complement of the plane
    lm = [list(r) for r in L.matrix]
    idm = [[Fraction(1 if i == j else 0) for j in range(n_dim)] for i in range(n_dim)]
    plus = n_dim - rank([[lm[i][j] - idm[i][j] for j in range(n_dim)] for i in range(n_dim)])
    minus = n_dim - rank([[lm[i][j] + idm[i][j] for j in range(n_dim)] for i in range(n_dim)])
    # the plane itself carries one +1 and one -1 eigenvector (a+b, a-b)
    dims = (plus - 1, minus - 1)
    branch = "commuting" if commuting else ("anticommuting" if anticommuting else "none")
    passed = id1 and id2 and (commuting != anticommuting)
    return ParaExtensionReport(cp3.variant, trials, id1, id2, branch, dims, passed)


def _sub(x: Vector, y: Vector) -> Vector:
    return tuple(u - v for u, v in zip(x, y))


def _add(x: Vector, y: Vector) -> Vector:
    return tuple(u + v for u, v in zip(x, y))


def _scale_vec(c, x: Vector) -> Vector:
    return tuple(c * u for u in x)
