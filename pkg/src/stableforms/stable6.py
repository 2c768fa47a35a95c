"""Classification and structure extraction for 3-forms on a 6-space.

Everything is measured against a declared volume form ``vol``:

* ``K(v) = -i_v Omega ^ Omega`` read through the identification
  ``i_u vol  <->  u (x) vol`` of 5-forms with vectors,
* ``lambda = tr(K^2)/6`` as a rational coefficient of ``vol^2``,
* sign(lambda) decides the orbit; the complex structure J = K/sqrt(-lambda)
  and the paracomplex L = K/sqrt(lambda) are never materialized with
  irrational entries - all structure checks run on the exact pair (K, lambda).

Orientation conventions.  Flipping vol flips K (and hence J).  The hat is
normalized by requiring ``Omega ^ hat(Omega)`` to be a positive multiple of
vol, which is the positivity condition on the decomposable complex form
whose real part is Omega.  The classical 4-term displays of the canonical
forms are adapted to the *complex* orientation of their frame, which is the
negative of the lexicographic one; ``adapted_vol6()`` provides it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exteralg import (AltForm, LinearMap, VolumeForm, alt_form, basis_form,
                       contract, pullback, wedge)
from .linalg import mat_mul, nullspace, rank
from .scalars import QuadExt, sqrt_fraction


class NotStableError(ValueError):
    """Raised when an operation requires a stable form and lambda = 0."""


class OrbitClass6(enum.Enum):
    O6_PLUS = "O6_PLUS"
    O6_MINUS = "O6_MINUS"
    NOT_STABLE = "NOT_STABLE"


@dataclass(frozen=True)
class KEndo:
    K: LinearMap
    vol: VolumeForm


@dataclass(frozen=True)
class Lambda:
    value: Fraction
    vol: VolumeForm


@dataclass(frozen=True)
class ScaledStructure:
    """Exact carrier of J (lambda < 0) or L (lambda > 0): K^2 = lambda Id."""

    K: LinearMap
    lam: Lambda

    @property
    def is_complex(self) -> bool:
        return self.lam.value < 0

    @property
    def is_para(self) -> bool:
        return self.lam.value > 0

    def eigenspace(self, sign: int) -> list[list]:
        """Basis of ker(K - sign*sqrt(lambda)) in the paracomplex case."""
        if not self.is_para:
            raise NotStableError("real eigenspaces exist only in the paracomplex case")
        s = sqrt_fraction(self.lam.value)
        if s is None:
            s = QuadExt.root(self.lam.value)
        n = self.K.dim_in
        m = [[self.K.matrix[i][j] - (sign * s if i == j else 0 * s) for j in range(n)]
             for i in range(n)]
        return nullspace(m, ncols=n)


def _check_shape(omega: AltForm, vol: VolumeForm):
    if omega.dim != 6 or omega.degree != 3:
        raise ValueError("expected a 3-form on a 6-dimensional space")
    if vol.form.dim != 6:
        raise ValueError("volume form must live on the same 6-space")


def k_endo(omega: AltForm, vol: VolumeForm) -> KEndo:
    """K(v) = -i_v Omega ^ Omega via i_u vol <-> u tensor vol."""
    _check_shape(omega, vol)
    c = vol.coefficient()
    cols = []
    for j in range(1, 7):
        ej = [Fraction(1 if i == j else 0) for i in range(1, 7)]
        w = -1 * wedge(contract(ej, omega), omega)
        col = []
        for i in range(1, 7):
            comp = tuple(k for k in range(1, 7) if k != i)
            col.append(((-1) ** (i - 1)) * w.terms.get(comp, Fraction(0)) / c)
        cols.append(col)
    return KEndo(LinearMap.from_columns(cols), vol)


def lambda_coeff(omega: AltForm, vol: VolumeForm) -> Lambda:
    """lambda(Omega) = tr(K^2)/6, exact, as a coefficient of vol^2."""
    K = k_endo(omega, vol).K
    k2 = mat_mul([list(r) for r in K.matrix], [list(r) for r in K.matrix])
    tr = sum((k2[i][i] for i in range(6)), Fraction(0))
    return Lambda(tr / 6, vol)


def classify6(omega: AltForm, vol: VolumeForm) -> OrbitClass6:
    _check_shape(omega, vol)
    lam = lambda_coeff(omega, vol).value
    if lam > 0:
        return OrbitClass6.O6_PLUS
    if lam < 0:
        return OrbitClass6.O6_MINUS
    return OrbitClass6.NOT_STABLE


def scaled_structure(omega: AltForm, vol: VolumeForm) -> ScaledStructure:
    """The exact pair (K, lambda) with K^2 = lambda Id verified."""
    ke = k_endo(omega, vol)
    lam = lambda_coeff(omega, vol)
    if lam.value == 0:
        raise NotStableError("form is not stable (lambda = 0)")
    k2 = mat_mul([list(r) for r in ke.K.matrix], [list(r) for r in ke.K.matrix])
    for i in range(6):
        for j in range(6):
            expect = lam.value if i == j else Fraction(0)
            if k2[i][j] != expect:
                raise ArithmeticError("K^2 != lambda Id; inconsistent input")
    return ScaledStructure(ke.K, lam)


@dataclass(frozen=True)
class HatForm:
    """hat(Omega) = numerator / sqrt(lam_abs); exact AltForm when the root is rational.

    The sign of `numerator` is normalized so that Omega ^ hat(Omega) is a
    positive multiple of the declared volume form.
    """

    numerator: AltForm
    lam_abs: Fraction
    form: AltForm | None

    def float_coeffs(self) -> dict:
        import math

        s = math.sqrt(float(self.lam_abs))
        return {idx: float(c) / s for idx, c in self.numerator.terms.items()}


def hat(omega: AltForm, vol: VolumeForm) -> HatForm:
    """The imaginary (resp. para-imaginary) partner of a stable Omega.

    Computed as Omega(K., K., K.) / |lambda|^{3/2}; only the single factor
    1/sqrt(|lambda|) can be irrational and it is kept symbolic.
    """
    ss = scaled_structure(omega, vol)
    lam_abs = abs(ss.lam.value)
    P = (Fraction(1) / lam_abs) * pullback(ss.K, omega)
    pairing = wedge(omega, P)
    r = vol.ratio(pairing)
    if r == 0:
        raise ArithmeticError("Omega ^ hat vanished on a stable form")
    if r < 0:
        P = -P
    s = sqrt_fraction(lam_abs)
    exact = (Fraction(1) / s) * P if s is not None else None
    return HatForm(P, lam_abs, exact)


@dataclass(frozen=True)
class Canon6:
    """Basis g with pullback(g, canonical form of the class) == Omega."""

    basis: LinearMap
    orbit: OrbitClass6
    scale: Fraction


def canonical_omega_plus() -> AltForm:
    return alt_form(6, 3, {(1, 2, 3): 1, (4, 5, 6): 1})


def canonical_omega_plus_4term() -> AltForm:
    """Re((e1+t e4)(e2+t e5)(e3+t e6)) over the paracomplex numbers."""
    return alt_form(6, 3, {(1, 2, 3): 1, (1, 5, 6): 1, (2, 4, 6): -1, (3, 4, 5): 1})


def canonical_omega_minus() -> AltForm:
    """Re((e1+i e4)(e2+i e5)(e3+i e6)); the paper's basis e5,e6,e7 is 4,5,6 here."""
    return alt_form(6, 3, {(1, 2, 3): 1, (1, 5, 6): -1, (2, 4, 6): 1, (3, 4, 5): -1})


def canonical_omega_minus_hat() -> AltForm:
    """Im((e1+i e4)(e2+i e5)(e3+i e6))."""
    return alt_form(6, 3, {(1, 2, 6): 1, (1, 3, 5): -1, (2, 3, 4): 1, (4, 5, 6): -1})


def sorted_vol(dim: int) -> VolumeForm:
    return VolumeForm.standard(dim)

def adapted_vol6() -> VolumeForm:
    """Orientation of the complex frame (e1+ie4, e2+ie5, e3+ie6): -e^{123456}."""
    return VolumeForm.standard(6, Fraction(-1))


def canonicalize6(omega: AltForm, vol: VolumeForm) -> Canon6:
    """Recover a basis putting Omega into its canonical form, exactly.

    Paracomplex case: split into the eigenspaces of L and normalize the two
    induced volume factors.  Complex case: compute the divisor covectors of
    the decomposable form Omega + sqrt(lambda)/|lambda| * numerator(hat) over
    the quadratic extension Q(sqrt(lambda)) and read the real frame off their
    real and imaginary parts.  No floating point is used; when sqrt(|lambda|)
    is irrational the returned matrix has QuadExt entries.
    """
    ss = scaled_structure(omega, vol)
    lam = ss.lam.value
    if lam > 0:
        return _canonicalize_para(omega, ss)
    return _canonicalize_complex(omega, ss, vol)


def _canonicalize_para(omega: AltForm, ss: ScaledStructure) -> Canon6:
    lam = ss.lam.value
    s = sqrt_fraction(lam)
    if s is None:
        s = QuadExt.root(lam)
    n = 6
    km = ss.K.matrix
    minus = nullspace([[km[i][j] + (s if i == j else 0 * s) for j in range(n)] for i in range(n)], n)
    plus = nullspace([[km[i][j] - (s if i == j else 0 * s) for j in range(n)] for i in range(n)], n)
    if len(minus) != 3 or len(plus) != 3:
        raise ArithmeticError("paracomplex eigenspaces are not 3-dimensional")
    c_minus = omega(*minus)
    c_plus = omega(*plus)
    if c_minus == 0 or c_plus == 0:
        raise ArithmeticError("Omega does not restrict to volume forms on the eigenspaces")
    minus[0] = [x / c_minus for x in minus[0]]
    plus[0] = [x / c_plus for x in plus[0]]
    h = LinearMap.from_columns([tuple(v) for v in (minus + plus)])
    g = h.inverse()
    if pullback(g, canonical_omega_plus()) != omega:
        raise ArithmeticError("paracomplex canonicalization failed the round trip")
    return Canon6(g, OrbitClass6.O6_PLUS, Fraction(1))


def _canonicalize_complex(omega: AltForm, ss: ScaledStructure, vol: VolumeForm) -> Canon6:
    lam = ss.lam.value  # negative
    lam_abs = -lam
    h = hat(omega, vol)
    w = QuadExt.root(lam)
    # alpha = Omega + i*hat = Omega + w/|lambda| * numerator over Q(sqrt(lambda))
    alpha_terms: dict = {}
    for idx in set(omega.terms) | set(h.numerator.terms):
        c = (QuadExt.of(omega.terms.get(idx, Fraction(0)), lam)
             + (w * (Fraction(1) / lam_abs)) * QuadExt.of(h.numerator.terms.get(idx, Fraction(0)), lam))
        if c != 0:
            alpha_terms[idx] = c
    alpha = AltForm(6, 3, alpha_terms)
    # divisor covectors of the decomposable alpha
    system = []
    keys = list(itertools.combinations(range(1, 7), 4))
    zero_f = QuadExt.of(0, lam)
    for key in keys:
        row = []
        for j in range(1, 7):
            wj = wedge(basis_form(6, j), alpha)
            row.append(wj.terms.get(key, zero_f))
        system.append(row)
    basis = nullspace(system, ncols=6)
    if len(basis) != 3:
        raise ArithmeticError("divisor space of alpha is not 3-dimensional")
    thetas = [alt_form(6, 1, {(j + 1,): c for j, c in enumerate(vec) if c != 0}) for vec in basis]
    prod = wedge(wedge(thetas[0], thetas[1]), thetas[2])
    key0 = next(iter(alpha.terms))
    ratio = alpha.terms[key0] / prod.terms[key0]
    thetas[0] = ratio * thetas[0]
    prod = wedge(wedge(thetas[0], thetas[1]), thetas[2])
    if prod != alpha:
        raise ArithmeticError("divisor normalization failed")
    # real frame rows: Re(theta_k) and sqrt(|lambda|) * (w-part of theta_k)
    s = sqrt_fraction(lam_abs)
    if s is None:
        s = QuadExt.root(lam_abs)
    rows_re, rows_im = [], []
    for th in thetas:
        re_row, im_row = [], []
        for j in range(1, 7):
            c = th.terms.get((j,), zero_f)
            if isinstance(c, QuadExt):
                re_row.append(c.a)
                im_row.append(s * c.b)
            else:
                re_row.append(Fraction(c))
                im_row.append(s * Fraction(0))
        rows_re.append(re_row)
        rows_im.append(im_row)
    g = LinearMap.from_rows(rows_re + rows_im)
    if pullback(g, canonical_omega_minus()) != omega:
        raise ArithmeticError("complex canonicalization failed the round trip")
    return Canon6(g, OrbitClass6.O6_MINUS, Fraction(1))


def stabilizer_dim(form: AltForm) -> int:
    """dim { A in gl(V) : sum over slots of form(.., A v_k, ..) = 0 }.

    Shared by the 6- and 7-dimensional classifications; the system is an
    exact nullspace of size C(n,3) x n^2.
    """
    if form.degree != 3 or form.dim not in (6, 7):
        raise ValueError("stabilizer dimension implemented for 3-forms in dim 6 or 7")
    n = form.dim
    rows = []
    for (i, j, k) in itertools.combinations(range(1, n + 1), 3):
        row = [Fraction(0)] * (n * n)
        for p in range(1, n + 1):
            # A e_i contributes a_{p i} * form(e_p, e_j, e_k), etc.
            row[(p - 1) * n + (i - 1)] += form.coeff((p, j, k))
            row[(p - 1) * n + (j - 1)] += form.coeff((i, p, k))
            row[(p - 1) * n + (k - 1)] += form.coeff((i, j, p))
        rows.append(row)
    return n * n - rank(rows)
