"""Invariant-frame calculus on structure-constant models.

A manifold enters only through a coframe e^1..e^n with declared exterior
derivatives d(e^k) (constant structure coefficients, d o d = 0 enforced) and
a diagonal +-1 metric.  That is enough to reproduce every circle-bundle and
Hitchin-functional computation of the source material at desk scale:
integration never appears, densities are reported per unit frame volume.

The circle-bundle coordinates put the fiber form rho last (index 7 over a
6-dimensional base); with that ordering the compatible orientation is
-e^{1..7}, under which the displayed Hodge dual Omega_2 ^ rho - omega^2/2
comes out exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import stable6
from .exteralg import (AltForm, InnerProduct, VolumeForm, alt_form, basis_form,
                       contract, form_inner, hodge_star, wedge)
from .scalars import rat


class PreconditionError(ValueError):
    """A model fails a structural precondition (reported, never ignored)."""


def _basis_vector(n: int, k: int) -> list:
    return [Fraction(1 if i == k else 0) for i in range(1, n + 1)]


@dataclass(frozen=True)
class FrameModel:
    """Coframe with structure constants: d(e^k) declared, d^2 = 0 checked."""

    dim: int
    metric: tuple
    d1: dict

    def __post_init__(self):
        if len(self.metric) != self.dim or any(m * m != 1 for m in self.metric):
            raise ValueError("metric must be a diagonal +-1 list of length dim")
        for k, f in self.d1.items():
            if not (1 <= k <= self.dim) or f.dim != self.dim or f.degree != 2:
                raise ValueError(f"d(e^{k}) must be a 2-form on the model space")
        for k in self.d1:
            dd = self.d(self.d1[k])
            if not dd.is_zero:
                raise PreconditionError(f"d^2 e^{k} != 0; structure constants violate Jacobi")

    def ip(self) -> InnerProduct:
        return InnerProduct.diagonal(list(self.metric))

    def vol(self) -> VolumeForm:
        return VolumeForm.standard(self.dim)

    def d(self, a: AltForm) -> AltForm:
        """Extend the declared coframe differentials by the Leibniz rule."""
        if a.dim != self.dim:
            raise ValueError("form does not live on this model")
        out = AltForm.zero(self.dim, a.degree + 1)
        for idx, c in a.terms.items():
            for pos, k in enumerate(idx):
                dk = self.d1.get(k)
                if dk is None or dk.is_zero:
                    continue
                rest = idx[:pos] + idx[pos + 1:]
                sign = Fraction((-1) ** pos) * c
                head = alt_form(self.dim, len(rest), {rest: 1}) if rest else None
                piece = sign * (wedge(dk, head) if head is not None else dk)
                out = out + piece
        return out

    def codifferential(self, a: AltForm, orientation: Fraction = Fraction(1)) -> AltForm:
        """delta = +-*d* ; only kernel membership is exported by the reports.

        Sign convention: (-1)^{n(p+1)+1} * sign(det g), the Riemannian choice
        making delta = -div on 1-forms.
        """
        n, p = self.dim, a.degree
        ip = self.ip()
        vol = VolumeForm.standard(self.dim, orientation)
        detg = 1
        for m in self.metric:
            detg *= m
        sign = Fraction((-1) ** (n * (p + 1) + 1) * detg)
        return sign * hodge_star(self.d(hodge_star(a, ip, vol)), ip, vol)

    def hodge(self, a: AltForm, orientation: Fraction = Fraction(1)) -> AltForm:
        return hodge_star(a, self.ip(), VolumeForm.standard(self.dim, orientation))

    def structure_constants(self) -> list:
        """c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k; from d e^k = -c."""
        n = self.dim
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for k in range(1, n + 1):
            dk = self.d1.get(k)
            if dk is None:
                continue
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i < j:
                        v = -dk.coeff((i, j))
                        c[i - 1][j - 1][k - 1] = v
                        c[j - 1][i - 1][k - 1] = -v
        return c


def flat_torus(dim: int, metric: Sequence[int] | None = None) -> FrameModel:
    return FrameModel(dim, tuple(metric) if metric else tuple([1] * dim), {})


def kodaira_thurston() -> FrameModel:
    """dim-4 nilmanifold frame: e^4 = dx4 + x2 dx3, so d e^4 = e^2 ^ e^3."""
    return FrameModel(4, (1, 1, 1, 1), {4: alt_form(4, 2, {(2, 3): 1})})


def iwasawa_model() -> FrameModel:
    """Complex-Heisenberg frame: d(e^5 + i e^6) = (e^1 + i e^2) ^ (e^3 + i e^4).

    Both imaginary-fiber coframes are non-closed; this is what makes the
    holomorphic product form closed.
    """
    return FrameModel(6, (1,) * 6, {
        5: alt_form(6, 2, {(1, 3): 1, (2, 4): -1}),
        6: alt_form(6, 2, {(1, 4): 1, (2, 3): 1}),
    })


def product_t3_model() -> FrameModel:
    return flat_torus(6)


@dataclass(frozen=True)
class CircleBundleModel:
    """Unit circle bundle over a 6-dim base: total coframe (e^1..e^6, rho=e^7)."""

    base: FrameModel
    F: AltForm
    total: FrameModel


def make_circle_bundle(base: FrameModel, F: AltForm) -> CircleBundleModel:
    if base.dim != 6 or any(m != 1 for m in base.metric):
        raise ValueError("circle bundles are built over Riemannian 6-dim bases")
    if F.dim != 6 or F.degree != 2:
        raise ValueError("curvature must be a 2-form on the base")
    if not base.d(F).is_zero:
        raise PreconditionError("curvature 2-form must be closed (dF = 0)")
    d1 = {k: _embed(f, 7) for k, f in base.d1.items()}
    d1[7] = _embed(F, 7)
    total = FrameModel(7, (1,) * 7, d1)
    return CircleBundleModel(base, F, total)


def _embed(f: AltForm, dim: int) -> AltForm:
    return alt_form(dim, f.degree, {idx: c for idx, c in f.terms.items()})


@dataclass(frozen=True)
class SU3Data:
    """Adapted SU(3) forms on the base: omega, Omega1, Omega2.

    Invariants checked: omega ^ Omega_i = 0, the constant-dilaton
    normalization (1/4) Omega1 ^ Omega2 = (1/6) omega^3, and omega^3 != 0.
    """

    omega: AltForm
    Omega1: AltForm
    Omega2: AltForm

    def __post_init__(self):
        w3 = wedge(wedge(self.omega, self.omega), self.omega)
        if w3.is_zero:
            raise PreconditionError("omega is degenerate")
        if not wedge(self.omega, self.Omega1).is_zero or not wedge(self.omega, self.Omega2).is_zero:
            raise PreconditionError("omega ^ Omega_i != 0; forms are not type-compatible")
        lhs = Fraction(1, 4) * wedge(self.Omega1, self.Omega2)
        rhs = Fraction(1, 6) * w3
        if lhs != rhs:
            raise PreconditionError("normalization (1/4)Omega1^Omega2 = (1/6)omega^3 fails")

    def complex_structure(self, metric: InnerProduct):
        """J = -G^{-1} W from omega(x,y) = <J x, y>; J^2 = -Id verified."""
        from .linalg import inverse, mat_mul

        n = self.omega.dim
        w = [[self.omega.coeff((i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
        ginv = inverse([list(r) for r in metric.gram])
        j = mat_mul(ginv, [[-x for x in row] for row in w])
        j2 = mat_mul(j, j)
        for i in range(n):
            for k in range(n):
                if j2[i][k] != (Fraction(-1) if i == k else 0):
                    raise PreconditionError("omega and the metric do not induce J^2 = -Id")
        return j


def standard_su3() -> SU3Data:
    return SU3Data(
        omega=alt_form(6, 2, {(1, 4): 1, (2, 5): 1, (3, 6): 1}),
        Omega1=stable6.canonical_omega_minus(),
        Omega2=stable6.canonical_omega_minus_hat(),
    )


BUNDLE_ORIENTATION = Fraction(-1)  # adapted orientation of the standard triple


def bundle_orientation(su3: SU3Data) -> Fraction:
    """Sign of (omega^3/6) ^ rho against e^{1..7}: the adapted orientation.

    For the standard complex pairs (1,4),(2,5),(3,6) this is -1; pairings
    already in sorted order, like (1,2),(3,4),(5,6), give +1.
    """
    w3 = wedge(wedge(su3.omega, su3.omega), su3.omega)
    c = w3.terms.get(tuple(range(1, 7)), Fraction(0))
    if c == 0:
        raise PreconditionError("omega is degenerate")
    return Fraction(1) if c > 0 else Fraction(-1)


def _check_special_balanced(cb: CircleBundleModel, su3: SU3Data):
    base = cb.base
    failing = []
    if not base.d(su3.Omega1).is_zero:
        failing.append("d Omega1 != 0")
    if not base.d(su3.Omega2).is_zero:
        failing.append("d Omega2 != 0")
    if not base.d(wedge(su3.omega, su3.omega)).is_zero:
        failing.append("d(omega^2) != 0")
    j = su3.complex_structure(base.ip())
    n = 6
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            ji = [j[r - 1][i - 1] for r in range(1, n + 1)]
            jk = [j[r - 1][k - 1] for r in range(1, n + 1)]
            if cb.F(ji, jk) != cb.F(_basis_vector(n, i), _basis_vector(n, k)):
                failing.append("curvature is not of type (1,1)")
                break
        else:
            continue
        break
    if failing:
        raise PreconditionError("; ".join(failing))


def build_g2(cb: CircleBundleModel, su3: SU3Data) -> tuple[AltForm, AltForm]:
    """phi = Omega1 - rho ^ omega and its Hodge dual Omega2 ^ rho - omega^2/2.

    The dual is also computed independently through hodge_star on the
    product metric and must agree exactly.
    """
    _check_special_balanced(cb, su3)
    rho = basis_form(7, 7)
    phi = _embed(su3.Omega1, 7) - wedge(rho, _embed(su3.omega, 7))
    w7 = _embed(su3.omega, 7)
    star_display = wedge(_embed(su3.Omega2, 7), rho) - Fraction(1, 2) * wedge(w7, w7)
    star_computed = cb.total.hodge(phi, bundle_orientation(su3))
    if star_computed != star_display:
        raise PreconditionError("su3 data is not metric-adapted: *phi mismatch")
    return phi, star_display


@dataclass(frozen=True)
class ClassReport:
    parallel: bool
    W1_nearly: bool
    W2_almost: bool
    W3: bool
    semi_parallel: bool
    witnesses: dict

    def as_dict(self) -> dict:
        return {
            "parallel": self.parallel,
            "W1_nearly": self.W1_nearly,
            "W2_almost": self.W2_almost,
            "W3": self.W3,
            "semi_parallel": self.semi_parallel,
        }


def classify_g2(cb: CircleBundleModel, su3: SU3Data) -> ClassReport:
    """Torsion-class predicates of the bundle structure, all verified exactly.

    The three W3 tests <F, omega> = 0, F ^ omega^2 = 0 and d phi ^ phi = 0
    are evaluated independently and must agree; semi-parallelness
    (delta phi = 0) is re-proved on every instance.
    """
    phi, star_phi = build_g2(cb, su3)
    total = cb.total
    dphi = total.d(phi)
    orient = bundle_orientation(su3)
    delta_phi = total.codifferential(phi, orient)
    dphi_phi = wedge(dphi, phi)
    f_dot_omega = form_inner(cb.F, su3.omega, cb.base.ip())
    f_w2 = wedge(cb.F, wedge(su3.omega, su3.omega))
    if not delta_phi.is_zero:
        raise ArithmeticError("delta phi != 0 on a special balanced base; internal error")
    w3_a = f_dot_omega == 0
    w3_b = f_w2.is_zero
    w3_c = dphi_phi.is_zero
    if not (w3_a == w3_b == w3_c):
        raise ArithmeticError("the three primitivity tests disagree; internal error")
    npr = nabla_phi(cb, su3)
    parallel = all(df.is_zero for df in npr.derivatives.values())
    w2 = dphi.is_zero
    if w2 != (cb.F.is_zero and cb.base.d(su3.omega).is_zero):
        raise ArithmeticError("dphi = 0 is not equivalent to F = 0 and d omega = 0; internal error")
    torsion = -1 * total.hodge(dphi, orient)
    delta_t = total.codifferential(torsion, orient)
    report = ClassReport(
        parallel=parallel,
        W1_nearly=npr.nearly_parallel,
        W2_almost=w2,
        W3=(delta_phi.is_zero and w3_c),
        semi_parallel=delta_phi.is_zero,
        witnesses={
            "dphi": dphi,
            "delta_phi": delta_phi,
            "dphi_wedge_phi": dphi_phi,
            "F_dot_omega": f_dot_omega,
            "torsion": torsion,
            "delta_torsion": delta_t,
        },
    )
    if report.parallel and not (report.W1_nearly and report.W2_almost and report.W3
                                and report.semi_parallel):
        raise ArithmeticError("implication lattice violated; internal error")
    return report


@dataclass(frozen=True)
class ConnectionTable:
    """Levi-Civita data: base Gamma[i][j][k] and the lifted 7x7x7 table.

    Index 7 of the lifted table is the fiber direction; entries are the
    coefficients of nabla_{f_i} f_j in the frame (e_1..e_6, d_theta).
    """

    base_gamma: tuple
    lifted: tuple


def covariant_table(cb: CircleBundleModel) -> ConnectionTable:
    base = cb.base
    n = 6
    eps = base.metric
    c = base.structure_constants()
    gamma = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                val = (c[i][j][k] * eps[k] - c[j][k][i] * eps[i] + c[k][i][j] * eps[j]) / 2
                gamma[i][j][k] = val / eps[k]
    f = [[cb.F(_basis_vector(n, i), _basis_vector(n, j)) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    lifted = [[[Fraction(0)] * 7 for _ in range(7)] for _ in range(7)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lifted[i][j][k] = gamma[i][j][k]
            lifted[i][j][6] = -f[i][j] / 2
        for j in range(n):
            lifted[i][6][j] = f[i][j] / 2
            lifted[6][i][j] = f[i][j] / 2
    return ConnectionTable(
        tuple(tuple(tuple(r) for r in m) for m in gamma),
        tuple(tuple(tuple(r) for r in m) for m in lifted),
    )


@dataclass(frozen=True)
class NablaPhiReport:
    derivatives: dict          # direction index 1..7 -> AltForm (7-dim)
    theta_display_ok: bool     # nabla_theta phi == (1/2) <F, omega> Omega2
    pairing: Fraction          # <nabla phi, *phi>
    pairing_identity_ok: bool  # == (1/2) <F, omega> |i_theta *phi|^2
    nearly_parallel: bool
    experimental: bool         # True when the base is not flat


def nabla_phi(cb: CircleBundleModel, su3: SU3Data) -> NablaPhiReport:
    """Covariant derivatives of phi in all 7 frame directions, exactly.

    For flat bases this exercises the displayed connection identities; a
    nonflat base is computed with its Koszul coefficients but flagged
    experimental.
    """
    _check_special_balanced(cb, su3)
    table = covariant_table(cb)
    flat = all(x == 0 for m in table.base_gamma for r in m for x in r)
    rho = basis_form(7, 7)
    phi = _embed(su3.Omega1, 7) - wedge(rho, _embed(su3.omega, 7))
    star_phi = wedge(_embed(su3.Omega2, 7), rho) - Fraction(1, 2) * wedge(_embed(su3.omega, 7), _embed(su3.omega, 7))
    n = 6
    f = [[cb.F(_basis_vector(n, i), _basis_vector(n, j)) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    gamma = table.base_gamma

    def coframe_derivative(u: int, j: int) -> AltForm:
        # nabla_{f_u} e^j in the 7-dim coframe, u,j in 1..7 (7 = fiber)
        out = {}
        if u <= 6:
            if j <= 6:
                for k in range(1, 7):
                    g = -gamma[u - 1][k - 1][j - 1]
                    if g != 0:
                        out[(k,)] = out.get((k,), Fraction(0)) + g
                if f[u - 1][j - 1] != 0:
                    out[(7,)] = -f[u - 1][j - 1] / 2
            else:
                for k in range(1, 7):
                    if f[u - 1][k - 1] != 0:
                        out[(k,)] = f[u - 1][k - 1] / 2
        else:
            if j <= 6:
                for k in range(1, 7):
                    if f[j - 1][k - 1] != 0:
                        out[(k,)] = f[j - 1][k - 1] / 2
        return alt_form(7, 1, out)

    def derive(a: AltForm, u: int) -> AltForm:
        out = AltForm.zero(7, a.degree)
        for idx, c in a.terms.items():
            for pos, k in enumerate(idx):
                dk = coframe_derivative(u, k)
                if dk.is_zero:
                    continue
                before = idx[:pos]
                after = idx[pos + 1:]
                piece = alt_form(7, len(before), {before: 1}) if before else None
                tail = alt_form(7, len(after), {after: 1}) if after else None
                term = dk
                if piece is not None:
                    term = wedge(piece, term)
                if tail is not None:
                    term = wedge(term, tail)
                out = out + c * term
        return out

    derivatives = {u: derive(phi, u) for u in range(1, 8)}
    f_dot_omega = form_inner(cb.F, su3.omega, cb.base.ip())
    theta_expected = (f_dot_omega / 2) * _embed(su3.Omega2, 7)
    theta_ok = derivatives[7] == theta_expected
    ip7 = cb.total.ip()
    pairing = Fraction(0)
    for u in range(1, 8):
        iu = contract(_basis_vector(7, u), star_phi)
        pairing += form_inner(derivatives[u], iu, ip7)
    itheta = contract(_basis_vector(7, 7), star_phi)
    norm2 = form_inner(itheta, itheta, ip7)
    identity_ok = pairing == (f_dot_omega / 2) * norm2
    nearly = True
    for u in range(1, 8):
        for v in range(u, 8):
            s = contract(_basis_vector(7, v), derivatives[u]) + contract(_basis_vector(7, u), derivatives[v])
            if not s.is_zero:
                nearly = False
                break
        if not nearly:
            break
    return NablaPhiReport(derivatives, theta_ok, pairing, identity_ok, nearly, not flat)


@dataclass(frozen=True)
class HitchinValue:
    lam: Fraction
    density: float


def hitchin_eval(model: FrameModel, omega: AltForm) -> HitchinValue:
    """sqrt(|lambda|) per unit frame volume, with the exact lambda alongside."""
    if model.dim != 6:
        raise ValueError("the functional is defined on 6-dimensional models")
    lam = stable6.lambda_coeff(omega, model.vol()).value
    return HitchinValue(lam, math.sqrt(abs(float(lam))))


def hitchin_variation(omega: AltForm, omega_dot: AltForm, vol: VolumeForm,
                      h: Fraction = Fraction(1, 100000)) -> tuple[float, float]:
    """(central finite difference of sqrt|lambda|, pairing hat ^ dOmega / vol).

    The difference quotient is evaluated on exact rationals before the only
    float conversion, so its error is purely the O(h^2) truncation term.
    """
    lam0 = stable6.lambda_coeff(omega, vol).value
    if lam0 == 0:
        raise stable6.NotStableError("variation needs a stable base form")
    lam_p = stable6.lambda_coeff(omega + h * omega_dot, vol).value
    lam_m = stable6.lambda_coeff(omega - h * omega_dot, vol).value
    fd = (math.sqrt(abs(float(lam_p))) - math.sqrt(abs(float(lam_m)))) / (2 * float(h))
    hat = stable6.hat(omega, vol)
    pairing_num = vol.ratio(wedge(hat.numerator, omega_dot))
    pairing = float(pairing_num) / math.sqrt(float(hat.lam_abs))
    return fd, pairing


HITCHIN_VARIATION_CONSTANT = -1.0  # fd derivative = c * (hat ^ dOmega)/vol; oracle-determined


@dataclass(frozen=True)
class CriticalReport:
    closed: bool
    cocritical: bool
    critical: bool
    orbit: stable6.OrbitClass6


def critical_point_check(model: FrameModel, omega: AltForm) -> CriticalReport:
    """closed: d Omega = 0; cocritical: d hat(Omega) = 0; critical: both.

    Closedness of the hat is decided on its exact rational numerator (the
    scalar 1/sqrt|lambda| cannot affect it).
    """
    if model.dim != 6:
        raise ValueError("critical points live on 6-dimensional models")
    orbit = stable6.classify6(omega, model.vol())
    if orbit == stable6.OrbitClass6.NOT_STABLE:
        raise stable6.NotStableError("critical point check needs a stable form")
    closed = model.d(omega).is_zero
    hat = stable6.hat(omega, model.vol())
    cocritical = model.d(hat.numerator).is_zero
    return CriticalReport(closed, cocritical, closed and cocritical, orbit)


def para_cy_check(model: FrameModel, alpha: AltForm, beta: AltForm,
                  omega: AltForm | None = None) -> dict:
    """The decomposable-pair conditions, plus the Kahler relations when omega is given."""
    n = model.dim
    if n % 2 != 0:
        raise ValueError("para-CY pairs need an even-dimensional model")
    half = n // 2
    if alpha.degree != half or beta.degree != half:
        raise ValueError(f"alpha and beta must have degree {half}")
    from .exteralg import is_decomposable

    report = {
        "d_alpha_zero": model.d(alpha).is_zero,
        "d_beta_zero": model.d(beta).is_zero,
        "alpha_decomposable": is_decomposable(alpha),
        "beta_decomposable": is_decomposable(beta),
        "alpha_wedge_beta_nonzero": not wedge(alpha, beta).is_zero,
    }
    if omega is not None:
        if omega.degree != 2:
            raise ValueError("omega must be a 2-form")
        report.update({
            "d_omega_zero": model.d(omega).is_zero,
            "alpha_wedge_omega_zero": wedge(alpha, omega).is_zero,
            "beta_wedge_omega_zero": wedge(beta, omega).is_zero,
        })
    report["all_pass"] = all(v for k, v in report.items())
    return report
