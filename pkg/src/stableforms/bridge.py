"""The dictionary between vector cross products and stable forms, both ways.

Down: contracting a 3-fold product against a space-like unit vector (or a
Lorentzian plane) produces the canonical stable forms on the complement.
Up: a stable 6-form plus a compatible inner product lifts to a stable
7-form ``Omega -+ beta ^ omega``; a stable 7-form induces a 2-fold cross
product, and wedging with the Hodge dual lifts it to a 3-fold one.

Orientation bookkeeping: with the plain sorted volume e^{1..7} on the
7-space, ``beta ^ phi + *phi`` is exactly the fundamental 4-form of X1 (the
minus sign gives X2), and the 6-dim complement of the beta-slot inherits
the adapted orientation -e^{1..6} used by the canonical displays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import stable6, stable7
from .exteralg import (AltForm, InnerProduct, LinearMap, VolumeForm, alt_form,
                       basis_form, contract, hodge_star, wedge)
from .linalg import inverse, mat_mul, mat_vec, nullspace
from .scalars import cbrt_fraction, sqrt_fraction
from .stable6 import NotStableError, ScaledStructure
from .vcp import CrossProduct


@dataclass(frozen=True)
class AdaptedFrame:
    """Unit vector (and optional plane partner) with an exact complement basis."""

    a: tuple
    b: tuple | None
    complement: tuple
    labels: tuple


def _unit_and_complement(cp3: CrossProduct, a: Sequence, b: Sequence | None = None) -> AdaptedFrame:
    a = tuple(Fraction(x) if isinstance(x, int) else x for x in a)
    gram = [list(r) for r in cp3.ip.gram]
    rows = [mat_vec(gram, list(a))]
    if b is not None:
        b = tuple(Fraction(x) if isinstance(x, int) else x for x in b)
        rows.append(mat_vec(gram, list(b)))
    comp = [tuple(v) for v in nullspace(rows, ncols=cp3.dim)]
    labels = tuple(i + 1 for i, v in enumerate(zip(*comp)) if any(x != 0 for x in v))
    return AdaptedFrame(a, b, tuple(comp), labels)


@dataclass(frozen=True)
class Stable7FromVCP:
    phi: AltForm
    frame: AdaptedFrame
    ip: InnerProduct  # restriction of the algebra inner product to the complement


def vcp_to_stable7(cp3: CrossProduct, a: Sequence) -> Stable7FromVCP:
    """phi(x,y,z) = -<X'(x,y,z), a> on the complement of a space-like unit a."""
    if cp3.fold != 3:
        raise ValueError("vcp_to_stable7 starts from a 3-fold product")
    frame = _unit_and_complement(cp3, a)
    na = cp3.ip.pair(frame.a, frame.a)
    if na == 0:
        raise ValueError("null vector rejected")
    if na != 1:
        raise ValueError("need a space-like unit vector, <a,a> = 1 exactly")
    comp = frame.complement
    import itertools

    terms = {}
    for i, j, k in itertools.combinations(range(7), 3):
        val = -cp3.ip.pair(cp3(comp[i], comp[j], comp[k]), frame.a)
        if val != 0:
            terms[(i + 1, j + 1, k + 1)] = val
    sub = InnerProduct.from_rows([[cp3.ip.pair(u, v) for v in comp] for u in comp])
    return Stable7FromVCP(alt_form(7, 3, terms), frame, sub)


@dataclass(frozen=True)
class Stable6FromVCP:
    omega: AltForm
    omega_hat: AltForm
    structure: ScaledStructure
    plane_structure: LinearMap   # J_P or L_P in complement coordinates
    plane_scale: Fraction        # s with K = s * J_P exactly; s^2 = |lambda|
    vol: VolumeForm              # orientation in which hat(omega) is the b-contraction
    frame: AdaptedFrame
    ip: InnerProduct


def vcp_to_stable6(cp3: CrossProduct, a: Sequence, b: Sequence) -> Stable6FromVCP:
    """Omega(x,y,z) = -<X'(x,y,z), a> on the complement of the plane {a, b}.

    The hat partner is +<X', b> for X1 and -<X', b> for X2; the induced
    (para)complex structure J_P v = -X'(a, b, v) is returned in complement
    coordinates and agrees with K/sqrt(|lambda|) in the returned orientation.
    """
    if cp3.fold != 3:
        raise ValueError("vcp_to_stable6 starts from a 3-fold product")
    frame = _unit_and_complement(cp3, a, b)
    na = cp3.ip.pair(frame.a, frame.a)
    nb = cp3.ip.pair(frame.b, frame.b)
    nab = cp3.ip.pair(frame.a, frame.b)
    # orthonormal plane in the definite case, Lorentzian in the split case
    expected_nb = Fraction(1) if cp3.ip.signature()[1] == 0 else Fraction(-1)
    if nab != 0 or na != 1 or nb != expected_nb:
        kind = "orthonormal" if expected_nb == 1 else "Lorentzian"
        raise ValueError(f"plane must be {kind}: <a,a>=1, <b,b>={expected_nb}, <a,b>=0")
    comp = frame.complement
    import itertools

    sign = Fraction(1) if cp3.variant.startswith("X1") else Fraction(-1)
    t_om, t_hat = {}, {}
    for i, j, k in itertools.combinations(range(6), 3):
        x = cp3(comp[i], comp[j], comp[k])
        v = -cp3.ip.pair(x, frame.a)
        h = sign * cp3.ip.pair(x, frame.b)
        if v != 0:
            t_om[(i + 1, j + 1, k + 1)] = v
        if h != 0:
            t_hat[(i + 1, j + 1, k + 1)] = h
    omega = alt_form(6, 3, t_om)
    omega_hat = alt_form(6, 3, t_hat)
    # J_P v = -X'(a, b, v) restricted to the complement, in complement coords
    gram = [[cp3.ip.pair(u, v) for v in comp] for u in comp]
    gram_inv = inverse(gram)
    big_gram = [list(r) for r in cp3.ip.gram]
    cols = []
    for v in comp:
        w = tuple(-c for c in cp3(frame.a, frame.b, v))
        loc = mat_vec(gram_inv, [sum((u[i] * s for i, s in enumerate(mat_vec(big_gram, list(w)))), Fraction(0)) for u in comp])
        cols.append(tuple(loc))
    jp = LinearMap.from_columns(cols)
    # orientation fixed by the hat: the normalized hat must equal the
    # branch-signed b-contraction (it does in exactly one orientation)
    vol = stable6.sorted_vol(6)
    if stable6.hat(omega, vol).form != omega_hat:
        vol = VolumeForm.standard(6, Fraction(-1))
        if stable6.hat(omega, vol).form != omega_hat:
            raise ArithmeticError("b-contraction does not match the hat in either orientation")
    ss = stable6.scaled_structure(omega, vol)
    c = _scalar_of(mat_mul([list(r) for r in ss.K.matrix], [list(r) for r in jp.matrix]))
    if c is None or c * c != abs(ss.lam.value):
        raise ArithmeticError("K is not a multiple of the plane structure")
    # K o J_P = -s Id with K = s J_P in the complex case; K o L_P = +s Id in the para case
    s = -c if ss.lam.value < 0 else c
    sub = InnerProduct.from_rows(gram)
    return Stable6FromVCP(omega, omega_hat, ss, jp, s, vol, frame, sub)


def _scalar_of(m) -> Fraction | None:
    n = len(m)
    c = m[0][0]
    for i in range(n):
        for j in range(n):
            if m[i][j] != (c if i == j else 0):
                return None
    return c


def synthesize_compatible_ip(ss: ScaledStructure) -> InnerProduct:
    """A nondegenerate inner product compatible with the structure of (K, lambda).

    Complex case: average the Euclidean metric over {Id, K/sqrt(-lambda)},
    scaled to stay rational: G = |lambda| Id + K^T K.  Paracomplex case: pair
    the two eigenspaces hyperbolically (eigenvectors pair to 1, eigenspaces
    are isotropic), which forces <Lx, Ly> = -<x, y>.
    """
    lam = ss.lam.value
    n = ss.K.dim_in
    km = [list(r) for r in ss.K.matrix]
    if lam < 0:
        kt = [list(r) for r in zip(*km)]
        g = mat_mul(kt, km)
        for i in range(n):
            g[i][i] = g[i][i] + abs(lam)
        return InnerProduct.from_rows(g)
    s = sqrt_fraction(lam)
    if s is None:
        raise NotStableError("paracomplex synthesis needs sqrt(lambda) rational")
    minus = ss.eigenspace(-1)
    plus = ss.eigenspace(+1)
    basis = [list(v) for v in minus + plus]
    h = [list(col) for col in zip(*basis)]
    hinv = inverse(h)
    pair = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(3):
        pair[i][3 + i] = Fraction(1)
        pair[3 + i][i] = Fraction(1)
    g = mat_mul([list(r) for r in zip(*hinv)], mat_mul(pair, hinv))
    return InnerProduct.from_rows(g)


@dataclass(frozen=True)
class Lift7:
    """Result of the dimension raise Omega -> phi = Omega -+ beta ^ omega."""

    phi: AltForm
    omega: AltForm               # the 2-form actually wedged into phi
    orbit: stable7.OrbitClass7
    normalization_exact: bool
    scale_float: float           # multiplier q with omega = q * <K x, y>
    residual: float              # | (1/4) Om ^ hat - (1/6) omega^3 | with float scale
    metric7: InnerProduct | None


def stable6_to_7(omega: AltForm, ip: InnerProduct, vol: VolumeForm | None = None) -> Lift7:
    """Append a unit direction and wedge in the Hermitian form of (K, ip).

    The inner product must be compatible: K^T G K = |lambda| G for the
    complex orbit and -|lambda| G for the paracomplex one (exact check).
    omega is rescaled so that (1/4) Omega ^ hat = (1/6) omega^3; the cube
    root is taken exactly when rational, otherwise in floating point with
    the exact unnormalized lift retained for classification.
    """
    vol = vol or stable6.sorted_vol(6)
    ss = stable6.scaled_structure(omega, vol)
    lam = ss.lam.value
    lam_abs = abs(lam)
    km = [list(r) for r in ss.K.matrix]
    g6 = [list(r) for r in ip.gram]
    ktgk = mat_mul([list(r) for r in zip(*km)], mat_mul(g6, km))
    target = lam_abs if lam < 0 else -lam_abs
    for i in range(6):
        for j in range(6):
            if ktgk[i][j] != target * g6[i][j]:
                raise ValueError("inner product is not compatible with the induced structure")
    w = mat_mul([list(r) for r in zip(*km)], g6)  # omega_s(x,y) = <Kx, y>
    omega_s = alt_form(6, 2, {(i + 1, j + 1): w[i][j] for i in range(6) for j in range(6) if i < j})
    h = stable6.hat(omega, vol)
    pair = wedge(omega, h.numerator)  # = Omega ^ hat * sqrt(|lambda|)
    w3 = wedge(wedge(omega_s, omega_s), omega_s)
    num = Fraction(1, 4) * vol.ratio(pair) * lam_abs
    den = Fraction(1, 6) * vol.ratio(w3)
    if den == 0:
        raise ArithmeticError("omega is degenerate")
    r = num / den  # q^3 with omega_final = q * omega_s
    q = cbrt_fraction(r)
    s = sqrt_fraction(lam_abs)
    exact = q is not None and s is not None
    q_float = float(r) ** (1.0 / 3.0) if r > 0 else -((-float(r)) ** (1.0 / 3.0))
    if exact:
        scale = q / s  # omega = (q/s) <K x, y>, fully rational
    else:
        scale = Fraction(1) if r > 0 else Fraction(-1)
    om7 = alt_form(7, 3, {tuple(idx): c for idx, c in omega.terms.items()})
    w7 = alt_form(7, 2, {idx: scale * c for idx, c in omega_s.terms.items()})
    beta = basis_form(7, 7)
    phi = om7 - wedge(beta, w7) if lam < 0 else om7 + wedge(beta, w7)
    orbit = stable7.classify7(phi, VolumeForm.standard(7))
    expected = stable7.OrbitClass7.O7_MINUS if lam < 0 else stable7.OrbitClass7.O7_PLUS
    if orbit != expected:
        raise ArithmeticError("lift landed in the wrong orbit")
    # residual of the normalization identity; exactly zero on the exact path
    s_f = float(lam_abs) ** 0.5
    if exact:
        res = 0.0
    else:
        res = abs(float(num) / s_f ** 3 - (q_float / s_f) ** 3 * float(vol.ratio(w3)) / 6.0)
    metric7 = None
    if exact:
        # omega = (q/s) <Kx, y> is the Hermitian form of the metric q*G
        g7 = [[q * g6[i][j] for j in range(6)] + [Fraction(0)] for i in range(6)]
        g7.append([Fraction(0)] * 6 + [Fraction(1) if lam < 0 else Fraction(-1)])
        metric7 = InnerProduct.from_rows(g7)
    return Lift7(phi, w7, orbit, exact, q_float / s_f, res, metric7)


def stable7_to_vcp(phi: AltForm, vol: VolumeForm | None = None) -> CrossProduct:
    """The induced 2-fold cross product <X(x,y), z> = phi(x,y,z)."""
    return stable7.cross_from_phi(phi, vol or VolumeForm.standard(7))


def lift_to_3fold(phi: AltForm, vol: VolumeForm | None = None, variant: str = "X1") -> CrossProduct:
    """Classical doubling to a 3-fold product on R + W.

    The fundamental 4-form is beta ^ phi + *phi for the X1-type lift and
    beta ^ phi - *phi for the X2-type one (beta dual to the new first
    coordinate); the product is read back through the direct-sum metric.
    Accepted on verified axioms rather than by construction.
    """
    vol = vol or VolumeForm.standard(7)
    gm = stable7.metric_from_phi(phi, vol)
    eps = Fraction(1) if variant == "X1" else Fraction(-1)
    star = hodge_star(phi, gm.ip, vol)
    shift = lambda f: alt_form(8, f.degree, {tuple(i + 1 for i in idx): c for idx, c in f.terms.items()})
    mu3 = wedge(basis_form(8, 1), shift(phi)) + eps * shift(star)
    g8 = [[Fraction(1)] + [Fraction(0)] * 7] + [[Fraction(0)] + list(r) for r in gm.ip.gram]
    ip8 = InnerProduct.from_rows(g8)
    g8_inv = inverse([list(r) for r in ip8.gram])

    def ev(x, y, z):
        one = contract(list(z), contract(list(y), contract(list(x), mu3)))
        cov = [one.terms.get((k,), Fraction(0)) for k in range(1, 9)]
        return tuple(mat_vec(g8_inv, cov))

    return CrossProduct(8, 3, f"LIFT-{variant}", ip8, ev)
