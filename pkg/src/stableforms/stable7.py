"""Classification of 3-forms on a 7-space via the quadratic form Q.

``Q(v, w) = i_v phi ^ i_w phi ^ phi`` read against a declared volume form is
an exact symmetric matrix B.  Nondegeneracy plus the absolute signature (7
or 1, computed by exact rational inertia) decides the orbit.  Only the ninth
root in the metric normalization is floating point; B itself, the orbit
decision and the induced cross product stay exact whenever the scale is.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .exteralg import AltForm, InnerProduct, LinearMap, VolumeForm, alt_form, contract, wedge
from .linalg import gram_schmidt_floats, inertia, inverse, mat_vec
from .stable6 import NotStableError, stabilizer_dim  # noqa: F401  (shared operation)
from .vcp import CrossProduct


class OrbitClass7(enum.Enum):
    O7_MINUS = "O7_MINUS"  # absolute signature 7, compact stabilizer
    O7_PLUS = "O7_PLUS"    # absolute signature 1, split stabilizer
    NOT_STABLE = "NOT_STABLE"


@dataclass(frozen=True)
class QForm:
    B: tuple
    vol: VolumeForm

    def signature(self) -> tuple[int, int, int]:
        return inertia([list(r) for r in self.B])


def _check_shape(phi: AltForm, vol: VolumeForm):
    if phi.dim != 7 or phi.degree != 3:
        raise ValueError("expected a 3-form on a 7-dimensional space")
    if vol.form.dim != 7:
        raise ValueError("volume form must live on the same 7-space")


def q_form(phi: AltForm, vol: VolumeForm) -> QForm:
    """B[i][j] vol = i_{e_i} phi ^ i_{e_j} phi ^ phi, exact and symmetric."""
    _check_shape(phi, vol)
    c = vol.coefficient()
    full = tuple(range(1, 8))
    contractions = []
    for i in range(1, 8):
        ei = [Fraction(1 if k == i else 0) for k in range(1, 8)]
        contractions.append(contract(ei, phi))
    rows = []
    for i in range(7):
        row = []
        for j in range(7):
            top = wedge(wedge(contractions[i], contractions[j]), phi)
            row.append(top.terms.get(full, Fraction(0)) / c)
        rows.append(tuple(row))
    b = tuple(rows)
    for i in range(7):
        for j in range(i):
            if b[i][j] != b[j][i]:
                raise ArithmeticError("Q form came out asymmetric")
    return QForm(b, vol)


def classify7(phi: AltForm, vol: VolumeForm) -> OrbitClass7:
    pos, neg, zero = q_form(phi, vol).signature()
    if zero:
        return OrbitClass7.NOT_STABLE
    a = abs(pos - neg)
    if a == 7:
        return OrbitClass7.O7_MINUS
    if a == 1:
        return OrbitClass7.O7_PLUS
    return OrbitClass7.NOT_STABLE


@dataclass(frozen=True)
class G2Metric:
    """Metric induced by a stable phi: g = B/(6s), s^9 = |det B| / 6^7.

    `ip` carries exact entries (the float scale is converted exactly), so
    downstream exact operations can consume it; `scale` records s.  The
    overall sign is pinned by the known signatures: positive definite on
    O7_MINUS and three positive directions (3,4) on O7_PLUS.
    """

    ip: InnerProduct
    scale: float
    exact_B: QForm
    orbit: OrbitClass7


def metric_from_phi(phi: AltForm, vol: VolumeForm) -> G2Metric:
    qf = q_form(phi, vol)
    orbit = classify7(phi, vol)
    if orbit == OrbitClass7.NOT_STABLE:
        raise NotStableError("form is not stable (Q degenerate or wrong signature)")
    from .linalg import det as _det

    b = [list(r) for r in qf.B]
    dB = _det(b)
    s9 = abs(dB) / Fraction(6) ** 7
    s = float(s9) ** (1.0 / 9.0)
    # exact when s9 is a perfect 9th power; try squares of cubes first
    s_exact = _ninth_root(s9)
    scale = s_exact if s_exact is not None else Fraction(s)
    g = [[x / (6 * scale) for x in row] for row in b]
    pos, neg, _ = inertia(g)
    if orbit == OrbitClass7.O7_MINUS and neg == 7:
        g = [[-x for x in row] for row in g]
    elif orbit == OrbitClass7.O7_PLUS and pos == 4:
        g = [[-x for x in row] for row in g]
    return G2Metric(InnerProduct.from_rows(g), float(scale), qf, orbit)


def _ninth_root(x: Fraction) -> Fraction | None:
    from .scalars import cbrt_fraction

    c = cbrt_fraction(x)
    if c is None:
        return None
    return cbrt_fraction(c)


def cross_from_phi(phi: AltForm, vol: VolumeForm) -> CrossProduct:
    """2-fold product with <X(x,y), z> = phi(x,y,z) for the induced metric."""
    gm = metric_from_phi(phi, vol)
    ginv = inverse([list(r) for r in gm.ip.gram])

    def ev(x, y):
        one_form = contract(list(y), contract(list(x), phi))
        cov = [one_form.terms.get((k,), Fraction(0)) for k in range(1, 8)]
        return tuple(mat_vec(ginv, cov))

    return CrossProduct(7, 2, "PHI", gm.ip, ev)


def canonical_phi_minus() -> AltForm:
    return alt_form(7, 3, {(1, 2, 3): 1, (1, 6, 7): -1, (2, 5, 7): 1, (3, 5, 6): -1,
                           (1, 4, 5): 1, (2, 4, 6): 1, (3, 4, 7): 1})


def canonical_phi_plus() -> AltForm:
    return alt_form(7, 3, {(1, 2, 3): 1, (1, 6, 7): 1, (2, 5, 7): -1, (3, 5, 6): 1,
                           (1, 4, 5): -1, (2, 4, 6): -1, (3, 4, 7): -1})


@dataclass(frozen=True)
class Canon7:
    basis: list          # float 7x7 matrix, rows
    residual: float


def canonicalize7(phi: AltForm, vol: VolumeForm) -> Canon7:
    """Float-level canonical basis for the O7_MINUS orbit.

    Orthonormalize for the induced metric, then build a Cayley frame from
    the induced cross product: u3 = X(u1,u2), u5 = X(u1,u4), u6 = X(u2,u4),
    u7 = X(u3,u4).  In such a frame phi takes the canonical coefficients, so
    the inverse frame matrix is the required basis.  Residual is the max
    absolute coefficient error of the round trip.
    """
    orbit = classify7(phi, vol)
    if orbit != OrbitClass7.O7_MINUS:
        raise NotStableError("canonicalize7 supports the O7_MINUS orbit only")
    gm = metric_from_phi(phi, vol)
    gram = [[float(x) for x in row] for row in gm.ip.gram]
    frame = gram_schmidt_floats(gram)
    phif = {idx: float(c) for idx, c in phi.terms.items()}

    def ev_form(vecs) -> float:
        total = 0.0
        for idx, c in phif.items():
            m = [[vecs[col][row - 1] for col in range(3)] for row in idx]
            d = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                 - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                 + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
            total += c * d
        return total

    ginv = [[float(x) for x in row] for row in inverse([list(r) for r in gm.ip.gram])]

    def cross(x, y):
        cov = []
        for k in range(1, 8):
            ek = [1.0 if i == k else 0.0 for i in range(1, 8)]
            cov.append(ev_form([x, y, ek]))
        return [sum(ginv[i][j] * cov[j] for j in range(7)) for i in range(7)]

    def dot(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(7) for j in range(7))

    def normalize(x):
        n = math.sqrt(dot(x, x))
        return [c / n for c in x]

    u1, u2 = frame[0], frame[1]
    u3 = normalize(cross(u1, u2))
    span = [u1, u2, u3]
    # best remaining frame vector orthogonal to span(u1,u2,u3)
    best, best_res = None, -1.0
    for cand in frame[2:]:
        v = list(cand)
        for u in span:
            c = dot(v, u)
            v = [a - c * b for a, b in zip(v, u)]
        r = dot(v, v)
        if r > best_res:
            best, best_res = v, r
    u4 = normalize(best)
    u5 = normalize(cross(u1, u4))
    u6 = normalize(cross(u2, u4))
    u7 = normalize(cross(u3, u4))
    cols = [u1, u2, u3, u4, u5, u6, u7]
    m = [[cols[j][i] for j in range(7)] for i in range(7)]  # columns are the frame
    basis = _float_inverse(m)
    # residual: pullback(basis, phi_canonical) vs phi
    can = {idx: float(c) for idx, c in canonical_phi_minus().terms.items()}
    import itertools as _it

    residual = 0.0
    for jdx in _it.combinations(range(1, 8), 3):
        total = 0.0
        for idx, c in can.items():
            minor = [[basis[i - 1][j - 1] for j in jdx] for i in idx]
            d = (minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
                 - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
                 + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]))
            total += c * d
        residual = max(residual, abs(total - float(phi.coeff(jdx))))
    return Canon7(basis, residual)


def _float_inverse(m: list) -> list:
    n = len(m)
    a = [row[:] + [1.0 if i == j else 0.0 for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(a[r][c]))
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
