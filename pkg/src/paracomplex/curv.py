"""Connections and curvature on a patch: Levi-Civita, the metric connection
with totally skew torsion determined by a 2-form potential, curvature
operator with its scalar/traceless-Ricci/Weyl decomposition, the (j,l,r)
curvature residual, pointwise twistor and reflector Nijenhuis evaluators,
and the dim-4 integrability verdicts.

Curvature sign convention.  The curvature tensor is
R(X, Y) = D_{[X,Y]} - [D_X, D_Y] (opposite to the common one); with this
choice the operator fixed by g(R(X^Y), Z^T) = g(R(X,Y)Z, T) satisfies
R = c Id on Lambda^2 for the conformal model of constant sectional
curvature c, the Ricci tensor taken as Ricci(X, Y) = trace(Z -> R(X, Z) Y)
equals 3 c g, and s = 12 c.  The brute-force sectional-curvature oracle in
the test suite pins these signs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from paracomplex.exact import PoleAtPoint, RatFunc, parse_ratfunc
from paracomplex.gpx import (
    GenVector,
    GeneralizedMetric,
    assemble,
    gen_pairing,
    p_epsilon,
    vertical_endo,
)
from paracomplex.linalg import (
    Bilinear,
    Endo,
    TwoVector,
    basis_vec,
    hodge_star,
    lambda2_inner,
    mat_det,
    mat_eq,
    mat_from_columns,
    mat_identity,
    mat_inv,
    mat_is_zero,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    mat_zero,
    transpose,
    vec_add,
    vec_scale,
    wedge_pairs,
)
from paracomplex.para import (
    fiber_tangent_basis,
    random_compatible_structure,
)
from paracomplex.patch import KForm, ext_deriv

WEDGE4 = wedge_pairs(4)


class DegenerateMetric(ValueError):
    """The metric field is degenerate (or no rational orthonormal basis exists)."""


class DimNot4(ValueError):
    """The decomposition machinery requires a 4-dimensional patch."""


# -- metric models -------------------------------------------------------------


@dataclass
class MetricModel:
    """Metric field with an optional symbolic oriented orthonormal frame
    (norms 1, 1, -1, -1); the frame makes the Hodge machinery rational."""

    name: str
    nvars: int
    g: list  # RatFunc matrix
    onb: list | None = None  # columns: four RatFunc vectors

    def g_at(self, point) -> Bilinear:
        return Bilinear([[c.eval_at(point) for c in row] for row in self.g])

    def onb_at(self, point, orientation: int = +1) -> list:
        if self.onb is not None:
            cols = [[c.eval_at(point) for c in col] for col in self.onb]
        else:
            cols = onb_search(self.g_at(point))
        if mat_det(mat_from_columns(cols)) < 0:
            cols = [cols[0], cols[1], cols[2], vec_scale(Fraction(-1), cols[3])]
        if orientation < 0:
            cols = [cols[0], cols[1], cols[3], cols[2]]
        return cols


def _const_mat(entries, nvars=4):
    return [[RatFunc.const(nvars, v) for v in row] for row in entries]


def flat_metric(nvars: int = 4) -> MetricModel:
    g = _const_mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], nvars)
    onb = [[RatFunc.const(nvars, 1 if i == j else 0) for i in range(nvars)]
           for j in range(nvars)]
    return MetricModel("flat", nvars, g, onb)


def constcurv_metric(c) -> MetricModel:
    """Conformal model of constant sectional curvature c on the neutral patch:
    g = phi^{-2} diag(1,1,-1,-1) with phi = 1 + (c/4)(x1^2 + x2^2 - x3^2 - x4^2)."""
    n = 4
    c = Fraction(c)
    x = [RatFunc.var(i, n) for i in range(n)]
    phi = RatFunc.const(n, 1) + (x[0] ** 2 + x[1] ** 2 - x[2] ** 2 - x[3] ** 2) * Fraction(c, 4)
    inv2 = RatFunc.one(n) / (phi * phi)
    signs = [1, 1, -1, -1]
    g = [[inv2 * signs[i] if i == j else RatFunc.zero(n) for j in range(n)] for i in range(n)]
    onb = [[phi if i == j else RatFunc.zero(n) for i in range(n)] for j in range(n)]
    return MetricModel(f"constcurv:{c}", n, g, onb)


def ppwave_metric(f: RatFunc) -> MetricModel:
    """Plane-fronted wave on the neutral patch:
    g = 2 dx1 dx4 + 2 dx2 dx3 + f(x1, x2) dx1^2.

    Ricci flat for every f; the curvature is carried by d^2 f / dx2^2 alone
    and sits entirely in the anti-self-dual half (W+ = 0) for the reference
    coordinate orientation, which makes the family the natural source of
    ++-integrable, non-conformally-flat examples."""
    n = 4
    z, o = RatFunc.zero(n), RatFunc.one(n)
    g = [[f, z, z, o], [z, z, o, z], [z, o, z, z], [o, z, z, z]]
    half = Fraction(1, 2)
    onb = [
        [o, z, z, (1 - f) * half],
        [z, o, RatFunc.const(n, half), z],
        [o, z, z, -(1 + f) * half],
        [z, o, RatFunc.const(n, -half), z],
    ]
    return MetricModel("ppwave", n, g, onb)


def metric_from_strings(rows: list, variables: list, onb_rows: list | None = None,
                        name: str = "file") -> MetricModel:
    g = [[parse_ratfunc(s, variables) for s in row] for row in rows]
    onb = None
    if onb_rows is not None:
        onb = [[parse_ratfunc(s, variables) for s in col] for col in onb_rows]
    return MetricModel(name, len(variables), g, onb)


def _is_square(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = int(num ** Fraction(1, 2)) if num else 0
    while rn * rn < num:
        rn += 1
    rd = int(den ** Fraction(1, 2))
    while rd * rd < den:
        rd += 1
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def onb_search(g: Bilinear) -> list:
    """Search for a rational orthonormal basis with norms (1, 1, -1, -1).
    Works when unit vectors exist over Q; otherwise raises DegenerateMetric
    (supply an onb with the metric in that case)."""
    n = g.dim
    found: list = []
    want = [1, 1, -1, -1]
    span: list = []
    from paracomplex.para import _orthogonal_complement_basis

    for target in want:
        comp = _orthogonal_complement_basis(g, span)
        pick = None
        for bound in (1, 2, 3, 4):
            for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(comp)):
                if not any(coeffs) or max(abs(c) for c in coeffs) != bound:
                    continue
                v = [Fraction(0)] * n
                for c, b in zip(coeffs, comp):
                    if c:
                        v = [x + c * y for x, y in zip(v, b)]
                norm = g.apply(v, v)
                if norm == 0 or (norm > 0) != (target > 0):
                    continue
                root = _is_square(abs(norm))
                if root is not None:
                    pick = vec_scale(1 / root, v)
                    break
            if pick is not None:
                break
        if pick is None:
            raise DegenerateMetric("no rational orthonormal basis found; supply one")
        found.append(pick)
        span.append(pick)
    return found


# -- connections ------------------------------------------------------------------


@dataclass
class Connection:
    """Christoffel data gamma[i][j][k]: nabla_{d_i} d_j = gamma[i][j][k] d_k."""

    nvars: int
    gamma: list


@dataclass
class TorsionTensor:
    """T(d_i, d_j) = t[i][j][k] d_k; antisymmetric in (i, j)."""

    nvars: int
    t: list

    def apply(self, x: list, y: list, point=None) -> list:
        n = self.nvars
        comps = []
        for k in range(n):
            total = RatFunc.zero(n) if point is None else Fraction(0)
            for i in range(n):
                for j in range(n):
                    c = self.t[i][j][k]
                    if point is not None:
                        c = c.eval_at(point)
                    total = total + x[i] * y[j] * c
            comps.append(total)
        return comps


def levi_civita(g: list) -> Connection:
    """Christoffel symbols of the metric field with exact inverse metric."""
    n = len(g)
    try:
        ginv = mat_inv(g)
    except ZeroDivisionError as exc:
        raise DegenerateMetric("metric field is degenerate") from exc
    dg = [[[g[i][j].partial(k) for k in range(n)] for j in range(n)] for i in range(n)]
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total = RatFunc.zero(n)
                for l in range(n):
                    total = total + ginv[k][l] * (dg[l][j][i] + dg[l][i][j] - dg[i][j][l])
                gamma[i][j][k] = total * half
    return Connection(n, gamma)


def hitchin_connection(g: list, theta: KForm) -> tuple[Connection, TorsionTensor]:
    """Metric connection whose totally skew torsion satisfies
    g(T(X, Y), Z) = dTheta(X, Y, Z): Levi-Civita plus the contorsion
    A(X, Y) with g(A(X, Y), Z) = dTheta(X, Y, Z) / 2."""
    n = len(g)
    lc = levi_civita(g)
    dth = ext_deriv(theta)
    ginv = mat_inv(g)
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                contorsion = RatFunc.zero(n)
                for l in range(n):
                    contorsion = contorsion + ginv[k][l] * dth.get((i, j, l))
                gamma[i][j][k] = lc.gamma[i][j][k] + contorsion * half
    torsion = [[[gamma[i][j][k] - gamma[j][i][k] for k in range(n)]
                for j in range(n)] for i in range(n)]
    return Connection(n, gamma), TorsionTensor(n, torsion)


def metricity_residual(conn: Connection, g: list) -> bool:
    """True iff nabla g = 0 as a rational-function identity."""
    n = conn.nvars
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total = g[j][k].partial(i)
                for l in range(n):
                    total = total - conn.gamma[i][j][l] * g[l][k]
                    total = total - conn.gamma[i][k][l] * g[j][l]
                if not total.is_zero():
                    return False
    return True


# -- curvature ---------------------------------------------------------------------


@dataclass
class RiemannTensor:
    """r[i][j][k][l]: R(d_i, d_j) d_k = r[i][j][k][l] d_l in the convention
    R(X, Y) = D_{[X,Y]} - [D_X, D_Y]."""

    nvars: int
    r: list


def riemann(conn: Connection) -> RiemannTensor:
    n = conn.nvars
    g = conn.gamma
    r = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    # -(d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik)
                    total = g[j][k][l].partial(i) - g[i][k][l].partial(j)
                    for m in range(n):
                        total = total + g[i][m][l] * g[j][k][m]
                        total = total - g[j][m][l] * g[i][k][m]
                    r[i][j][k][l] = -total
    return RiemannTensor(n, r)


def riemann_at(rm: RiemannTensor, point) -> list:
    return [[[[c.eval_at(point) for c in row3] for row3 in row2] for row2 in row1]
            for row1 in rm.r]


def curvature_endo(r_at: list, x: list, y: list) -> Endo:
    """The endomorphism R(X, Y) at a point from evaluated curvature data."""
    n = len(r_at)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = x[i] * y[j]
            if not c:
                continue
            for k in range(n):
                for l in range(n):
                    if r_at[i][j][k][l]:
                        mat[l][k] += c * r_at[i][j][k][l]
    return Endo(mat)


def ricci_tensor_field(rm: RiemannTensor) -> list:
    """Ricci(X, Y) = trace(Z -> R(X, Z) Y) as a RatFunc matrix."""
    n = rm.nvars
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            total = RatFunc.zero(n)
            for k in range(n):
                total = total + rm.r[i][k][j][k]
            out[i][j] = total
    return out


@dataclass
class CurvOperator:
    """Curvature operator on the wedge basis {e_i ^ e_j} (i < j) at a point,
    with the point metric and Ricci data needed by the decomposition."""

    mat: list  # 6x6 Fractions
    g_at: Bilinear
    point: tuple
    ricci: Bilinear
    rho: Endo
    s: Fraction

    def apply_2vector(self, a: TwoVector) -> TwoVector:
        coords = [a.get(i, j) for (i, j) in WEDGE4]
        image = mat_vec(self.mat, coords)
        out = TwoVector(4)
        for c, (i, j) in zip(image, WEDGE4):
            if c:
                out = out + TwoVector.basis(i, j, 4).scale(c)
        return out


def lambda2_gram(g_at: Bilinear) -> list:
    return [[lambda2_inner(g_at, TwoVector.basis(*p, 4), TwoVector.basis(*q, 4))
             for q in WEDGE4] for p in WEDGE4]


def curvature_operator(rm: RiemannTensor, g: list, point) -> CurvOperator:
    """The self-adjoint operator with g(R(X^Y), Z^T) = g(R(X,Y)Z, T)."""
    if rm.nvars != 4:
        raise DimNot4("curvature operator decomposition requires dim 4")
    r_at = riemann_at(rm, point)
    g_at = Bilinear([[c.eval_at(point) for c in row] for row in g])
    q = [[Fraction(0)] * 6 for _ in range(6)]
    for a, (i, j) in enumerate(WEDGE4):
        for b, (k, l) in enumerate(WEDGE4):
            # g(R(e_i, e_j) e_k, e_l)
            total = Fraction(0)
            for m in range(4):
                if r_at[i][j][k][m]:
                    total += r_at[i][j][k][m] * g_at.mat[m][l]
            q[a][b] = total
    gram = lambda2_gram(g_at)
    mat = mat_mul(mat_inv(gram), transpose(q))
    ric = ricci_at(rm, g, point)
    rho = Endo(mat_mul(mat_inv(g_at.mat), ric.mat))
    s = sum(rho.mat[i][i] for i in range(4))
    return CurvOperator(mat, g_at, tuple(point), ric, rho, s)


def ricci_at(rm: RiemannTensor, g: list, point) -> Bilinear:
    ric_field = ricci_tensor_field(rm)
    return Bilinear([[c.eval_at(point) for c in row] for row in ric_field])


def ricci_scalar(rm: RiemannTensor, g: list, point) -> tuple[Endo, Bilinear, Fraction]:
    """(rho, Ricci, s) at the point: g(rho(X), Y) = Ricci(X, Y), s = trace(rho)."""
    ric = ricci_at(rm, g, point)
    g_at = Bilinear([[c.eval_at(point) for c in row] for row in g])
    rho = Endo(mat_mul(mat_inv(g_at.mat), ric.mat))
    s = sum(rho.mat[i][i] for i in range(4))
    return rho, ric, s


# -- decomposition -----------------------------------------------------------------------


@dataclass
class CurvDecomposition:
    s: Fraction
    s_part: list
    b_part: list
    w_part: list
    w_plus: list
    w_minus: list

    def parts_sum(self) -> list:
        total = mat_scale(Fraction(1), self.s_part)
        for part in (self.b_part, self.w_part):
            total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, part)]
        return total


def _two_vector_coords(a: TwoVector) -> list:
    return [a.get(i, j) for (i, j) in WEDGE4]


def star_matrix(onb: list) -> list:
    cols = []
    for (i, j) in WEDGE4:
        image = hodge_star(onb, TwoVector.basis(i, j, 4))
        cols.append(_two_vector_coords(image))
    return mat_from_columns(cols)


def decompose(op: CurvOperator, onb: list) -> CurvDecomposition:
    """R = (s/12) Id + B + W with B from the traceless Ricci part,
    B(X ^ Y) = [rho(X) ^ Y + X ^ rho(Y) - (s/2) X ^ Y] / 2, and
    W split into its self-dual and anti-self-dual blocks by the Hodge star
    of the supplied oriented orthonormal basis."""
    s_part = mat_scale(Fraction(op.s, 12), mat_identity(6))
    half = Fraction(1, 2)
    b_cols = []
    for (i, j) in WEDGE4:
        ei, ej = basis_vec(i, 4), basis_vec(j, 4)
        rei, rej = op.rho.apply(ei), op.rho.apply(ej)
        tv = TwoVector.wedge(rei, ej) + TwoVector.wedge(ei, rej) \
            - TwoVector.basis(i, j, 4).scale(Fraction(op.s, 2))
        b_cols.append([c * half for c in _two_vector_coords(tv)])
    b_part = mat_from_columns(b_cols)
    w_part = mat_sub(mat_sub(op.mat, s_part), b_part)
    star = star_matrix(onb)
    p_plus = mat_scale(half, [[x + y for x, y in zip(r1, r2)]
                              for r1, r2 in zip(mat_identity(6), star)])
    p_minus = mat_scale(half, [[x - y for x, y in zip(r1, r2)]
                               for r1, r2 in zip(mat_identity(6), star)])
    w_plus = mat_mul(p_plus, mat_mul(w_part, p_plus))
    w_minus = mat_mul(p_minus, mat_mul(w_part, p_minus))
    return CurvDecomposition(op.s, s_part, b_part, w_part, w_plus, w_minus)


def duality_verdict(op: CurvOperator, onb: list) -> dict:
    """Self-dual: W_- = 0; anti-self-dual: W_+ = 0; conformally flat: W = 0."""
    dec = decompose(op, onb)
    return {
        "self_dual": mat_is_zero(dec.w_minus),
        "anti_self_dual": mat_is_zero(dec.w_plus),
        "conformally_flat": mat_is_zero(dec.w_part),
    }


def sectional_constant_check(op: CurvOperator) -> Fraction | None:
    """c with R = c Id = (s/12) Id exactly, when the operator is scalar."""
    c = op.mat[0][0]
    ident = mat_scale(c, mat_identity(6))
    if mat_eq(op.mat, ident):
        return c
    return None


# -- the (j, l, r) residual -----------------------------------------------------------------


def jklr_residual(op: CurvOperator, k1: Endo, k2: Endo, j: int, l: int, r: int,
                  x: list, y: list, z: list, u: list) -> Fraction:
    """g(R(X^Y + K_j X ^ K_l Y), Z^U + K_r Z ^ K_r U)
    + g(R(K_j X ^ Y + X ^ K_l Y), K_r Z ^ U + Z ^ K_r U); the displayed
    curvature identity holds iff this vanishes."""
    ks = {1: k1, 2: k2}
    kj, kl, kr = ks[j], ks[l], ks[r]
    g_at = op.g_at
    a1 = TwoVector.wedge(x, y) + TwoVector.wedge(kj.apply(x), kl.apply(y))
    b1 = TwoVector.wedge(z, u) + TwoVector.wedge(kr.apply(z), kr.apply(u))
    a2 = TwoVector.wedge(kj.apply(x), y) + TwoVector.wedge(x, kl.apply(y))
    b2 = TwoVector.wedge(kr.apply(z), u) + TwoVector.wedge(z, kr.apply(u))
    lhs = lambda2_inner(g_at, op.apply_2vector(a1), b1)
    rhs = lambda2_inner(g_at, op.apply_2vector(a2), b2)
    return lhs + rhs


# -- reflector-space Nijenhuis evaluators ------------------------------------------------------


def reflector_nijenhuis(r_at: list, q: Endo, x: list, y: list, i: int) -> Endo:
    """Vertical Nijenhuis value at Q for horizontal arguments:
    R(X,Y)Q + R(QX,QY)Q - K^i R(QX,Y)Q - K^i R(X,QY)Q, with R(X,Y)Q the
    commutator [R(X,Y), Q] and K^i V = (-1)^{i+1} Q V."""
    def act(a: list, b: list) -> Endo:
        rend = curvature_endo(r_at, a, b)
        return Endo(mat_sub(mat_mul(rend.mat, q.mat), mat_mul(q.mat, rend.mat)))

    def k_i(v: Endo) -> Endo:
        kv = Endo(mat_mul(q.mat, v.mat))
        return kv if i % 2 == 1 else -kv

    qx, qy = q.apply(x), q.apply(y)
    return act(x, y) + act(qx, qy) - k_i(act(qx, y)) - k_i(act(x, qy))


def reflector_mixed_nijenhuis(q: Endo, x: list, v: Endo, i: int) -> list:
    """Mixed horizontal-vertical value ((-1)^i + 1) (Q V X)."""
    factor = Fraction((-1) ** i + 1)
    return vec_scale(factor, q.apply(v.apply(x)))


# -- generalized twistor Nijenhuis evaluators ---------------------------------------------------


def omega_eps(e: GeneralizedMetric, kpair: tuple[Endo, Endo], eps: int,
              a: GenVector, b: GenVector, w: tuple[Endo, Endo]) -> Fraction:
    """<(P1 W - P_eps W)(A), B> - <(P1 W - P_eps W)(B), A>."""
    p1 = p_epsilon(1, kpair, e, w)
    pe = p_epsilon(eps, kpair, e, w)
    diff = vertical_endo(e, p1[0] - pe[0], p1[1] - pe[1])
    return gen_pairing(diff.apply(a), b) - gen_pairing(diff.apply(b), a)


def twistor_mixed_nijenhuis(e: GeneralizedMetric, kpair: tuple[Endo, Endo],
                            a: GenVector, v: tuple[Endo, Endo], eps: int) -> GenVector:
    """N_eps(A^h, V) = (-(P_eps V) A + (P1 V) A)^h as a value at the base point."""
    p1 = p_epsilon(1, kpair, e, v)
    pe = p_epsilon(eps, kpair, e, v)
    w1 = vertical_endo(e, p1[0], p1[1])
    we = vertical_endo(e, pe[0], pe[1])
    return w1.apply(a) - we.apply(a)


def twistor_vertical_nijenhuis(r_at: list, e: GeneralizedMetric,
                               kpair: tuple[Endo, Endo], a: GenVector,
                               b: GenVector, eps: int,
                               vertical_basis: list | None = None):
    """Vertical part of N_eps(A^h, B^h) at the fiber point (K1, K2):
    R(p1 A, p1 B) K + R(p1 KA, p1 KB) K - P_eps R(p1 KA, p1 B) K
    - P_eps R(p1 A, p1 KB) K, returned as the endomorphism pair, together
    with the values of the 1-form omega^eps_{A,B} on the supplied vertical
    basis (pairs); omega^1 vanishes identically.

    The horizontal-times-vertical-covector values are determined by this
    output through <p* N_eps(A^h, phi), B> = -phi(vertical part of
    N_eps(A^h, B^h)) / 2, so no separate evaluator is needed for them."""
    k1, k2 = kpair
    kgen = assemble(e.g, e.theta, k1, k2)
    ka, kb = kgen.apply(a), kgen.apply(b)

    def r_pair(x: list, y: list) -> tuple[Endo, Endo]:
        rend = curvature_endo(r_at, x, y)
        return (Endo(mat_sub(mat_mul(rend.mat, k1.mat), mat_mul(k1.mat, rend.mat))),
                Endo(mat_sub(mat_mul(rend.mat, k2.mat), mat_mul(k2.mat, rend.mat))))

    t1 = r_pair(a.x, b.x)
    t2 = r_pair(ka.x, kb.x)
    t3 = p_epsilon(eps, kpair, e, r_pair(ka.x, b.x))
    t4 = p_epsilon(eps, kpair, e, r_pair(a.x, kb.x))
    pair = (t1[0] + t2[0] - t3[0] - t4[0], t1[1] + t2[1] - t3[1] - t4[1])
    omega_values = []
    if vertical_basis is not None:
        for w in vertical_basis:
            omega_values.append(omega_eps(e, kpair, eps, a, b, w))
    return pair, omega_values


def vertical_pair_basis(g_at: Bilinear, kpair: tuple[Endo, Endo]) -> list:
    """Basis of the vertical space at (K1, K2) as endomorphism pairs."""
    zero = Endo(mat_zero(g_at.dim))
    first = [(v, zero) for v in fiber_tangent_basis(g_at, kpair[0])]
    second = [(zero, v) for v in fiber_tangent_basis(g_at, kpair[1])]
    return first + second


# -- horizontal obstruction (torsion residual) ---------------------------------------------------


def _torsion_vec(t_at: list, x: list, y: list) -> list:
    n = len(t_at)
    out = [Fraction(0)] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            c = x[i] * y[j]
            if not c:
                continue
            for k in range(n):
                if t_at[i][j][k]:
                    out[k] += c * t_at[i][j][k]
    return out


def _covector_alpha_iota(t_at: list, alpha: list, y: list) -> list:
    """The 1-form Z -> alpha(T(Y, Z))."""
    n = len(t_at)
    out = [Fraction(0)] * n
    for z in range(n):
        total = Fraction(0)
        for i in range(n):
            if not y[i]:
                continue
            for k in range(n):
                if alpha[k]:
                    total += y[i] * t_at[i][z][k] * alpha[k]
        out[z] = total
    return out


def _dtheta_covector(dth_at: dict, x: list, y: list) -> list:
    """The 1-form Z -> dTheta(X, Y, Z) from evaluated 3-form components."""
    n = 4
    out = [Fraction(0)] * n
    for z in range(n):
        total = Fraction(0)
        for (idx, c) in dth_at.items():
            for pa, pb, pc in itertools.permutations(range(3)):
                sign = _perm_sign((pa, pb, pc))
                vecs = (x, y, [Fraction(1) if t == z else Fraction(0) for t in range(n)])
                total += sign * c * vecs[pa][idx[0]] * vecs[pb][idx[1]] * vecs[pc][idx[2]]
        out[z] = total
    return out


def _perm_sign(perm) -> int:
    sign = 1
    lst = list(perm)
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] > lst[j]:
                sign = -sign
    return sign


def np_residual_terms(g_at: Bilinear, t_at: list, dth_at: dict,
                      s1: Endo, s2: Endo, a: GenVector, b: GenVector):
    """(N_P(A, B), cond_rhs) for the generalized structure P assembled from
    (g, Theta = 0, S1, S2) at a point, with torsion values t_at and dTheta
    values dth_at.  The obstruction residual is the difference."""
    p = assemble(g_at, Bilinear(mat_zero(g_at.dim)), s1, s2)
    pa, pb = p.apply(a), p.apply(b)
    x, alpha = a.x, a.alpha
    y, beta = b.x, b.alpha
    xh, alphah = pa.x, pa.alpha
    yh, betah = pb.x, pb.alpha
    vec = [-(c1 + c2) for c1, c2 in zip(_torsion_vec(t_at, x, y),
                                        _torsion_vec(t_at, xh, yh))]
    form = [Fraction(0)] * 4
    for sign, al, yy in ((-1, alpha, y), (1, beta, x), (-1, alphah, yh), (1, betah, xh)):
        term = _covector_alpha_iota(t_at, al, yy)
        form = [f + sign * t for f, t in zip(form, term)]
    inner_vec = vec_add(_torsion_vec(t_at, xh, y), _torsion_vec(t_at, x, yh))
    inner_form = [Fraction(0)] * 4
    for sign, al, yy in ((1, alphah, y), (-1, beta, xh), (1, alpha, yh), (-1, betah, x)):
        term = _covector_alpha_iota(t_at, al, yy)
        inner_form = [f + sign * t for f, t in zip(inner_form, term)]
    n_p = GenVector(vec, form) + p.apply(GenVector(inner_vec, inner_form))
    # cond_rhs = -dTheta(X,Y,.) - dTheta(Xh,Yh,.) + P(dTheta(Xh,Y,.) + dTheta(X,Yh,.))
    rhs_form = [-(c1 + c2) for c1, c2 in zip(_dtheta_covector(dth_at, x, y),
                                             _dtheta_covector(dth_at, xh, yh))]
    rhs_inner = vec_add(_dtheta_covector(dth_at, xh, y), _dtheta_covector(dth_at, x, yh))
    cond_rhs = GenVector([Fraction(0)] * 4, rhs_form) \
        + p.apply(GenVector([Fraction(0)] * 4, rhs_inner))
    return n_p, cond_rhs


def horizontal_np_residual(g: list, theta: KForm, s1: Endo, s2: Endo,
                           a: GenVector, b: GenVector, point) -> GenVector:
    """N_P(A, B) minus the right-hand side of the obstruction identity;
    identically zero at the point for all inputs iff dTheta vanishes there."""
    _, torsion = hitchin_connection(g, theta)
    t_at = [[[c.eval_at(point) for c in row2] for row2 in row1] for row1 in torsion.t]
    dth = ext_deriv(theta)
    dth_at = {idx: c.eval_at(point) for idx, c in dth.comps.items()}
    g_at = Bilinear([[c.eval_at(point) for c in row] for row in g])
    n_p, cond_rhs = np_residual_terms(g_at, t_at, dth_at, s1, s2, a, b)
    return n_p - cond_rhs


# -- theorem verdicts -----------------------------------------------------------------------------


DEFAULT_POINTS = [
    (0, 0, 0, 0),
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5), 0),
    (1, 1, -1, Fraction(1, 2)),
]


def sample_points_for(model: MetricModel, requested=None, count: int = 5) -> list:
    """Rational sample points avoiding poles of the metric, its inverse,
    and the orthonormal frame."""
    candidates = [tuple(Fraction(c) for c in p) for p in (requested or DEFAULT_POINTS)]
    if requested is not None:
        return candidates
    good = []
    for p in candidates:
        try:
            g_at = model.g_at(p)
            mat_inv(g_at.mat)
            model.onb_at(p)
        except (PoleAtPoint, ZeroDivisionError, DegenerateMetric):
            continue
        good.append(p)
        if len(good) == count:
            break
    if not good:
        raise DegenerateMetric("no usable sample points for the metric")
    return good


def rnd_vec(rng, n=4) -> list:
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]


def theorem_verdict(model: MetricModel, theta: KForm, component: str,
                    sample_points=None, seed: int = 0, jklr_samples: int = 40) -> dict:
    """Integrability of the dim-4 twistor structure on the given component:
    requires dTheta = 0 plus the curvature condition of the component
    (++ : anti-self-dual and Ricci flat; -- : self-dual and Ricci flat;
    +- / -+ : scalar curvature operator, constant sectional curvature).
    Evidence carries sub-condition results and seeded (j,l,r) spot checks."""
    if model.nvars != 4:
        raise DimNot4("theorem verdicts require a 4-dimensional patch")
    if component not in ("++", "+-", "-+", "--"):
        raise ValueError(f"unknown component {component!r}")
    rng = random.Random(seed)
    points = sample_points_for(model, sample_points)
    dth = ext_deriv(theta)
    d_theta_zero = dth.is_zero()
    evidence: dict = {
        "d_theta_zero": d_theta_zero,
        "points": [[str(c) for c in p] for p in points],
    }
    if not d_theta_zero:
        evidence["d_theta_witness"] = {
            f"{i+1},{j+1},{k+1}": c.to_str() for (i, j, k), c in sorted(dth.comps.items())
        }
        witness = _np_witness_search(model, theta, points, rng)
        if witness is not None:
            evidence["np_residual_witness"] = witness
    lc = levi_civita(model.g)
    rm = riemann(lc)
    ricci_ok = True
    w_plus_ok = True
    w_minus_ok = True
    sectional: list = []
    per_point = []
    for p in points:
        op = curvature_operator(rm, model.g, p)
        onb = model.onb_at(p)
        per_point.append((op, onb))
        dec = decompose(op, onb)
        if not mat_is_zero(op.ricci.mat):
            ricci_ok = False
        if not mat_is_zero(dec.w_plus):
            w_plus_ok = False
        if not mat_is_zero(dec.w_minus):
            w_minus_ok = False
        sectional.append(sectional_constant_check(op))
    evidence["ricci_zero"] = ricci_ok
    evidence["w_plus_zero"] = w_plus_ok
    evidence["w_minus_zero"] = w_minus_ok
    const_ok = all(c is not None for c in sectional)
    evidence["sectional_constant"] = str(sectional[0]) if const_ok else None
    if component == "++":
        curvature_ok = w_plus_ok and ricci_ok
    elif component == "--":
        curvature_ok = w_minus_ok and ricci_ok
    else:
        curvature_ok = const_ok
    integrable = d_theta_zero and curvature_ok
    nonzero = 0
    first_witness = None
    orient1 = +1 if component[0] == "+" else -1
    orient2 = +1 if component[1] == "+" else -1
    for t in range(jklr_samples):
        p = points[t % len(points)]
        op, onb = per_point[t % len(points)]
        k1 = random_compatible_structure(op.g_at, onb, rng, orient1)
        k2 = random_compatible_structure(op.g_at, onb, rng, orient2)
        j, l, r = (rng.randint(1, 2) for _ in range(3))
        args = [rnd_vec(rng) for _ in range(4)]
        res = jklr_residual(op, k1, k2, j, l, r, *args)
        if res:
            nonzero += 1
            if first_witness is None:
                first_witness = {"point": [str(c) for c in p], "jlr": [j, l, r],
                                 "residual": str(res)}
    evidence["jklr"] = {"samples": jklr_samples, "nonzero": nonzero}
    if first_witness is not None:
        evidence["jklr"]["witness"] = first_witness
    return {"component": component, "integrable": integrable, "evidence": evidence}


def _np_witness_search(model: MetricModel, theta: KForm, points, rng,
                       attempts: int = 60):
    """Bounded seeded search for a nonzero horizontal obstruction residual."""
    _, torsion = hitchin_connection(model.g, theta)
    dth = ext_deriv(theta)
    for p in points:
        t_at = [[[c.eval_at(p) for c in row2] for row2 in row1] for row1 in torsion.t]
        dth_at = {idx: c.eval_at(p) for idx, c in dth.comps.items()}
        if all(v == 0 for v in dth_at.values()):
            continue
        g_at = model.g_at(p)
        onb = model.onb_at(p)
        for _ in range(attempts):
            s1 = random_compatible_structure(g_at, onb, rng, +1 if rng.random() < 0.5 else -1)
            s2 = random_compatible_structure(g_at, onb, rng, +1 if rng.random() < 0.5 else -1)
            a = GenVector(rnd_vec(rng), rnd_vec(rng))
            b = GenVector(rnd_vec(rng), rnd_vec(rng))
            n_p, cond_rhs = np_residual_terms(g_at, t_at, dth_at, s1, s2, a, b)
            res = n_p - cond_rhs
            if not res.is_zero():
                return {"point": [str(c) for c in p],
                        "residual_vector": [str(c) for c in res.x],
                        "residual_form": [str(c) for c in res.alpha]}
    return None


# -- metric identifiers ---------------------------------------------------------------------------


VARS4 = ["x1", "x2", "x3", "x4"]


def parse_metric_id(text: str) -> MetricModel:
    """Catalog identifiers: flat, constcurv:<c>, ppwave:<f>, file:<path>."""
    import json

    if text == "flat":
        return flat_metric()
    if text.startswith("constcurv:"):
        return constcurv_metric(Fraction(text.split(":", 1)[1]))
    if text.startswith("ppwave:"):
        f = parse_ratfunc(text.split(":", 1)[1], VARS4)
        return ppwave_metric(f)
    if text.startswith("file:"):
        path = text.split(":", 1)[1]
        with open(path) as fh:
            data = json.load(fh)
        variables = data.get("vars", VARS4)
        return metric_from_strings(data["g"], variables, data.get("onb"),
                                   name=f"file:{path}")
    raise ValueError(f"unknown metric identifier {text!r}")
