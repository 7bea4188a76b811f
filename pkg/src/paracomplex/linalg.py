"""Finite-dimensional linear algebra over the exact scalars.

Matrices are dense lists of lists whose entries are Fractions (pointwise
work) or RatFuncs (coordinate-patch work); both support +, -, *, / and a
truthiness zero test, which is all the elimination routines need.
Dimensions stay at most 8, so no effort is spent on sparsity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from paracomplex.exact import RatFunc

Vec = list
Mat = list


class NotSymmetric(ValueError):
    """Signature requested for a non-symmetric bilinear form."""


class DimNot4(ValueError):
    """Hodge-star machinery requires dimension 4."""


class SingularMatrix(ZeroDivisionError):
    """Exact inversion of a singular matrix was attempted."""


# -- scalar helpers ---------------------------------------------------------


def zero_like(x):
    return RatFunc.zero(x.nvars) if isinstance(x, RatFunc) else Fraction(0)


def one_like(x):
    return RatFunc.one(x.nvars) if isinstance(x, RatFunc) else Fraction(1)


def _sample(m: Mat):
    return m[0][0]


# -- vectors ----------------------------------------------------------------


def vec_add(u: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(u, v)]

def vec_sub(u: Vec, v: Vec) -> Vec:
    return [a - b for a, b in zip(u, v)]

def vec_scale(c, u: Vec) -> Vec:
    return [c * a for a in u]

def vec_neg(u: Vec) -> Vec:
    return [-a for a in u]

def vec_is_zero(u: Vec) -> bool:
    return all(not a for a in u)

def vec_eq(u: Vec, v: Vec) -> bool:
    return all(a == b for a, b in zip(u, v))

def basis_vec(i: int, n: int, like=Fraction(1)) -> Vec:
    z, o = zero_like(like), one_like(like)
    return [o if j == i else z for j in range(n)]


# -- matrices ----------------------------------------------------------------


def mat_zero(n: int, m: int | None = None, like=Fraction(1)) -> Mat:
    m = n if m is None else m
    z = zero_like(like)
    return [[z for _ in range(m)] for _ in range(n)]


def mat_identity(n: int, like=Fraction(1)) -> Mat:
    z, o = zero_like(like), one_like(like)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a: Mat) -> Mat:
    return [[-x for x in row] for row in a]


def mat_scale(c, a: Mat) -> Mat:
    return [[c * x for x in row] for row in a]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = a[i][0] * b[0][j]
            for t in range(1, k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a: Mat, v: Vec) -> Vec:
    out = []
    for row in a:
        s = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            s = s + x * y
        out.append(s)
    return out


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def mat_eq(a: Mat, b: Mat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(a: Mat) -> bool:
    return all(not x for row in a for x in row)


def mat_from_columns(cols: Sequence[Vec]) -> Mat:
    return [list(row) for row in zip(*cols)]


def columns(a: Mat) -> list[Vec]:
    return [list(col) for col in zip(*a)]


def mat_inv(a: Mat) -> Mat:
    """Exact Gauss-Jordan inverse; raises SingularMatrix when det = 0."""
    n = len(a)
    work = [list(row) for row in a]
    inv = mat_identity(n, like=_sample(a))
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular over the scalar field")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def mat_det(a: Mat):
    n = len(a)
    work = [list(row) for row in a]
    det = one_like(_sample(a))
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return zero_like(_sample(a))
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        p = work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / p
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


def mat_rank(a: Mat) -> int:
    if not a:
        return 0
    work = [list(row) for row in a]
    rows, cols = len(work), len(work[0])
    rank = 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if work[r][col]), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        p = work[row][col]
        for r in range(rows):
            if r != row and work[r][col]:
                f = work[r][col] / p
                work[r] = [x - f * y for x, y in zip(work[r], work[row])]
        rank += 1
        row += 1
        if row == rows:
            break
    return rank


def solve(a: Mat, b: Vec) -> Vec:
    """Solve a x = b exactly (a square nonsingular)."""
    inv = mat_inv(a)
    return mat_vec(inv, b)


def kernel_basis(rows: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of the right kernel {v : rows v = 0} over the scalar field."""
    if not rows:
        n = ncols if ncols is not None else 0
        return [basis_vec(i, n) for i in range(n)]
    n = len(rows[0])
    work = [list(r) for r in rows]
    m = len(work)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if work[r][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        p = work[row][col]
        work[row] = [x / p for x in work[row]]
        for r in range(m):
            if r != row and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    like = rows[0][0]
    z, o = zero_like(like), one_like(like)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [z] * n
        v[fc] = o
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][fc]
        basis.append(v)
    return basis


# -- domain types -------------------------------------------------------------


class Bilinear:
    """Bilinear form on the reference basis; entries[i][j] = b(e_i, e_j)."""

    def __init__(self, mat: Mat):
        self.mat = [list(row) for row in mat]
        self.dim = len(mat)

    @staticmethod
    def diag(values) -> Bilinear:
        n = len(values)
        m = mat_zero(n, like=Fraction(1))
        for i, v in enumerate(values):
            m[i][i] = Fraction(v) if isinstance(v, int) else v
        return Bilinear(m)

    def apply(self, u: Vec, v: Vec):
        return sum((u[i] * self.mat[i][j] * v[j]
                    for i in range(self.dim) for j in range(self.dim)),
                   start=zero_like(self.mat[0][0]))

    def map_mat(self) -> Mat:
        """Matrix of the induced map T -> T*, X |-> b(X, .) in the dual basis."""
        return transpose(self.mat)

    def is_symmetric(self) -> bool:
        return mat_eq(self.mat, transpose(self.mat))

    def is_antisymmetric(self) -> bool:
        return mat_eq(self.mat, mat_neg(transpose(self.mat)))

    def __eq__(self, other):
        return isinstance(other, Bilinear) and mat_eq(self.mat, other.mat)

    def __repr__(self):
        return f"Bilinear({self.mat!r})"


class Endo:
    """Endomorphism acting on column vectors of the reference basis."""

    def __init__(self, mat: Mat):
        self.mat = [list(row) for row in mat]
        self.dim = len(mat)

    @staticmethod
    def identity(n: int, like=Fraction(1)) -> Endo:
        return Endo(mat_identity(n, like))

    def apply(self, v: Vec) -> Vec:
        return mat_vec(self.mat, v)

    def compose(self, other: Endo) -> Endo:
        return Endo(mat_mul(self.mat, other.mat))

    def __add__(self, other: Endo) -> Endo:
        return Endo(mat_add(self.mat, other.mat))

    def __sub__(self, other: Endo) -> Endo:
        return Endo(mat_sub(self.mat, other.mat))

    def __neg__(self) -> Endo:
        return Endo(mat_neg(self.mat))

    def scale(self, c) -> Endo:
        return Endo(mat_scale(c, self.mat))

    def trace(self):
        return sum((self.mat[i][i] for i in range(1, self.dim)),
                   start=self.mat[0][0])

    def is_zero(self) -> bool:
        return mat_is_zero(self.mat)

    def __eq__(self, other):
        return isinstance(other, Endo) and mat_eq(self.mat, other.mat)

    def __repr__(self):
        return f"Endo({self.mat!r})"


def g_adjoint(g: Bilinear, a: Endo) -> Endo:
    """a* with g(a X, Y) = g(X, a* Y):  a* = g^{-1} a^T g."""
    ginv = mat_inv(g.mat)
    return Endo(mat_mul(ginv, mat_mul(transpose(a.mat), g.mat)))


def is_g_skew(g: Bilinear, a: Endo) -> bool:
    """g(aX, Y) + g(X, aY) = 0, i.e. a^T g + g a = 0."""
    return mat_is_zero(mat_add(mat_mul(transpose(a.mat), g.mat),
                               mat_mul(g.mat, a.mat)))


def wedge_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class TwoVector:
    """Element of Lambda^2 T with components on e_i ^ e_j, i < j."""

    def __init__(self, dim: int, comps: dict[tuple[int, int], object] | None = None):
        self.dim = dim
        self.comps: dict[tuple[int, int], object] = {}
        if comps:
            for (i, j), c in comps.items():
                if i == j:
                    continue
                if i > j:
                    i, j, c = j, i, -c
                cur = self.comps.get((i, j))
                c = c if cur is None else cur + c
                if c:
                    self.comps[(i, j)] = c
                else:
                    self.comps.pop((i, j), None)

    @staticmethod
    def wedge(u: Vec, v: Vec) -> TwoVector:
        n = len(u)
        comps = {}
        for i in range(n):
            for j in range(i + 1, n):
                c = u[i] * v[j] - u[j] * v[i]
                if c:
                    comps[(i, j)] = c
        return TwoVector(n, comps)

    @staticmethod
    def basis(i: int, j: int, dim: int) -> TwoVector:
        return TwoVector(dim, {(i, j): Fraction(1)})

    def get(self, i: int, j: int):
        if i == j:
            return Fraction(0)
        if i < j:
            return self.comps.get((i, j), Fraction(0))
        c = self.comps.get((j, i), Fraction(0))
        return -c

    def __add__(self, other: TwoVector) -> TwoVector:
        comps = dict(self.comps)
        for k, c in other.comps.items():
            s = comps.get(k)
            s = c if s is None else s + c
            if s:
                comps[k] = s
            else:
                comps.pop(k, None)
        return TwoVector(self.dim, comps)

    def __sub__(self, other: TwoVector) -> TwoVector:
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> TwoVector:
        return self.scale(Fraction(-1))

    def scale(self, c) -> TwoVector:
        return TwoVector(self.dim, {k: c * v for k, v in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, TwoVector):
            return NotImplemented
        keys = set(self.comps) | set(other.comps)
        return all(self.get(*k) == other.get(*k) for k in keys)

    def __repr__(self):
        return f"TwoVector({self.comps!r})"


# -- form and 2-vector operations ------------------------------------------------


def signature(b: Bilinear) -> tuple[int, int, int]:
    """Sylvester inertia (positive, negative, null) by exact symmetric reduction."""
    if not b.is_symmetric():
        raise NotSymmetric("signature requires a symmetric form")
    n = b.dim
    m = [list(row) for row in b.mat]
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if m[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active
                         if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # congruence: e_i <- e_i + e_j makes the (i,i) entry 2 b(e_i, e_j)
            for k in range(n):
                m[i][k] = m[i][k] + m[j][k]
            for k in range(n):
                m[k][i] = m[k][i] + m[k][j]
            piv = i
        p = m[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for k in active:
            if k != piv and m[k][piv]:
                f = m[k][piv] / p
                for t in range(n):
                    m[k][t] = m[k][t] - f * m[piv][t]
                for t in range(n):
                    m[t][k] = m[t][k] - f * m[t][piv]
        active.remove(piv)
    null = n - pos - neg
    return pos, neg, null


def lambda2_inner(g: Bilinear, a: TwoVector, b: TwoVector):
    """Induced inner product on Lambda^2:
    <v1^v2, v3^v4> = g(v1,v3) g(v2,v4) - g(v1,v4) g(v2,v3), extended bilinearly."""
    gm = g.mat
    total = zero_like(gm[0][0])
    for (i, j), ca in a.comps.items():
        for (k, l), cb in b.comps.items():
            total = total + ca * cb * (gm[i][k] * gm[j][l] - gm[i][l] * gm[j][k])
    return total


def endo_from_2vector(g: Bilinear, a: TwoVector) -> Endo:
    """The g-skew endomorphism S_a with g(S_a u, v) = <a, u ^ v>."""
    n = g.dim
    m = mat_zero(n, like=g.mat[0][0])
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            s = zero_like(g.mat[0][0])
            for (i, j), c in a.comps.items():
                s = s + c * (g.mat[i][u] * g.mat[j][v] - g.mat[i][v] * g.mat[j][u])
            m[u][v] = s
    # S^T g = m  =>  S = (m g^{-1})^T
    return Endo(transpose(mat_mul(m, mat_inv(g.mat))))


def two_vector_change_of_basis(q: Mat) -> dict:
    """For e_k = sum_i q[i][k] u_i, express reference wedge components in the
    u-basis; returns the 6x6-ish coefficient map keyed by index pairs."""
    n = len(q)
    table = {}
    for (k, l) in wedge_pairs(n):
        row = {}
        for (i, j) in wedge_pairs(n):
            c = q[i][k] * q[j][l] - q[i][l] * q[j][k]
            if c:
                row[(i, j)] = c
        table[(k, l)] = row
    return table


_STAR_RULES = {
    (0, 1): ((2, 3), 1),
    (2, 3): ((0, 1), 1),
    (0, 2): ((1, 3), 1),
    (1, 3): ((0, 2), 1),
    (0, 3): ((1, 2), -1),
    (1, 2): ((0, 3), -1),
}


def check_onb(g: Bilinear, onb: Sequence[Vec]) -> bool:
    """Orthonormal with norms (1, 1, -1, -1) under g."""
    if len(onb) != 4:
        return False
    want = [1, 1, -1, -1]
    for i in range(4):
        for j in range(4):
            expect = want[i] if i == j else 0
            if g.apply(onb[i], onb[j]) != expect:
                return False
    return True


def hodge_star(onb: Sequence[Vec], a: TwoVector) -> TwoVector:
    """Hodge star on Lambda^2 for the oriented orthonormal basis onb with
    norms (1, 1, -1, -1):  *(u1^u2) = u3^u4, *(u1^u3) = u2^u4, *(u1^u4) = -u2^u3,
    extended as an involution."""
    if len(onb) != 4 or a.dim != 4:
        raise DimNot4("hodge star is implemented for dimension 4")
    p = mat_from_columns(onb)
    q = mat_inv(p)
    to_u = two_vector_change_of_basis(q)
    u_comp: dict[tuple[int, int], object] = {}
    for key, c in a.comps.items():
        for ukey, f in to_u[key].items():
            s = u_comp.get(ukey)
            s = c * f if s is None else s + c * f
            u_comp[ukey] = s
    star_u = {}
    for key, c in u_comp.items():
        tgt, sign = _STAR_RULES[key]
        star_u[tgt] = c if sign > 0 else -c
    # map back: u_i ^ u_j in reference components
    out = TwoVector(4)
    for (i, j), c in star_u.items():
        if c:
            out = out + TwoVector.wedge(onb[i], onb[j]).scale(c)
    return out


def selfdual_split(onb: Sequence[Vec], a: TwoVector) -> tuple[TwoVector, TwoVector]:
    """a = a+ + a- with *a+ = a+ and *a- = -a-, via (a +- *a)/2."""
    star = hodge_star(onb, a)
    half = Fraction(1, 2)
    return (a + star).scale(half), (a - star).scale(half)


def sd_basis(onb: Sequence[Vec], sign: int = +1) -> list[TwoVector]:
    """Unnormalized (anti-)self-dual basis 2-vectors (norms +-2):
    sigma_1 = u1^u2 + s u3^u4, sigma_2 = u1^u3 + s u2^u4, sigma_3 = u1^u4 - s u2^u3."""
    s = Fraction(1 if sign > 0 else -1)
    w = lambda i, j: TwoVector.wedge(onb[i], onb[j])
    return [
        w(0, 1) + w(2, 3).scale(s),
        w(0, 2) + w(1, 3).scale(s),
        w(0, 3) - w(1, 2).scale(s),
    ]


def j_structures(g: Bilinear, onb: Sequence[Vec], sign: int = +1) -> list[Endo]:
    """J_i = S_{sigma_i} for the unnormalized (anti-)self-dual basis; with
    sign=+1 they satisfy J1^2 = -Id, J2^2 = J3^2 = Id, J3 = J2 J1."""
    return [endo_from_2vector(g, sigma) for sigma in sd_basis(onb, sign)]


# -- serialization ----------------------------------------------------------------


def mat_to_strings(m: Mat, names: Sequence[str] | None = None) -> list[list[str]]:
    out = []
    for row in m:
        out.append([x.to_str(names) if isinstance(x, RatFunc) else str(x) for x in row])
    return out
