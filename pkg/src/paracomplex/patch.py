"""Symbolic tensor calculus on a coordinate patch with rational-function
coefficients: vector fields, differential forms, bivector fields, the Courant
bracket, and the classical and generalized Nijenhuis tensors.

Sign conventions.  The interior product is the antiderivation with
i_X dx^i = X^i; the double contraction of a 3-form is
(i_X i_Y w)(Z) = w(Y, X, Z).  The Courant bracket is
[X+a, Y+b] = [X,Y] + L_X b - L_Y a - d(i_X b - i_Y a)/2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from paracomplex.exact import RatFunc
from paracomplex.linalg import mat_eq, mat_inv


class WrongDegree(ValueError):
    """Form degree does not match the operation."""


def _sort_index(idx: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Sorted index tuple and permutation sign; None for repeated indices."""
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    lst = list(idx)
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return tuple(lst), sign


class VField:
    """Vector field: one RatFunc component per coordinate."""

    def __init__(self, components: list[RatFunc]):
        self.components = list(components)
        self.nvars = len(components)

    @staticmethod
    def zero(nvars: int) -> VField:
        return VField([RatFunc.zero(nvars) for _ in range(nvars)])

    @staticmethod
    def coordinate(i: int, nvars: int) -> VField:
        comps = [RatFunc.zero(nvars) for _ in range(nvars)]
        comps[i] = RatFunc.one(nvars)
        return VField(comps)

    def __add__(self, other: VField) -> VField:
        return VField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: VField) -> VField:
        return VField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> VField:
        return VField([-a for a in self.components])

    def scale(self, f) -> VField:
        return VField([f * a for a in self.components])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, VField) and all(
            a == b for a, b in zip(self.components, other.components))

    def eval_at(self, point) -> list[Fraction]:
        return [c.eval_at(point) for c in self.components]

    def __repr__(self):
        return f"VField({[c.to_str() for c in self.components]})"


class KForm:
    """Differential k-form; components stored on strictly increasing index
    tuples (the empty tuple for functions)."""

    def __init__(self, nvars: int, degree: int, comps: dict | None = None):
        self.nvars = nvars
        self.degree = degree
        self.comps: dict[tuple[int, ...], RatFunc] = {}
        if comps:
            for idx, c in comps.items():
                sorted_sign = _sort_index(tuple(idx))
                if sorted_sign is None:
                    continue
                key, sign = sorted_sign
                value = c if sign > 0 else -c
                cur = self.comps.get(key)
                value = value if cur is None else cur + value
                if value.is_zero():
                    self.comps.pop(key, None)
                else:
                    self.comps[key] = value

    @staticmethod
    def zero(nvars: int, degree: int) -> KForm:
        return KForm(nvars, degree)

    @staticmethod
    def function(f: RatFunc) -> KForm:
        return KForm(f.nvars, 0, {(): f})

    @staticmethod
    def dx(i: int, nvars: int) -> KForm:
        return KForm(nvars, 1, {(i,): RatFunc.one(nvars)})

    def get(self, idx: tuple[int, ...]) -> RatFunc:
        sorted_sign = _sort_index(tuple(idx))
        if sorted_sign is None:
            return RatFunc.zero(self.nvars)
        key, sign = sorted_sign
        c = self.comps.get(key)
        if c is None:
            return RatFunc.zero(self.nvars)
        return c if sign > 0 else -c

    def __add__(self, other: KForm) -> KForm:
        if self.degree != other.degree:
            raise WrongDegree("cannot add forms of different degree")
        comps = dict(self.comps)
        for k, c in other.comps.items():
            cur = comps.get(k)
            s = c if cur is None else cur + c
            if s.is_zero():
                comps.pop(k, None)
            else:
                comps[k] = s
        out = KForm(self.nvars, self.degree)
        out.comps = comps
        return out

    def __sub__(self, other: KForm) -> KForm:
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> KForm:
        return self.scale(Fraction(-1))

    def scale(self, f) -> KForm:
        out = KForm(self.nvars, self.degree)
        for k, c in self.comps.items():
            s = c * f if isinstance(c, RatFunc) else f * c
            if not s.is_zero():
                out.comps[k] = s
        return out

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, KForm) or self.degree != other.degree:
            return NotImplemented
        keys = set(self.comps) | set(other.comps)
        return all(self.get(k) == other.get(k) for k in keys)

    def apply(self, vectors: list[VField]) -> RatFunc:
        """Full antisymmetric evaluation on k vector fields."""
        if len(vectors) != self.degree:
            raise WrongDegree(f"expected {self.degree} vectors")
        total = RatFunc.zero(self.nvars)
        if self.degree == 0:
            return self.comps.get((), total)
        for idx, c in self.comps.items():
            for perm in itertools.permutations(range(self.degree)):
                sign = _sort_index(perm)[1]
                term = c if sign > 0 else -c
                for a, b in enumerate(perm):
                    term = term * vectors[b].components[idx[a]]
                total = total + term
        return total

    def wedge(self, other: KForm) -> KForm:
        out = KForm(self.nvars, self.degree + other.degree)
        for i1, c1 in self.comps.items():
            for i2, c2 in other.comps.items():
                sorted_sign = _sort_index(i1 + i2)
                if sorted_sign is None:
                    continue
                key, sign = sorted_sign
                term = c1 * c2 if sign > 0 else -(c1 * c2)
                cur = out.comps.get(key)
                term = term if cur is None else cur + term
                if term.is_zero():
                    out.comps.pop(key, None)
                else:
                    out.comps[key] = term
        return out

    def __repr__(self):
        return f"KForm(deg={self.degree}, {{{', '.join(f'{k}: {c.to_str()}' for k, c in sorted(self.comps.items()))}}})"


class BiVectorField:
    """Field of 2-vectors; components pi^{ij} on i < j."""

    def __init__(self, nvars: int, comps: dict | None = None):
        self.nvars = nvars
        self.comps: dict[tuple[int, int], RatFunc] = {}
        if comps:
            for (i, j), c in comps.items():
                if i == j:
                    continue
                if i > j:
                    i, j, c = j, i, -c
                cur = self.comps.get((i, j))
                c = c if cur is None else cur + c
                if c.is_zero():
                    self.comps.pop((i, j), None)
                else:
                    self.comps[(i, j)] = c

    def get(self, i: int, j: int) -> RatFunc:
        if i == j:
            return RatFunc.zero(self.nvars)
        if i < j:
            return self.comps.get((i, j), RatFunc.zero(self.nvars))
        c = self.comps.get((j, i))
        return RatFunc.zero(self.nvars) if c is None else -c

    def full_matrix(self) -> list:
        return [[self.get(i, j) for j in range(self.nvars)] for i in range(self.nvars)]


@dataclass
class GenSection:
    """Section X + alpha of the double bundle over the patch."""

    x: VField
    alpha: KForm  # degree 1

    def __add__(self, other: GenSection) -> GenSection:
        return GenSection(self.x + other.x, self.alpha + other.alpha)

    def __sub__(self, other: GenSection) -> GenSection:
        return GenSection(self.x - other.x, self.alpha - other.alpha)

    def __neg__(self) -> GenSection:
        return GenSection(-self.x, -self.alpha)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.alpha.is_zero()

    def __eq__(self, other):
        return isinstance(other, GenSection) and self.x == other.x and self.alpha == other.alpha

    @staticmethod
    def vector(x: VField) -> GenSection:
        return GenSection(x, KForm.zero(x.nvars, 1))

    @staticmethod
    def form(alpha: KForm) -> GenSection:
        return GenSection(VField.zero(alpha.nvars), alpha)

    def eval_at(self, point):
        from paracomplex.gpx import GenVector

        return GenVector(self.x.eval_at(point),
                         [self.alpha.get((i,)).eval_at(point) for i in range(self.x.nvars)])


# -- calculus ---------------------------------------------------------------------


def lie_bracket(x: VField, y: VField) -> VField:
    """[X, Y]^i = X^j d_j Y^i - Y^j d_j X^i."""
    n = x.nvars
    comps = []
    for i in range(n):
        total = RatFunc.zero(n)
        for j in range(n):
            total = total + x.components[j] * y.components[i].partial(j)
            total = total - y.components[j] * x.components[i].partial(j)
        comps.append(total)
    return VField(comps)


def ext_deriv(omega: KForm) -> KForm:
    """Coordinate exterior derivative; d o d = 0."""
    n = omega.nvars
    out = KForm(n, omega.degree + 1)
    for idx, c in omega.comps.items():
        for i in range(n):
            dc = c.partial(i)
            if dc.is_zero():
                continue
            sorted_sign = _sort_index((i,) + idx)
            if sorted_sign is None:
                continue
            key, sign = sorted_sign
            term = dc if sign > 0 else -dc
            cur = out.comps.get(key)
            term = term if cur is None else cur + term
            if term.is_zero():
                out.comps.pop(key, None)
            else:
                out.comps[key] = term
    return out


def interior(x: VField, omega: KForm) -> KForm:
    """i_X omega; the antiderivation with i_X dx^i = X^i."""
    n = omega.nvars
    if omega.degree == 0:
        return KForm.zero(n, 0)
    out = KForm(n, omega.degree - 1)
    for idx, c in omega.comps.items():
        for pos, i in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1:]
            term = c * x.components[i]
            if pos % 2:
                term = -term
            if term.is_zero():
                continue
            cur = out.comps.get(rest)
            term = term if cur is None else cur + term
            if term.is_zero():
                out.comps.pop(rest, None)
            else:
                out.comps[rest] = term
    return out


def lie_deriv(x: VField, omega: KForm) -> KForm:
    """Cartan formula L_X = d i_X + i_X d."""
    return ext_deriv(interior(x, omega)) + interior(x, ext_deriv(omega))


def double_contract(omega3: KForm, x: VField, y: VField) -> KForm:
    """i_X i_Y omega for a 3-form: the 1-form Z -> omega(Y, X, Z)."""
    return interior(x, interior(y, omega3))


# -- Courant bracket ---------------------------------------------------------------


def courant_bracket(a: GenSection, b: GenSection) -> GenSection:
    """[X+a, Y+b] = [X,Y] + L_X b - L_Y a - d(i_X b - i_Y a)/2."""
    x, alpha = a.x, a.alpha
    y, beta = b.x, b.alpha
    vec = lie_bracket(x, y)
    form = lie_deriv(x, beta) - lie_deriv(y, alpha)
    ix_beta = interior(x, beta)
    iy_alpha = interior(y, alpha)
    half_d = ext_deriv(ix_beta - iy_alpha).scale(Fraction(1, 2))
    return GenSection(vec, form - half_d)


def courant_jacobiator(a: GenSection, b: GenSection, c: GenSection) -> GenSection:
    return (courant_bracket(courant_bracket(a, b), c)
            + courant_bracket(courant_bracket(b, c), a)
            + courant_bracket(courant_bracket(c, a), b))


# -- pointwise generalized structures as fields --------------------------------------


class PatchGenStructure:
    """Generalized almost paracomplex structure on the patch, four RatFunc
    blocks a: T->T, b: T*->T, c: T->T*, d: T*->T*."""

    def __init__(self, a, b, c, d, kind: str = "custom"):
        self.a, self.b, self.c, self.d = a, b, c, d
        self.kind = kind
        self.nvars = len(a)

    def apply(self, s: GenSection) -> GenSection:
        n = self.nvars
        alpha_vec = [s.alpha.get((i,)) for i in range(n)]
        x = [sum((self.a[i][j] * s.x.components[j] for j in range(1, n)),
                 start=self.a[i][0] * s.x.components[0]) for i in range(n)]
        x = [xi + sum((self.b[i][j] * alpha_vec[j] for j in range(1, n)),
                      start=self.b[i][0] * alpha_vec[0]) for i, xi in enumerate(x)]
        al = [sum((self.c[i][j] * s.x.components[j] for j in range(1, n)),
                  start=self.c[i][0] * s.x.components[0]) for i in range(n)]
        al = [ai + sum((self.d[i][j] * alpha_vec[j] for j in range(1, n)),
                       start=self.d[i][0] * alpha_vec[0]) for i, ai in enumerate(al)]
        return GenSection(VField(x), KForm(n, 1, {(i,): c for i, c in enumerate(al)}))

    def eval_at(self, point):
        from paracomplex.gpx import GenEndo

        def ev(m):
            return [[c.eval_at(point) for c in row] for row in m]

        return GenEndo(ev(self.a), ev(self.b), ev(self.c), ev(self.d))


def _zero_mat(n):
    return [[RatFunc.zero(n) for _ in range(n)] for _ in range(n)]


def _identity_mat(n):
    m = _zero_mat(n)
    for i in range(n):
        m[i][i] = RatFunc.one(n)
    return m


def patch_trivial(nvars: int) -> PatchGenStructure:
    ident = _identity_mat(nvars)
    return PatchGenStructure(ident, _zero_mat(nvars), _zero_mat(nvars),
                             [[-c for c in row] for row in _identity_mat(nvars)],
                             kind="trivial")


def patch_omega(omega: KForm) -> PatchGenStructure:
    """K_omega(X + a) = omega^{-1}(a) + omega(X) for a nondegenerate 2-form field."""
    if omega.degree != 2:
        raise WrongDegree("omega must be a 2-form")
    n = omega.nvars
    full = [[omega.get((i, j)) for j in range(n)] for i in range(n)]
    omega_map = [[full[j][i] for j in range(n)] for i in range(n)]  # transpose
    try:
        omega_inv = mat_inv(omega_map)
    except ZeroDivisionError as exc:
        from paracomplex.gpx import DegenerateOmega

        raise DegenerateOmega("omega field is degenerate") from exc
    return PatchGenStructure(_zero_mat(n), omega_inv, omega_map, _zero_mat(n),
                             kind="omega")


def patch_pi(pi: BiVectorField) -> PatchGenStructure:
    """K_pi(X + a) = (X - i_a pi) - a."""
    n = pi.nvars
    return PatchGenStructure(_identity_mat(n), pi.full_matrix(), _zero_mat(n),
                             [[-c for c in row] for row in _identity_mat(n)],
                             kind="pi")


def patch_product(p: list) -> PatchGenStructure:
    """K_P(X + a) = P X - P* a for a field of product structures."""
    n = len(p)
    from paracomplex.linalg import mat_mul

    if not mat_eq(mat_mul(p, p), _identity_mat(n)):
        raise ValueError("P^2 != Id as a rational-function identity")
    pt = [[p[j][i] for j in range(n)] for i in range(n)]
    return PatchGenStructure(p, _zero_mat(n), _zero_mat(n),
                             [[-c for c in row] for row in pt], kind="product")


# -- Nijenhuis tensors -----------------------------------------------------------------


def gen_nijenhuis(k: PatchGenStructure, a: GenSection, b: GenSection) -> GenSection:
    """N(A, B) = [A,B] + [KA, KB] - K[KA, B] - K[A, KB] (Courant brackets)."""
    ka, kb = k.apply(a), k.apply(b)
    return (courant_bracket(a, b) + courant_bracket(ka, kb)
            - k.apply(courant_bracket(ka, b)) - k.apply(courant_bracket(a, kb)))


def classical_nijenhuis(p: list, x: VField, y: VField) -> VField:
    """N(X, Y) = [X,Y] + [PX, PY] - P[PX, Y] - P[X, PY] for an endo field P."""
    def apply_p(v: VField) -> VField:
        return VField([sum((p[i][j] * v.components[j] for j in range(1, len(p))),
                           start=p[i][0] * v.components[0]) for i in range(len(p))])

    px, py = apply_p(x), apply_p(y)
    return (lie_bracket(x, y) + lie_bracket(px, py)
            - apply_p(lie_bracket(px, y)) - apply_p(lie_bracket(x, py)))


def frame_sections(nvars: int) -> list[GenSection]:
    """The 4n coordinate-frame sections (d_i + 0) and (0 + dx^j)."""
    out = [GenSection.vector(VField.coordinate(i, nvars)) for i in range(nvars)]
    out += [GenSection.form(KForm.dx(i, nvars)) for i in range(nvars)]
    return out


def gen_nijenhuis_frame_sweep(k: PatchGenStructure):
    """Evaluate N on all frame-section pairs; returns (all_zero, witnesses)
    where witnesses maps pair indices to the nonzero section."""
    frames = frame_sections(k.nvars)
    witnesses = {}
    for i in range(len(frames)):
        for j in range(i + 1, len(frames)):
            n = gen_nijenhuis(k, frames[i], frames[j])
            if not n.is_zero():
                witnesses[(i, j)] = n
    return not witnesses, witnesses


# -- Poisson condition ----------------------------------------------------------------


def poisson_jacobiator(pi: BiVectorField) -> dict:
    """Jacobiator components sum_l (pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki}
    + pi^{lk} d_l pi^{ij}) for i < j < k; empty dict iff Poisson."""
    n = pi.nvars
    out = {}
    for i, j, k in itertools.combinations(range(n), 3):
        total = RatFunc.zero(n)
        for l in range(n):
            total = total + pi.get(l, i) * pi.get(j, k).partial(l)
            total = total + pi.get(l, j) * pi.get(k, i).partial(l)
            total = total + pi.get(l, k) * pi.get(i, j).partial(l)
        if not total.is_zero():
            out[(i, j, k)] = total
    return out


def is_poisson(pi: BiVectorField) -> bool:
    return not poisson_jacobiator(pi)


# -- B-transform bracket law -------------------------------------------------------------


def b_transform_section(theta: KForm, a: GenSection) -> GenSection:
    """e^Theta: X + a -> X + a + i_X Theta."""
    return GenSection(a.x, a.alpha + interior(a.x, theta))


def b_bracket_residual(theta: KForm, a: GenSection, b: GenSection) -> GenSection:
    """[e^T A, e^T B] - (e^T [A,B] - i_X i_Y dTheta); identically zero."""
    if theta.degree != 2:
        raise WrongDegree("Theta must be a 2-form")
    lhs = courant_bracket(b_transform_section(theta, a), b_transform_section(theta, b))
    correction = double_contract(ext_deriv(theta), a.x, b.x)
    rhs = b_transform_section(theta, courant_bracket(a, b)) - GenSection.form(correction)
    return lhs - rhs


# -- integrability dispatch ----------------------------------------------------------------


@dataclass
class IntegrabilityReport:
    kind: str
    integrable: bool
    criterion: str
    witness: dict | None
    frame_sweep_zero: bool


def integrability_report(kind: str, data, nvars: int | None = None) -> IntegrabilityReport:
    """Closed-form integrability criterion per structure kind, plus the
    generalized-Nijenhuis frame-pair sweep (exact identity check)."""
    if kind == "trivial":
        k = patch_trivial(nvars if nvars is not None else data)
        sweep, _ = gen_nijenhuis_frame_sweep(k)
        return IntegrabilityReport(kind, True, "trivial", None, sweep)
    if kind == "omega":
        domega = ext_deriv(data)
        k = patch_omega(data)
        sweep, _ = gen_nijenhuis_frame_sweep(k)
        witness = None
        if not domega.is_zero():
            idx, c = next(iter(sorted(domega.comps.items())))
            witness = {"d_omega_component": [i + 1 for i in idx], "value": c.to_str()}
        return IntegrabilityReport(kind, domega.is_zero(), "d_omega_zero", witness, sweep)
    if kind == "pi":
        jac = poisson_jacobiator(data)
        k = patch_pi(data)
        sweep, _ = gen_nijenhuis_frame_sweep(k)
        witness = None
        if jac:
            (idx, c) = next(iter(sorted(jac.items())))
            witness = {"jacobiator_triple": [i + 1 for i in idx], "value": c.to_str()}
        return IntegrabilityReport(kind, not jac, "pi_poisson", witness, sweep)
    if kind == "product":
        n = len(data)
        k = patch_product(data)
        sweep, _ = gen_nijenhuis_frame_sweep(k)
        witness = None
        integrable = True
        for i in range(n):
            for j in range(i + 1, n):
                nij = classical_nijenhuis(data, VField.coordinate(i, n),
                                          VField.coordinate(j, n))
                if not nij.is_zero():
                    integrable = False
                    witness = {"frame_pair": [i + 1, j + 1],
                               "value": [c.to_str() for c in nij.components]}
                    break
            if not integrable:
                break
        return IntegrabilityReport(kind, integrable, "p_nijenhuis_zero", witness, sweep)
    raise ValueError(f"unknown structure kind {kind!r}")
