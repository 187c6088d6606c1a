"""Detection of structured 4x4 families and extraction of the tensor-basis
parameters their closed-form exponentials consume.

Every family occupies a fixed subset of the 16 tensor-basis coefficients,
sometimes with ties among entries (the Toeplitz cases) or a rank-1 block (the
anti-diagonal product and special normal cases).  The basis matrices are
pairwise orthogonal with Frobenius norm 2, so projecting the coefficient
table c onto a family's model and measuring 2*||c - c_model||_F gives the
exact matrix-space distance to that family.  Acceptance is therefore a single
comparison against tol*max(1, ||A||_F) per family, with no reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, ClassVar, Optional

import numpy as np

from .hxh import R4, HxHElement, from_matrix

Vec3 = tuple[float, float, float]
CVec3 = tuple[complex, complex, complex]

DEFAULT_TOL = 1e-9

# pure-basis indexes into the coefficient table (0 is the scalar slot)
_I, _J, _K = 1, 2, 3

# symmetric form e_x (x) e_y backing each Lie-family class
LIE_FORMS = {1: (_I, _I), 2: (_J, _J), 3: (_K, _K), 4: (_K, _I),
             5: (_K, _J), 6: (_I, _J), 7: (_I, _K), 8: (_J, _K)}

# skew form backing each Jordan-family class: ("left", x) is e_x (x) 1,
# ("right", y) is 1 (x) e_y
JORDAN_FORMS = {1: ("right", _K), 2: ("right", _I), 3: ("left", _I),
                4: ("left", _J), 5: ("left", _K)}


def _vec(x) -> Vec3:
    return (float(x[0]), float(x[1]), float(x[2]))


def _cvec(x) -> CVec3:
    return (complex(x[0]), complex(x[1]), complex(x[2]))


def _complement(w: int) -> tuple[int, int]:
    return tuple(m for m in (_I, _J, _K) if m != w)


@dataclass(frozen=True)
class SkewSymmetric:
    """Coefficient support p(x)1 + 1(x)q with p, q pure."""
    tag: ClassVar[str] = "SkewSymmetric"
    p: Vec3
    q: Vec3

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[1:, 0] = self.p
        u.c[0, 1:] = self.q
        return u.to_matrix()


@dataclass(frozen=True)
class Perskewsymmetric:
    """p(x)i + alpha(j(x)1) + j(x)q + beta(1(x)i), p _|_ j, q _|_ i."""
    tag: ClassVar[str] = "Perskewsymmetric"
    p: Vec3
    alpha: float
    q: Vec3
    beta: float

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[1:, _I] = self.p
        u.c[_J, 0] = self.alpha
        u.c[_J, 1:] += np.asarray(self.q)
        u.c[0, _I] += self.beta
        return u.to_matrix()


@dataclass(frozen=True)
class SkewHamiltonian:
    """b(1(x)1) + p(x)j + 1(x)(c i + d k)."""
    tag: ClassVar[str] = "SkewHamiltonian"
    b: float
    p: Vec3
    c: float
    d: float

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[0, 0] = self.b
        u.c[1:, _J] = self.p
        u.c[0, _I] = self.c
        u.c[0, _K] = self.d
        return u.to_matrix()


@dataclass(frozen=True)
class Jordan:
    """One of five classes self-adjoint for a skew form.

    For a left form e_x(x)1 the element is a(1(x)1) + (b e_u + c e_v)(x)1
    + e_x(x)v with (u, v) the complement pair of x; right forms mirror the
    slots. `vec` is the unconstrained pure factor in either case.
    """
    tag_base: ClassVar[str] = "Jordan"
    k: int
    a: float
    b: float
    c: float
    vec: Vec3

    @property
    def tag(self) -> str:
        return f"Jordan{self.k}"

    def reconstruct(self) -> np.ndarray:
        side, w = JORDAN_FORMS[self.k]
        m1, m2 = _complement(w)
        u = HxHElement.zero()
        u.c[0, 0] = self.a
        if side == "left":
            u.c[m1, 0] = self.b
            u.c[m2, 0] = self.c
            u.c[w, 1:] = self.vec
        else:
            u.c[0, m1] = self.b
            u.c[0, m2] = self.c
            u.c[1:, w] = self.vec
        return u.to_matrix()


@dataclass(frozen=True)
class Lie:
    """One of eight classes skew for a symmetric form e_x(x)e_y.

    Element: a(1(x)e_y) + p(x)e_y + b(e_x(x)1) + e_x(x)q with p _|_ e_x and
    q _|_ e_y. Class 1 is the set of matrices preserving diag(1,1,-1,-1).
    """
    tag_base: ClassVar[str] = "Lie"
    k: int
    a: float
    b: float
    p: Vec3
    q: Vec3

    @property
    def tag(self) -> str:
        return f"Lie{self.k}"

    def reconstruct(self) -> np.ndarray:
        x, y = LIE_FORMS[self.k]
        u = HxHElement.zero()
        u.c[0, y] = self.a
        u.c[x, 0] = self.b
        u.c[1:, y] += np.asarray(self.p)
        u.c[x, 1:] += np.asarray(self.q)
        return u.to_matrix()


@dataclass(frozen=True)
class HamSymPersym:
    """beta(j(x)i) + gamma(i(x)k) + delta(k(x)k): simultaneously Hamiltonian,
    symmetric and persymmetric."""
    tag: ClassVar[str] = "HamSymPersym"
    beta: float
    gamma: float
    delta: float

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[_J, _I] = self.beta
        u.c[_I, _K] = self.gamma
        u.c[_K, _K] = self.delta
        return u.to_matrix()


@dataclass(frozen=True)
class SymToeplitzTridiag:
    """Symmetric tridiagonal Toeplitz: a on the diagonal, b beside it."""
    tag: ClassVar[str] = "SymToeplitzTridiag"
    a: float
    b: float

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[0, 0] = self.a
        u.c[_J, _I] = self.b / 2.0
        u.c[_I, _J] = self.b / 2.0
        u.c[_K, _J] = self.b
        return u.to_matrix()


@dataclass(frozen=True)
class SymToeplitzS13Zero:
    """a(1(x)1) + b(j(x)i) + c(i(x)j) + b(k(x)j): the variant whose second
    super- and subdiagonal vanish."""
    tag: ClassVar[str] = "SymToeplitzS13Zero"
    a: float
    b: float
    c: float

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[0, 0] = self.a
        u.c[_J, _I] = self.b
        u.c[_I, _J] = self.c
        u.c[_K, _J] = self.b
        return u.to_matrix()


@dataclass(frozen=True)
class SpecialNormal:
    """Normal matrix whose skew part splits as s(x)1 + 1(x)t with unequal
    norms; the symmetric part is then forced to a(1(x)1) + s_hat(x)t_hat.

    s_hat equals s whenever s is nonzero; it is kept as a separate field so
    the s = 0 subcase (symmetric part still rank one) stays representable.
    """
    tag: ClassVar[str] = "SpecialNormal"
    a: float
    s: Vec3
    t_hat: Vec3
    t: Vec3
    s_hat: Vec3

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[0, 0] = self.a
        u.c[1:, 1:] = np.outer(self.s_hat, self.t_hat)
        u.c[1:, 0] += np.asarray(self.s)
        u.c[0, 1:] += np.asarray(self.t)
        return u.to_matrix()


@dataclass(frozen=True)
class BisymmetricRS:
    """A = R4 S with S = a(1(x)1) + eps(j(x)i) + (alpha i + beta k)(x)
    (gamma j + delta k); symmetric, persymmetric, not Toeplitz."""
    tag: ClassVar[str] = "BisymmetricRS"
    a: float
    eps: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    def symmetric_factor(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[0, 0] = self.a
        u.c[_J, _I] = self.eps
        u.c[_I, _J] = self.alpha * self.gamma
        u.c[_I, _K] = self.alpha * self.delta
        u.c[_K, _J] = self.beta * self.gamma
        u.c[_K, _K] = self.beta * self.delta
        return u.to_matrix()

    def reconstruct(self) -> np.ndarray:
        return R4 @ self.symmetric_factor()


@dataclass(frozen=True)
class SymmetricGeneral:
    """Any symmetric matrix: a(1(x)1) + p(x)i + q(x)j + r(x)k."""
    tag: ClassVar[str] = "SymmetricGeneral"
    a: float
    p: Vec3
    q: Vec3
    r: Vec3

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero()
        u.c[0, 0] = self.a
        u.c[1:, _I] = self.p
        u.c[1:, _J] = self.q
        u.c[1:, _K] = self.r
        return u.to_matrix()


@dataclass(frozen=True)
class ComplexSO4:
    """Complex skew-symmetric: left(x)1 + 1(x)right with complex triples."""
    tag: ClassVar[str] = "ComplexSO4"
    left: CVec3
    right: CVec3

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero(complex_scalars=True)
        u.c[1:, 0] = self.left
        u.c[0, 1:] = self.right
        return u.to_matrix()


@dataclass(frozen=True)
class ComplexPerskew:
    """Complex-coefficient analogue of Perskewsymmetric."""
    tag: ClassVar[str] = "ComplexPerskew"
    p: CVec3
    alpha: complex
    q: CVec3
    beta: complex

    def reconstruct(self) -> np.ndarray:
        u = HxHElement.zero(complex_scalars=True)
        u.c[1:, _I] = self.p
        u.c[_J, 0] = self.alpha
        u.c[_J, 1:] += np.asarray(self.q)
        u.c[0, _I] += self.beta
        return u.to_matrix()


StructureClass = (SkewSymmetric | Perskewsymmetric | SkewHamiltonian | Jordan
                  | Lie | HamSymPersym | SymToeplitzTridiag | SymToeplitzS13Zero
                  | SpecialNormal | BisymmetricRS | SymmetricGeneral
                  | ComplexSO4 | ComplexPerskew)


def _residual(c: np.ndarray, model: np.ndarray) -> float:
    return 2.0 * float(np.linalg.norm(c - model))


def _accept(inst, c, model, tol_abs):
    res = _residual(c, model)
    return (inst if res <= tol_abs else None), res


def _x_skew_symmetric(a, u, tol, tol_abs):
    c = u.c
    model = np.zeros((4, 4))
    model[1:, 0] = c[1:, 0]
    model[0, 1:] = c[0, 1:]
    return _accept(SkewSymmetric(_vec(c[1:, 0]), _vec(c[0, 1:])), c, model, tol_abs)


def _x_skew_hamiltonian(a, u, tol, tol_abs):
    c = u.c
    model = np.zeros((4, 4))
    for idx in ((0, 0), (_I, _J), (_J, _J), (_K, _J), (0, _I), (0, _K)):
        model[idx] = c[idx]
    inst = SkewHamiltonian(float(c[0, 0]), _vec(c[1:, _J]),
                           float(c[0, _I]), float(c[0, _K]))
    return _accept(inst, c, model, tol_abs)


def _lie_model(c: np.ndarray, x: int, y: int):
    model = np.zeros((4, 4))
    model[0, y] = c[0, y]
    model[x, 0] = c[x, 0]
    for m in (_I, _J, _K):
        if m != x:
            model[m, y] = c[m, y]
        if m != y:
            model[x, m] = c[x, m]
    p = c[1:, y].copy()
    p[x - 1] = 0.0
    q = c[x, 1:].copy()
    q[y - 1] = 0.0
    return model, float(c[0, y]), float(c[x, 0]), p, q


def _x_perskewsymmetric(a, u, tol, tol_abs):
    model, beta, alpha, p, q = _lie_model(u.c, _J, _I)
    inst = Perskewsymmetric(_vec(p), alpha, _vec(q), beta)
    return _accept(inst, u.c, model, tol_abs)


def _make_lie_extractor(k: int):
    x, y = LIE_FORMS[k]

    def extract(a, u, tol, tol_abs):
        model, a_coef, b_coef, p, q = _lie_model(u.c, x, y)
        inst = Lie(k, a_coef, b_coef, _vec(p), _vec(q))
        return _accept(inst, u.c, model, tol_abs)

    return extract


def _make_jordan_extractor(k: int):
    side, w = JORDAN_FORMS[k]
    m1, m2 = _complement(w)

    def extract(a, u, tol, tol_abs):
        c = u.c
        model = np.zeros((4, 4))
        model[0, 0] = c[0, 0]
        if side == "left":
            model[m1, 0] = c[m1, 0]
            model[m2, 0] = c[m2, 0]
            model[w, 1:] = c[w, 1:]
            inst = Jordan(k, float(c[0, 0]), float(c[m1, 0]), float(c[m2, 0]),
                          _vec(c[w, 1:]))
        else:
            model[0, m1] = c[0, m1]
            model[0, m2] = c[0, m2]
            model[1:, w] = c[1:, w]
            inst = Jordan(k, float(c[0, 0]), float(c[0, m1]), float(c[0, m2]),
                          _vec(c[1:, w]))
        return _accept(inst, c, model, tol_abs)

    return extract


def _x_ham_sym_persym(a, u, tol, tol_abs):
    c = u.c
    model = np.zeros((4, 4))
    for idx in ((_J, _I), (_I, _K), (_K, _K)):
        model[idx] = c[idx]
    inst = HamSymPersym(float(c[_J, _I]), float(c[_I, _K]), float(c[_K, _K]))
    return _accept(inst, c, model, tol_abs)


def _x_toeplitz_tridiag(a, u, tol, tol_abs):
    c = u.c
    # least-squares fit of the single off-diagonal parameter to its three
    # tied slots (two carry b/2, one carries b)
    b = (c[_J, _I] + c[_I, _J] + 2.0 * c[_K, _J]) / 3.0
    model = np.zeros((4, 4))
    model[0, 0] = c[0, 0]
    model[_J, _I] = b / 2.0
    model[_I, _J] = b / 2.0
    model[_K, _J] = b
    return _accept(SymToeplitzTridiag(float(c[0, 0]), float(b)), c, model, tol_abs)


def _x_toeplitz_s13(a, u, tol, tol_abs):
    c = u.c
    b = (c[_J, _I] + c[_K, _J]) / 2.0
    model = np.zeros((4, 4))
    model[0, 0] = c[0, 0]
    model[_J, _I] = b
    model[_K, _J] = b
    model[_I, _J] = c[_I, _J]
    inst = SymToeplitzS13Zero(float(c[0, 0]), float(b), float(c[_I, _J]))
    return _accept(inst, c, model, tol_abs)


def _x_special_normal(a, u, tol, tol_abs):
    c = u.c
    s = c[1:, 0].copy()
    t = c[0, 1:].copy()
    ns, nt = np.linalg.norm(s), np.linalg.norm(t)
    if abs(ns - nt) <= tol * (ns + nt):
        return None, np.inf

    blk = c[1:, 1:]
    scale = max(1.0, float(np.linalg.norm(c)))
    if ns > 1e-12 * scale:
        s_hat = s
        t_hat = blk.T @ s / (ns * ns)
    else:
        col = int(np.argmax(np.linalg.norm(blk, axis=0)))
        cn = np.linalg.norm(blk[:, col])
        if cn > 1e-14 * scale:
            s_hat = blk[:, col] / cn
            t_hat = blk.T @ s_hat
        else:
            s_hat = np.zeros(3)
            t_hat = np.zeros(3)

    model = np.zeros((4, 4))
    model[0, 0] = c[0, 0]
    model[1:, 0] = s
    model[0, 1:] = t
    model[1:, 1:] = np.outer(s_hat, t_hat)
    res = _residual(c, model)
    if res > tol_abs:
        return None, res

    sym = (a + a.T) / 2.0
    skw = (a - a.T) / 2.0
    comm = np.linalg.norm(sym @ skw - skw @ sym)
    if comm > tol * (1.0 + np.linalg.norm(a)) ** 2:
        return None, max(res, float(comm))
    inst = SpecialNormal(float(c[0, 0]), _vec(s), _vec(t_hat), _vec(t), _vec(s_hat))
    return inst, res


def _x_bisymmetric_rs(a, u, tol, tol_abs):
    s_mat = R4 @ a
    cs = from_matrix(s_mat).c
    blk = np.array([[cs[_I, _J], cs[_I, _K]], [cs[_K, _J], cs[_K, _K]]])

    col = int(np.argmax(np.linalg.norm(blk, axis=0)))
    cn = np.linalg.norm(blk[:, col])
    if cn > 1e-14 * max(1.0, float(np.linalg.norm(cs))):
        ab = blk[:, col] / cn
        gd = blk.T @ ab
    else:
        ab = np.zeros(2)
        gd = np.zeros(2)

    model = np.zeros((4, 4))
    model[0, 0] = cs[0, 0]
    model[_J, _I] = cs[_J, _I]
    model[_I, _J] = ab[0] * gd[0]
    model[_I, _K] = ab[0] * gd[1]
    model[_K, _J] = ab[1] * gd[0]
    model[_K, _K] = ab[1] * gd[1]
    inst = BisymmetricRS(float(cs[0, 0]), float(cs[_J, _I]),
                         float(ab[0]), float(ab[1]), float(gd[0]), float(gd[1]))
    return _accept(inst, cs, model, tol_abs)


def _x_symmetric_general(a, u, tol, tol_abs):
    c = u.c
    model = np.zeros((4, 4))
    model[0, 0] = c[0, 0]
    model[1:, 1:] = c[1:, 1:]
    inst = SymmetricGeneral(float(c[0, 0]), _vec(c[1:, _I]), _vec(c[1:, _J]),
                            _vec(c[1:, _K]))
    return _accept(inst, c, model, tol_abs)


def _x_complex_so4(a, u, tol, tol_abs):
    c = u.c
    model = np.zeros((4, 4), dtype=complex)
    model[1:, 0] = c[1:, 0]
    model[0, 1:] = c[0, 1:]
    return _accept(ComplexSO4(_cvec(c[1:, 0]), _cvec(c[0, 1:])), c, model, tol_abs)


def _x_complex_perskew(a, u, tol, tol_abs):
    c = u.c
    model = np.zeros((4, 4), dtype=complex)
    model[0, _I] = c[0, _I]
    model[_J, 0] = c[_J, 0]
    for m in (_I, _J, _K):
        if m != _J:
            model[m, _I] = c[m, _I]
        if m != _I:
            model[_J, m] = c[_J, m]
    p = c[1:, _I].copy()
    p[_J - 1] = 0.0
    q = c[_J, 1:].copy()
    q[_I - 1] = 0.0
    inst = ComplexPerskew(_cvec(p), complex(c[_J, 0]), _cvec(q), complex(c[0, _I]))
    return _accept(inst, c, model, tol_abs)


Extractor = Callable[[np.ndarray, HxHElement, float, float],
                     tuple[Optional[StructureClass], float]]

# dispatch priority: cheapest and most specific first, the svd3-backed
# symmetric catch-all last
REAL_REGISTRY: list[tuple[str, Extractor]] = (
    [("SkewSymmetric", _x_skew_symmetric),
     ("SkewHamiltonian", _x_skew_hamiltonian),
     ("Perskewsymmetric", _x_perskewsymmetric)]
    + [(f"Lie{k}", _make_lie_extractor(k)) for k in range(1, 9)]
    + [(f"Jordan{k}", _make_jordan_extractor(k)) for k in range(1, 6)]
    + [("HamSymPersym", _x_ham_sym_persym),
       ("SymToeplitzTridiag", _x_toeplitz_tridiag),
       ("SymToeplitzS13Zero", _x_toeplitz_s13),
       ("SpecialNormal", _x_special_normal),
       ("BisymmetricRS", _x_bisymmetric_rs),
       ("SymmetricGeneral", _x_symmetric_general)]
)

COMPLEX_REGISTRY: list[tuple[str, Extractor]] = [
    ("ComplexSO4", _x_complex_so4),
    ("ComplexPerskew", _x_complex_perskew),
]

EXTRACTORS: dict[str, Extractor] = dict(REAL_REGISTRY + COMPLEX_REGISTRY)


def as_real_if_possible(a: np.ndarray) -> np.ndarray:
    """Drop a vanishing imaginary part so complex-typed real data takes the
    real classification path."""
    if not np.iscomplexobj(a):
        return a
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.max(np.abs(a.imag)) <= 1e-14 * scale:
        return a.real.copy()
    return a


def classify(a_matrix, tol: float = DEFAULT_TOL) -> list[StructureClass]:
    """All structured families containing A, in dispatch-priority order.

    An empty list means no closed-form route applies (the caller falls back
    to a series exponential).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    a = np.asarray(a_matrix)
    if a.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    a = as_real_if_possible(a)
    u = from_matrix(a)
    tol_abs = tol * max(1.0, float(np.linalg.norm(a)))
    registry = COMPLEX_REGISTRY if np.iscomplexobj(a) else REAL_REGISTRY
    found = []
    for _tag, extract in registry:
        inst, _res = extract(a, u, tol, tol_abs)
        if inst is not None:
            found.append(inst)
    return found


def extract_symmetric_rep(a_matrix) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Split a symmetric matrix into (a, p, q, r): trace part plus the three
    pure-pure columns. Rejects asymmetric input."""
    a = np.asarray(a_matrix, dtype=float)
    if a.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    if np.linalg.norm(a - a.T) > 1e-12 * max(1.0, np.linalg.norm(a)):
        raise ValueError("matrix is not symmetric")
    c = from_matrix((a + a.T) / 2.0).c
    return float(c[0, 0]), c[1:, _I].copy(), c[1:, _J].copy(), c[1:, _K].copy()


def extract_special_normal(a_matrix, tol: float = DEFAULT_TOL) -> Optional[SpecialNormal]:
    a = np.asarray(a_matrix, dtype=float)
    if a.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    u = from_matrix(a)
    tol_abs = tol * max(1.0, float(np.linalg.norm(a)))
    inst, _res = _x_special_normal(a, u, tol, tol_abs)
    return inst
