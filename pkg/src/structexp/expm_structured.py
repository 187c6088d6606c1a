"""Closed-form exponentials for the structured 4x4 families.

Every formula here follows one pattern: split the element into groups that
commute with each other while the members inside a group pairwise
anticommute, so each group squares to a scalar multiple of 1(x)1 and

    exp(u) = phi_c(-mu) (1(x)1) + phi_s(-mu) u,    mu = scalar_square(u).

The phi functions pick cos/cosh branches from the sign of mu, so no formula
hard-codes a trigonometric choice; when an extraction hands us a group whose
square is not scalar, that is a defect, not an input error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classify import (DEFAULT_TOL, EXTRACTORS, JORDAN_FORMS, LIE_FORMS,
                       BisymmetricRS, ComplexPerskew, ComplexSO4,
                       HamSymPersym, Jordan, Lie, Perskewsymmetric,
                       SkewHamiltonian, SkewSymmetric, SpecialNormal,
                       SymmetricGeneral, SymToeplitzS13Zero,
                       SymToeplitzTridiag, as_real_if_possible, classify)
from .hxh import R4, HxHElement, from_matrix, scalar_square
from .oracle import expm_series, rel_error
from .quat import Quaternion, quat_exp
from .smalllin import phi_c, phi_s, svd3


class ClosedFormDefect(RuntimeError):
    """A group element whose square should be scalar is not: the caller's
    decomposition violated its own constraints."""


class ForcedClassMismatch(ValueError):
    def __init__(self, tag: str, residual: float):
        super().__init__(f"matrix is not in class {tag} (residual {residual:.3e})")
        self.tag = tag
        self.residual = residual


@dataclass(frozen=True)
class ExpResult:
    value: np.ndarray
    route: str
    verified: Optional[float] = None


def _exp_scalar_square(u: HxHElement) -> HxHElement:
    mu = scalar_square(u)
    if mu is None:
        raise ClosedFormDefect("group square is not a multiple of the identity")
    one = HxHElement.one(u.scalar_kind == "complex")
    return phi_c(-mu) * one + phi_s(-mu) * u


def exp_skew_symmetric(p, q) -> np.ndarray:
    """exp of the skew-symmetric matrix with support p(x)1 + 1(x)q: the two
    slots commute, and each exponentiates to a unit quaternion."""
    x = quat_exp(Quaternion.pure(p))
    y = quat_exp(Quaternion.pure(q))
    return HxHElement.from_pair(x.components, y.components).to_matrix()


def _exp_two_groups(x: int, y: int, a, b, p, q, complex_scalars: bool = False) -> np.ndarray:
    """Shared path for the symmetric-form families: element a(1(x)e_y) +
    p(x)e_y + b(e_x(x)1) + e_x(x)q with p _|_ e_x, q _|_ e_y.  The two groups
    (p(x)e_y + b e_x(x)1) and (e_x(x)q + a 1(x)e_y) commute."""
    g1 = HxHElement.zero(complex_scalars)
    g1.c[1:, y] = p
    g1.c[x, 0] += b
    g2 = HxHElement.zero(complex_scalars)
    g2.c[x, 1:] = q
    g2.c[0, y] += a
    return (_exp_scalar_square(g1) * _exp_scalar_square(g2)).to_matrix()


def exp_perskewsymmetric(p, alpha, q, beta) -> np.ndarray:
    """p _|_ j (no j component), q _|_ i; result G satisfies G^T R4 G = R4."""
    return _exp_two_groups(2, 1, beta, alpha, p, q)


def exp_lie(k: int, a, b, p, q) -> np.ndarray:
    x, y = LIE_FORMS[k]
    return _exp_two_groups(x, y, a, b, p, q)


def exp_skew_hamiltonian(b, p, c, d) -> np.ndarray:
    u = HxHElement.zero()
    u.c[1:, 2] = p
    u.c[0, 1] = c
    u.c[0, 3] = d
    return math.exp(b) * _exp_scalar_square(u).to_matrix()


def exp_jordan(k: int, a, b, c, vec) -> np.ndarray:
    """The five skew-form self-adjoint classes: scalar part a splits off and
    the rest squares to a scalar."""
    side, w = JORDAN_FORMS[k]
    m1, m2 = (m for m in (1, 2, 3) if m != w)
    u = HxHElement.zero()
    if side == "left":
        u.c[m1, 0] = b
        u.c[m2, 0] = c
        u.c[w, 1:] = vec
    else:
        u.c[0, m1] = b
        u.c[0, m2] = c
        u.c[1:, w] = vec
    return math.exp(a) * _exp_scalar_square(u).to_matrix()


def exp_ham_sym_persym(beta, gamma, delta) -> np.ndarray:
    x = HxHElement.zero()
    x.c[2, 1] = beta
    yz = HxHElement.zero()
    yz.c[1, 3] = gamma
    yz.c[3, 3] = delta
    return (_exp_scalar_square(x) * _exp_scalar_square(yz)).to_matrix()


def exp_sym_toeplitz_tridiag(a, b) -> np.ndarray:
    y = HxHElement.zero()
    y.c[2, 1] = b / 2.0
    zw = HxHElement.zero()
    zw.c[1, 2] = b / 2.0
    zw.c[3, 2] = b
    prod = _exp_scalar_square(y) * _exp_scalar_square(zw)
    return math.exp(a) * prod.to_matrix()


def exp_sym_toeplitz_s13(a, b, c) -> np.ndarray:
    y = HxHElement.zero()
    y.c[2, 1] = b
    zw = HxHElement.zero()
    zw.c[1, 2] = c
    zw.c[3, 2] = b
    prod = _exp_scalar_square(y) * _exp_scalar_square(zw)
    return math.exp(a) * prod.to_matrix()


def exp_special_normal(sn: SpecialNormal) -> np.ndarray:
    """Three commuting factors: the symmetric rank-one part, then the two
    halves of the skew part as left/right unit-quaternion actions."""
    sym = HxHElement.zero()
    sym.c[1:, 1:] = np.outer(sn.s_hat, sn.t_hat)
    f1 = math.exp(sn.a) * _exp_scalar_square(sym)
    left = quat_exp(Quaternion.pure(sn.s))
    right = quat_exp(Quaternion.pure(sn.t))
    f2 = HxHElement.from_pair(left.components, (1.0, 0.0, 0.0, 0.0))
    f3 = HxHElement.from_pair((1.0, 0.0, 0.0, 0.0), right.components)
    return (f1 * f2 * f3).to_matrix()


def exp_bisymmetric_rs(params: BisymmetricRS) -> np.ndarray:
    """A = R4 S: since R4 commutes with S and squares to I,
    exp(A) = exp(a R4) (cosh(S0) + R4 sinh(S0)) with S0 the trace-free part
    of S, split into commuting scalar-square pieces X and Y."""
    x = HxHElement.zero()
    x.c[2, 1] = params.eps
    y = HxHElement.zero()
    y.c[1:, 1:] = np.outer((params.alpha, 0.0, params.beta),
                           (0.0, params.gamma, params.delta))
    mu_x = scalar_square(x)
    mu_y = scalar_square(y)
    if mu_x is None or mu_y is None:
        raise ClosedFormDefect("bisymmetric factor square is not scalar")

    one = HxHElement.one()
    cosh_part = (phi_c(-mu_x) * phi_c(-mu_y)) * one \
        + (phi_s(-mu_x) * phi_s(-mu_y)) * (x * y)
    sinh_part = (phi_s(-mu_x) * phi_c(-mu_y)) * x \
        + (phi_s(-mu_y) * phi_c(-mu_x)) * y
    # exp(a R4) = cosh(a) I + sinh(a) R4, since (a R4)^2 = a^2 I
    f1 = math.cosh(params.a) * np.eye(4) + math.sinh(params.a) * R4
    f2 = cosh_part.to_matrix() + R4 @ sinh_part.to_matrix()
    return f1 @ f2


def exp_symmetric_general(a, p, q, r) -> np.ndarray:
    """Rotate [p|q|r] to diagonal via its SVD: the matrix becomes a sum of
    three commuting rank-one terms sigma_i u_i(x)v_i, each scalar-square."""
    f = svd3(np.column_stack([p, q, r]))
    acc = HxHElement.one()
    for i in range(3):
        term = HxHElement.zero()
        term.c[1:, 1:] = f.sigma[i] * np.outer(f.u[:, i], f.v[:, i])
        acc = acc * _exp_scalar_square(term)
    return math.exp(a) * acc.to_matrix()


def exp_so4_complex(a1, b1, g1, a2, b2, g2) -> np.ndarray:
    """Complex skew-symmetric support: same two commuting slots as the real
    case, with complex coefficients routed through the complex phi branch."""
    left = HxHElement.zero(complex_scalars=True)
    left.c[1:, 0] = (a1, b1, g1)
    right = HxHElement.zero(complex_scalars=True)
    right.c[0, 1:] = (a2, b2, g2)
    return (_exp_scalar_square(left) * _exp_scalar_square(right)).to_matrix()


def exp_p4_complex(p, alpha, q, beta) -> np.ndarray:
    return _exp_two_groups(2, 1, beta, alpha, p, q, complex_scalars=True)


@dataclass(frozen=True)
class MinimalPolySkew:
    coefficients: tuple[float, float, float, float, float]
    degree: int


def minimal_poly_skewT(s, t) -> MinimalPolySkew:
    """Annihilating quartic of T = s(x)1 + 1(x)t (both slots pure):
    x^4 + 2(|s|^2+|t|^2) x^2 + (|s|^2-|t|^2)^2, with the degree of the true
    minimal polynomial reported alongside (drops at s=0, t=0, |s|=|t|)."""
    ns = float(np.linalg.norm(s))
    nt = float(np.linalg.norm(t))
    coeffs = (1.0, 0.0, 2.0 * (ns * ns + nt * nt), 0.0,
              (ns * ns - nt * nt) ** 2)
    if ns == 0.0 and nt == 0.0:
        degree = 1
    elif ns == 0.0 or nt == 0.0:
        degree = 2
    elif abs(ns - nt) <= 1e-12 * max(ns, nt):
        degree = 3
    else:
        degree = 4
    return MinimalPolySkew(coeffs, degree)


def exp_structured_class(inst) -> np.ndarray:
    """Dispatch a classified instance to its closed form."""
    if isinstance(inst, SkewSymmetric):
        return exp_skew_symmetric(inst.p, inst.q)
    if isinstance(inst, Perskewsymmetric):
        return exp_perskewsymmetric(inst.p, inst.alpha, inst.q, inst.beta)
    if isinstance(inst, SkewHamiltonian):
        return exp_skew_hamiltonian(inst.b, inst.p, inst.c, inst.d)
    if isinstance(inst, Jordan):
        return exp_jordan(inst.k, inst.a, inst.b, inst.c, inst.vec)
    if isinstance(inst, Lie):
        return exp_lie(inst.k, inst.a, inst.b, inst.p, inst.q)
    if isinstance(inst, HamSymPersym):
        return exp_ham_sym_persym(inst.beta, inst.gamma, inst.delta)
    if isinstance(inst, SymToeplitzTridiag):
        return exp_sym_toeplitz_tridiag(inst.a, inst.b)
    if isinstance(inst, SymToeplitzS13Zero):
        return exp_sym_toeplitz_s13(inst.a, inst.b, inst.c)
    if isinstance(inst, SpecialNormal):
        return exp_special_normal(inst)
    if isinstance(inst, BisymmetricRS):
        return exp_bisymmetric_rs(inst)
    if isinstance(inst, SymmetricGeneral):
        return exp_symmetric_general(inst.a, inst.p, inst.q, inst.r)
    if isinstance(inst, ComplexSO4):
        return exp_so4_complex(*inst.left, *inst.right)
    if isinstance(inst, ComplexPerskew):
        return exp_p4_complex(inst.p, inst.alpha, inst.q, inst.beta)
    raise TypeError(f"unknown structure class {type(inst).__name__}")


def expm_auto(a_matrix, method: str = "auto", tol: float = DEFAULT_TOL,
              verify: bool = False) -> ExpResult:
    """Exponential with route selection.

    method="auto" takes the highest-priority structured family, falling back
    to the series oracle when nothing matches; a class tag forces that route
    or raises ForcedClassMismatch; "oracle" skips classification.
    """
    a = np.asarray(a_matrix)
    if a.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")

    if method == "oracle":
        value, route = expm_series(a), "oracle"
    elif method == "auto":
        matches = classify(a, tol)
        if matches:
            value, route = exp_structured_class(matches[0]), matches[0].tag
        else:
            value, route = expm_series(a), "oracle"
    else:
        if method not in EXTRACTORS:
            raise ValueError(f"unknown method {method!r}")
        ar = as_real_if_possible(a)
        inst, residual = EXTRACTORS[method](ar, from_matrix(ar), tol,
                                            tol * max(1.0, float(np.linalg.norm(ar))))
        if inst is None:
            raise ForcedClassMismatch(method, residual)
        value, route = exp_structured_class(inst), inst.tag

    verified = rel_error(value, expm_series(a)) if verify else None
    return ExpResult(value, route, verified)
