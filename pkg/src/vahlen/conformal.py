"""Conformal geometry on paravectors: compactification, Vahlen matrices and their action.

Points of R (+) R^3 are paravectors x = x0 + x1 e1 + x2 e2 + x3 e3 of Cl(3,0)
with norm x.x = x xbar = x0^2 - |x|^2.  A Cl(4,1) paravector
alpha5 + alpha^A E_A splits as [[x, lam], [mu, xbar]] with lam = alpha4 - alpha0
and mu = alpha4 + alpha0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .algebra import (CL30, CL41, AlgebraError, Multivector, SingularError, conjugation,
                      grade_involution, group_check, inverse, random_mv, residual, reversion)
from .iso import VahlenSplit, periodicity_join, periodicity_split
from .reps import pauli_rep


class MapUndefinedError(ArithmeticError):
    """The fractional map has a singular denominator at this point."""


class PointAtInfinityError(ArithmeticError):
    """Projection of a compact point with mu = 0."""


# -- paravectors --------------------------------------------------------------------------

def paravector(coords: Sequence[float]) -> Multivector:
    """x0 + x1 e1 + x2 e2 + x3 e3 in Cl(3,0)."""
    c = [float(v) for v in coords]
    if len(c) != 4:
        raise AlgebraError(f"paravector needs 4 coordinates, got {len(c)}")
    return CL30.from_labels({"": c[0], "1": c[1], "2": c[2], "3": c[3]})


def coords(x: Multivector) -> np.ndarray:
    return np.array([CL30.coeff(x, lab).real for lab in ("", "1", "2", "3")])


def is_paravector(x: Multivector, tol: float = 1e-10) -> bool:
    return x.grades(tol) <= {0, 1} and x.is_real(tol)


def norm(x: Multivector) -> float:
    """x.x = scalar part of x xbar."""
    return (x * conjugation(x)).scalar_part().real


def dot(a: Multivector, b: Multivector) -> float:
    """Polarised paravector form, a.b = (a bbar + b abar)/2."""
    return ((a * conjugation(b) + b * conjugation(a)) * 0.5).scalar_part().real


def random_paravector(rng, scale: float = 1.0) -> Multivector:
    return random_mv(rng, CL30.sig, (0, 1)) * scale


# -- compactification -------------------------------------------------------------------------

@dataclass(frozen=True)
class CompactPoint:
    x: Multivector
    lam: float
    mu: float

    def klein(self) -> float:
        return norm(self.x) - self.lam * self.mu


def compactify(x: Multivector) -> CompactPoint:
    return CompactPoint(x, norm(x), 1.0)


def project(p: CompactPoint, tol: float = 1e-14) -> Multivector:
    if abs(p.mu) <= tol:
        raise PointAtInfinityError("mu = 0: the point lies at infinity")
    return p.x / p.mu


def lift(x: Multivector, lam: float | None = None, mu: float = 1.0) -> Multivector:
    """Cl(4,1) paravector alpha5 + alpha^i E_i + alpha0 E0 + alpha4 E4 splitting as [[x, lam], [mu, xbar]].

    ``lam`` defaults to x xbar / mu, which puts the point on the Klein absolute.
    """
    if lam is None:
        if mu == 0:
            raise AlgebraError("lam must be given when mu = 0")
        lam = norm(x) / mu
    c = coords(x)
    a4, a0 = (lam + mu) / 2, (mu - lam) / 2
    return CL41.from_labels({"": c[0], "1": c[1], "2": c[2], "3": c[3], "0": a0, "4": a4})


def paravector_matrix(b: Multivector, tol: float = 1e-12) -> VahlenSplit:
    """Block form [[x, lam], [mu, xbar]] of a Cl(4,1) paravector."""
    if b.sig != CL41.sig or not b.grades(tol) <= {0, 1}:
        raise AlgebraError("paravector_matrix expects a paravector of Cl(4,1)")
    return periodicity_split(b)


def chart_matrix(x: Multivector) -> VahlenSplit:
    """The mu = 1 chart [[x, x xbar], [1, xbar]]."""
    xb = conjugation(x)
    return VahlenSplit(a=x, b=CL30.one(), c=x * xb, d=xb)


# -- Vahlen matrices --------------------------------------------------------------------------

VahlenElement = VahlenSplit


def vahlen_tilde(g: VahlenSplit) -> VahlenSplit:
    """Reversion in block form: [[a, c], [b, d]]~ = [[dbar, cbar], [bbar, abar]]."""
    return VahlenSplit(a=conjugation(g.d), b=conjugation(g.b), c=conjugation(g.c),
                       d=conjugation(g.a))


def vahlen_bar(g: VahlenSplit) -> VahlenSplit:
    """Conjugation in block form: [[d~, -c~], [-b~, a~]]."""
    return VahlenSplit(a=reversion(g.d), b=-reversion(g.b), c=-reversion(g.c),
                       d=reversion(g.a))


def to_cl41(g: VahlenSplit) -> Multivector:
    return periodicity_join(g)


def from_cl41(a: Multivector) -> VahlenSplit:
    return periodicity_split(a)


def _off_grades(m: Multivector, keep: set[int]) -> float:
    out = 0.0
    for k in range(m.sig.n + 1):
        if k not in keep:
            out = max(out, m.grade(k).max_abs())
    return max(out, float(np.max(np.abs(m.coeffs.imag))))


@dataclass(frozen=True)
class VahlenReport:
    residuals: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.residuals.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.residuals.items() if v > self.tol]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def vahlen_conditions(g: VahlenSplit, samples: int = 20, seed: int = 0,
                      tol: float = 1e-9) -> VahlenReport:
    """Conditions (i)-(vi) on [[a, c], [b, d]].

    (iii) uses the entries that the sandwich g b g~ actually produces:
    a v cbar + c vbar abar and b v dbar + d vbar bbar must be real.
    """
    a, b, c, d = g.a, g.b, g.c, g.d
    ab_, bb_, cb_, db_ = (conjugation(t) for t in (a, b, c, d))
    r = {
        "i": max(_off_grades(a * ab_, {0}), _off_grades(b * bb_, {0}),
                 _off_grades(c * cb_, {0}), _off_grades(d * db_, {0})),
        "ii": max(_off_grades(a * bb_, {0, 1}), _off_grades(c * db_, {0, 1})),
    }
    rng = np.random.default_rng(seed)
    r3 = r4 = 0.0
    for _ in range(samples):
        v = random_paravector(rng)
        vb = conjugation(v)
        r3 = max(r3, _off_grades(a * v * cb_ + c * vb * ab_, {0}),
                 _off_grades(b * v * db_ + d * vb * bb_, {0}))
        r4 = max(r4, _off_grades(a * v * db_ + c * vb * bb_, {0, 1}))
    r["iii"] = r3
    r["iv"] = r4
    r["v"] = max(residual(a * reversion(c), c * reversion(a)),
                 residual(b * reversion(d), d * reversion(b)))
    r["vi"] = residual(a * reversion(d) - c * reversion(b), CL30.one())
    return VahlenReport(r, tol)


def _inverse_cl30(y: Multivector, tol: float = 1e-12) -> tuple[Multivector, Multivector]:
    """Inverse of y together with y ybar, using ybar/(y ybar) when y ybar is a nonzero scalar."""
    yy = y * conjugation(y)
    scale = max(1.0, yy.max_abs())
    s = yy.scalar_part()
    if abs(s) > tol * scale and (yy - s).max_abs() <= 1e-10 * scale:
        return conjugation(y) / s, yy
    try:
        return inverse(y), yy
    except SingularError as exc:
        raise MapUndefinedError(str(exc)) from exc


def act(g: VahlenSplit, x: Multivector) -> tuple[Multivector, float]:
    """x' = (a x + c)(b x + d)^-1 and Delta = (b x + d)(b x + d)bar."""
    y = g.b * x + g.d
    yy = y * conjugation(y)
    if abs(yy.scalar_part()) <= 1e-13 * max(1.0, norm(x) ** 2):
        raise MapUndefinedError("b x + d is not invertible at this point")
    y_inv, yy = _inverse_cl30(y)
    xp = (g.a * x + g.c) * y_inv
    return xp, float(yy.scalar_part().real)


def sandwich(g: VahlenSplit, x: Multivector) -> VahlenSplit:
    """g [[x, x xbar], [1, xbar]] g~, which should equal Delta times the chart of x'."""
    return g @ chart_matrix(x) @ vahlen_tilde(g)


# -- the five table maps ------------------------------------------------------------------------

@dataclass(frozen=True)
class Translation:
    h: Multivector


@dataclass(frozen=True)
class Dilation:
    rho: float


@dataclass(frozen=True)
class Rotation:
    g: Multivector


@dataclass(frozen=True)
class Inversion:
    pass


@dataclass(frozen=True)
class Transvection:
    h: Multivector


ConformalMap = Union[Translation, Dilation, Rotation, Inversion, Transvection]


def make_map(m: ConformalMap) -> VahlenSplit:
    one, z = CL30.one(), Multivector.zero(CL30.sig)
    if isinstance(m, Translation):
        if not is_paravector(m.h):
            raise AlgebraError("translation parameter must be a paravector")
        return VahlenSplit(a=one, b=z, c=m.h, d=one)
    if isinstance(m, Dilation):
        if not m.rho > 0:
            raise AlgebraError(f"dilation factor must be positive, got {m.rho}")
        s = math.sqrt(m.rho)
        return VahlenSplit(a=one * s, b=z, c=z, d=one / s)
    if isinstance(m, Rotation):
        rep = group_check(m.g, "DollarPin")
        if not rep.member:
            raise AlgebraError(f"rotation element fails g gbar = 1 (residual {rep.residual:.3g})")
        return VahlenSplit(a=m.g, b=z, c=z, d=grade_involution(m.g))
    if isinstance(m, Inversion):
        return VahlenSplit(a=z, b=one, c=-one, d=z)
    if isinstance(m, Transvection):
        if not is_paravector(m.h):
            raise AlgebraError("transvection parameter must be a paravector")
        return VahlenSplit(a=one, b=m.h, c=z, d=one)
    raise AlgebraError(f"unknown conformal map {m!r}")


def explicit_map(m: ConformalMap, x: Multivector) -> Multivector:
    """The closed-form action of each table map (matrix-normative for inversion and transvection)."""
    if isinstance(m, Translation):
        return x + m.h
    if isinstance(m, Dilation):
        return x * m.rho
    if isinstance(m, Rotation):
        return m.g * x * inverse(grade_involution(m.g))
    if isinstance(m, Inversion):
        return -conjugation(x) / norm(x)
    if isinstance(m, Transvection):
        return x * inverse(m.h * x + 1)
    raise AlgebraError(f"unknown conformal map {m!r}")


def random_rotation(rng, scale: float = 0.5) -> Multivector:
    """exp of a vector-plus-bivector element of Cl(3,0), which lies in g gbar = 1."""
    from .algebra import exp
    return exp(random_mv(rng, CL30.sig, (1, 2)) * scale)


def compose(g1: VahlenSplit, g2: VahlenSplit) -> VahlenSplit:
    return g1 @ g2


def kernel_elements() -> list[Multivector]:
    """1, -1 and +-E01234, whose block forms are diag(1,1), diag(-1,-1), diag(+-e123, +-e123)."""
    I = CL41.blade("01234")
    return [CL41.one(), -CL41.one(), I, -I]


# -- planar Moebius maps --------------------------------------------------------------------------

def _as_matrix(A) -> np.ndarray:
    if isinstance(A, Multivector):
        return pauli_rep(A)
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise AlgebraError("mobius_plane expects a 2x2 complex matrix or a Cl(3,0) element")
    return A


def mobius_plane(A, z: complex) -> tuple[complex, float]:
    """z' = (a z + c)/(b z + d) with weight |b z + d|^2, for A = [[a, c], [b, d]]."""
    M = _as_matrix(A)
    a, c, b, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    den = b * z + d
    if abs(den) <= 1e-14:
        raise MapUndefinedError("b z + d vanishes")
    return complex((a * z + c) / den), float(abs(den) ** 2)


def mobius_plane_sandwich(A, z: complex) -> np.ndarray:
    """A [[z, z zbar], [1, zbar]] A~ with A~ = [[dbar, cbar], [bbar, abar]]."""
    M = _as_matrix(A)
    a, c, b, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    At = np.array([[np.conj(d), np.conj(c)], [np.conj(b), np.conj(a)]])
    P = np.array([[z, z * np.conj(z)], [1, np.conj(z)]])
    return M @ P @ At


# -- quasi-spheres ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class QuasiSphere:
    a: float
    b: Multivector
    c: float

    def __post_init__(self):
        if self.a == 0 and self.c == 0 and self.b.max_abs() == 0:
            raise AlgebraError("quasi-sphere needs a, b, c not all zero")


def quasi_sphere_eval(s: QuasiSphere, x: Multivector) -> float:
    return s.a * norm(x) + dot(s.b, x) + s.c
