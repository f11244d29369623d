"""The conformal Lie algebra conf(1,3) inside Cl(2,4) and inside C (x) Cl(1,3).

Metric g = diag(1, -1, -1, -1).  The Lorentz generators are
M_mn = (1/2) g_m ^ g_n in the Dirac realization and M_mn = (1/2) eps_m eps_n in
Cl(2,4); with these signs every bracket of the commutation table holds
exactly (the decisions ledger records why they differ from the printed ones).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .algebra import (CL24, CL41, DIRAC, AlgebraError, Multivector, commutator, conjugation,
                      exp, gamma5, residual, reversion)
from .iso import iso_backward

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
REALIZATIONS = ("Bivector24", "DiracCl13")
M_PAIRS = tuple(combinations(range(4), 2))


@dataclass(frozen=True, order=True)
class Generator:
    kind: str  # "P", "K", "D" or "M"
    mu: int = -1
    nu: int = -1

    def __post_init__(self):
        if self.kind not in ("P", "K", "D", "M"):
            raise AlgebraError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("P", "K") and not 0 <= self.mu <= 3:
            raise AlgebraError(f"{self.kind} needs an index 0..3")
        if self.kind == "M" and not (0 <= self.mu <= 3 and 0 <= self.nu <= 3 and self.mu != self.nu):
            raise AlgebraError("M needs two distinct indices 0..3")

    def __str__(self):
        if self.kind == "D":
            return "D"
        if self.kind == "M":
            return f"M{self.mu}{self.nu}"
        return f"{self.kind}{self.mu}"


BASIS = tuple([Generator("P", m) for m in range(4)] + [Generator("K", m) for m in range(4)]
              + [Generator("D")] + [Generator("M", m, n) for m, n in M_PAIRS])


def _wedge2(a: Multivector, b: Multivector) -> Multivector:
    return (a * b - b * a) * 0.5


def _raw(kind: str, mu: int, nu: int, r: str, printed: bool) -> Multivector:
    if r == "DiracCl13":
        g, g5 = DIRAC.gen, gamma5()
        if kind == "P":
            return (g(mu) + g(mu) * g5 * 1j) * 0.5
        if kind == "K":
            return (g(mu) - g(mu) * g5 * 1j) * -0.5
        if kind == "D":
            return g5 * 0.5j
        if printed:
            return _wedge2(g(nu), g(mu)) * 0.5
        return _wedge2(g(mu), g(nu)) * 0.5
    if r == "Bivector24":
        e = CL24.gen
        if kind == "P":
            return (e(mu) * e(5) + e(mu) * e(4)) * 0.5j
        if kind == "K":
            return (e(mu) * e(5) - e(mu) * e(4)) * -0.5j
        if kind == "D":
            return e(4) * e(5) * -0.5
        if printed:
            return e(nu) * e(mu) * 0.5j
        return e(mu) * e(nu) * 0.5
    raise AlgebraError(f"unknown realization {r!r}")


def generator(g: Generator, r: str, printed: bool = False) -> Multivector:
    """Element of the chosen realization; ``printed=True`` gives the printed M_mn form."""
    return _raw(g.kind, g.mu, g.nu, r, printed)


@lru_cache(maxsize=None)
def basis_elements(r: str, printed: bool = False) -> tuple[Multivector, ...]:
    return tuple(generator(g, r, printed) for g in BASIS)


class _Table:
    """P, K, D, M lookups with M antisymmetric and M_mm = 0."""

    def __init__(self, r: str, printed: bool = False, relabel=None):
        zero = Multivector.zero(DIRAC.sig if r == "DiracCl13" else CL24.sig)
        self.P = {m: _raw("P", m, -1, r, printed) for m in range(4)}
        self.K = {m: _raw("K", m, -1, r, printed) for m in range(4)}
        self.D = _raw("D", -1, -1, r, printed)
        self.M = {}
        for m in range(4):
            for n in range(4):
                self.M[m, n] = zero if m == n else _raw("M", m, n, r, printed)
        if relabel is not None:
            relabel(self)


def _check_table(t: _Table) -> dict[str, float]:
    c, g = commutator, METRIC
    out = {k: 0.0 for k in ("PP", "KK", "MD", "MP", "MK", "MM", "PK", "PD", "KD")}

    def rec(name, val):
        out[name] = max(out[name], val)

    for m in range(4):
        rec("PD", residual(c(t.P[m], t.D), t.P[m]))
        rec("KD", residual(c(t.K[m], t.D), -t.K[m]))
        for n in range(4):
            rec("PP", c(t.P[m], t.P[n]).max_abs())
            rec("KK", c(t.K[m], t.K[n]).max_abs())
            rec("MD", c(t.M[m, n], t.D).max_abs())
            rec("PK", residual(c(t.P[m], t.K[n]), (t.D * g[m, n] - t.M[m, n]) * 2))
            for l in range(4):
                rec("MP", residual(c(t.M[m, n], t.P[l]), -(t.P[n] * g[m, l] - t.P[m] * g[n, l])))
                rec("MK", residual(c(t.M[m, n], t.K[l]), -(t.K[n] * g[m, l] - t.K[m] * g[n, l])))
                for s in range(4):
                    rhs = (t.M[n, l] * g[m, s] + t.M[m, s] * g[n, l]
                           - t.M[n, s] * g[m, l] - t.M[m, l] * g[n, s])
                    rec("MM", residual(c(t.M[m, n], t.M[l, s]), rhs))
    return out


@dataclass(frozen=True)
class TableReport:
    realization: str
    residuals: dict
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.residuals.items() if v > self.tol]


def commutation_check(r: str, printed: bool = False, tol: float = 1e-12) -> TableReport:
    return TableReport(r, _check_table(_Table(r, printed)), tol)


def _swap_pk(t: _Table) -> None:
    P, K = t.P, t.K
    t.P = {m: -K[m] for m in range(4)}
    t.K = {m: -P[m] for m in range(4)}
    t.D = -t.D


def _swap_pk_unsigned(t: _Table) -> None:
    P, K = t.P, t.K
    t.P, t.K = dict(K), dict(P)


RELABELINGS = {"identity": None, "substitution": _swap_pk, "unsigned": _swap_pk_unsigned}


def substitution_symmetry_check(r: str, relabel: str = "substitution",
                                tol: float = 1e-12) -> TableReport:
    """Re-run the table after P -> -K, K -> -P, D -> -D (or another named relabeling)."""
    if relabel not in RELABELINGS:
        raise AlgebraError(f"unknown relabeling {relabel!r}")
    return TableReport(r, _check_table(_Table(r, relabel=RELABELINGS[relabel])), tol)


@dataclass(frozen=True)
class StructureConstants:
    realization: str
    C: np.ndarray  # C[i, j, k]: [G_i, G_j] = sum_k C[i, j, k] G_k
    orthogonal_residual: float


@lru_cache(maxsize=None)
def structure_constants(r: str) -> StructureConstants:
    G = basis_elements(r)
    A = np.array([g.coeffs for g in G]).T
    n = len(G)
    C = np.zeros((n, n, n), dtype=complex)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            v = commutator(G[i], G[j]).coeffs
            x, *_ = np.linalg.lstsq(A, v, rcond=None)
            C[i, j] = x
            worst = max(worst, float(np.max(np.abs(A @ x - v))))
    C.setflags(write=False)
    return StructureConstants(r, C, worst)


def structure_constant_agreement() -> float:
    a = structure_constants("Bivector24").C
    b = structure_constants("DiracCl13").C
    return float(np.max(np.abs(a - b)))


# -- exponentials ------------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpReport:
    element: Multivector
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def algebra_element(coeffs, r: str) -> Multivector:
    c = np.asarray(coeffs, dtype=float).reshape(-1)
    if c.shape[0] != len(BASIS):
        raise AlgebraError(f"need {len(BASIS)} coefficients, got {c.shape[0]}")
    G = basis_elements(r)
    out = Multivector.zero(G[0].sig)
    for ci, g in zip(c, G):
        out = out + g * ci
    return out


def membership_residual(Z: Multivector, r: str) -> float:
    """R R~ - 1 in Cl(2,4), or Z Zbar - 1 after carrying a Dirac element to Cl(4,1) (kind A)."""
    if r == "Bivector24":
        return residual(Z * reversion(Z), 1.0)
    if r == "DiracCl13":
        W = iso_backward(Z, "A")
        return residual(W * conjugation(W), CL41.one())
    raise AlgebraError(f"unknown realization {r!r}")


def exp_generator(coeffs, r: str, tol: float = 1e-8) -> ExpReport:
    Z = exp(algebra_element(coeffs, r))
    return ExpReport(Z, membership_residual(Z, r), tol)


def flow_derivative(X: Multivector, v: Multivector, step: float = 1e-5) -> tuple[Multivector, Multivector]:
    """Central finite difference of t -> exp(tX) v exp(-tX) at 0, and the bracket [X, v]."""
    def f(t):
        return exp(X * t) * v * exp(X * -t)

    fd = (f(step) - f(-step)) / (2 * step)
    return fd, commutator(X, v)


def dilation_flow_check(seed: int = 0, step: float = 1e-5) -> dict[str, float]:
    """D generates the boost of the eps4-eps5 plane: e5 +- e4 are scaled by exp(-+t)."""
    D = generator(Generator("D"), "Bivector24")
    rng = np.random.default_rng(seed)
    alpha = Multivector(CL24.sig, np.zeros(CL24.sig.dim))
    for A in range(6):
        alpha = alpha + CL24.gen(A) * rng.uniform(-1, 1)
    fd, br = flow_derivative(D, alpha, step)
    plus = CL24.gen(5) + CL24.gen(4)
    minus = CL24.gen(5) - CL24.gen(4)
    return {
        "finite_difference": residual(fd, br),
        "eigen_plus": residual(commutator(D, plus), -plus),
        "eigen_minus": residual(commutator(D, minus), minus),
    }
