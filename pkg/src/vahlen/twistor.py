"""Twistors as algebraic spinors of Cl(4,1), checked against the Penrose form (i x xi, xi).

Components are read in the Weyl representation with reflected spatial
generators, g0 = [[0, I], [I, 0]], g_k = [[0, s_k], [-s_k, 0]].  There
P_L = (1 + i g5)/2 is diag(0, 0, 1, 1) and the Weyl idempotent P_1 is the
matrix unit at (3, 3), so an element of the left ideal ... f is a single
column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import CL41, DIRAC, AlgebraError, Multivector, conjugation, gamma5, random_mv
from .iso import iso_forward
from .reps import dirac_idempotents, dirac_rep

KELLER_REP = "weyl-reflected"
COLUMN = 2  # P_1 -> E_33 in the reflected representation


def projector(chi: str) -> Multivector:
    """P_L = (1 + i g5)/2, P_R = (1 - i g5)/2."""
    if chi not in ("L", "R"):
        raise AlgebraError(f"chirality must be 'L' or 'R', got {chi!r}")
    s = 1 if chi == "L" else -1
    return (DIRAC.one() + gamma5() * (1j * s)) * 0.5


def x_matrix(x: Sequence[float], printed: bool = False) -> np.ndarray:
    """x^0 + x.sigma, the block the reflected gammas actually produce.

    ``printed=True`` gives the transposed matrix with x1 + i x2 in the top right
    corner; it agrees only when x2 = 0.
    """
    x0, x1, x2, x3 = (float(v) for v in x)
    s = -1 if printed else 1
    return np.array([[x0 + x3, x1 - s * 1j * x2], [x1 + s * 1j * x2, x0 - x3]])


def spacetime_vector(x: Sequence[float]) -> Multivector:
    """x^mu g_mu in C (x) Cl(1,3)."""
    out = Multivector.zero(DIRAC.sig)
    for mu, v in enumerate(x):
        out = out + DIRAC.gen(mu) * float(v)
    return out


def T(x: Sequence[float]) -> Multivector:
    """T_x = 1 + g5 x."""
    return DIRAC.one() + gamma5() * spacetime_vector(x)


def minkowski(x: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    return float(x[0] ** 2 - x[1:] @ x[1:])


@dataclass(frozen=True)
class Twistor:
    components: np.ndarray  # 4 complex
    x: tuple[float, float, float, float]
    xi: np.ndarray  # 2 complex
    alpha0: float | None = None
    alpha4: float | None = None
    U: Multivector | None = None

    def penrose_residual(self, printed: bool = False) -> float:
        expected = np.concatenate([1j * x_matrix(self.x, printed) @ self.xi, self.xi])
        return float(np.max(np.abs(self.components - expected)))


def reference_twistor(x: Sequence[float], xi: Sequence[complex]) -> Twistor:
    """(1 + g5 x) Pi with Pi = (0, xi), evaluated in the reflected Weyl matrices."""
    xi = np.asarray(xi, dtype=complex).reshape(2)
    Pi = np.concatenate([np.zeros(2, dtype=complex), xi])
    eta = dirac_rep(T(x), KELLER_REP) @ Pi
    return Twistor(eta, tuple(float(v) for v in x), xi)


def default_alphas(x: Sequence[float]) -> tuple[float, float]:
    """alpha0, alpha4 with alpha4 - alpha0 = 1 and alpha4 + alpha0 = x.x, a null lift."""
    s = minkowski(x)
    return (s - 1) / 2, (s + 1) / 2


def lift(x: Sequence[float], alpha0: float | None = None, alpha4: float | None = None) -> Multivector:
    """x^0 + alpha0 E0 + x^k E_k + alpha4 E4 in Cl(4,1)."""
    if alpha0 is None or alpha4 is None:
        d0, d4 = default_alphas(x)
        alpha0 = d0 if alpha0 is None else alpha0
        alpha4 = d4 if alpha4 is None else alpha4
    x0, x1, x2, x3 = (float(v) for v in x)
    return CL41.from_labels({"": x0, "0": alpha0, "1": x1, "2": x2, "3": x3, "4": alpha4})


def chi(x: Sequence[float], alpha0: float | None = None, alpha4: float | None = None) -> Multivector:
    """chi = x E4, carried to C (x) Cl(1,3) by the twistor identification."""
    return iso_forward(lift(x, alpha0, alpha4) * CL41.gen(4), "C")


def fern_residual(x: Sequence[float], alpha0: float | None = None,
                  alpha4: float | None = None) -> float:
    """chi (1 + i g5)/2 - T_x P_L."""
    PL = projector("L")
    return (chi(x, alpha0, alpha4) * PL - T(x) * PL).max_abs()


def _column(a: Multivector) -> np.ndarray:
    return dirac_rep(a, KELLER_REP)[:, COLUMN]


def weyl_spinor(U: Multivector) -> np.ndarray:
    """xi from Pi = P_L U f = (0, xi)."""
    f = dirac_idempotents("weyl").P[0]
    col = _column(projector("L") * iso_forward(U, "C") * f)
    return col[2:]


def twistor_from_ideal(x: Sequence[float], U: Multivector, alpha0: float | None = None,
                       alpha4: float | None = None) -> Twistor:
    """chi P_L U f read as a column of the reflected Weyl representation."""
    if U.sig != CL41.sig:
        raise AlgebraError("U must be an element of Cl(4,1)")
    if alpha0 is None or alpha4 is None:
        d0, d4 = default_alphas(x)
        alpha0 = d0 if alpha0 is None else alpha0
        alpha4 = d4 if alpha4 is None else alpha4
    f = dirac_idempotents("weyl").P[0]
    psi = chi(x, alpha0, alpha4) * projector("L") * iso_forward(U, "C") * f
    return Twistor(_column(psi), tuple(float(v) for v in x), weyl_spinor(U),
                   alpha0, alpha4, U)


def e4_pi_residuals(U: Multivector) -> dict[str, float]:
    """E4 Pi against +i g0 Pi and against -i g0 Pi, with Pi = P_L U f."""
    f = dirac_idempotents("weyl").P[0]
    Pi = projector("L") * iso_forward(U, "C") * f
    E4 = iso_forward(CL41.gen(4), "C")
    g0 = DIRAC.gen(0)
    return {"+i": (E4 * Pi - g0 * Pi * 1j).max_abs(),
            "-i": (E4 * Pi + g0 * Pi * 1j).max_abs()}


def incidence(t1: Twistor, t2: Twistor) -> Multivector:
    """J = conj(x E4 U) x' E4 U' in Cl(4,1)."""
    if t1.U is None or t2.U is None:
        raise AlgebraError("incidence needs twistors built by twistor_from_ideal")
    E4 = CL41.gen(4)
    a = lift(t1.x, t1.alpha0, t1.alpha4) * E4 * t1.U
    b = lift(t2.x, t2.alpha0, t2.alpha4) * E4 * t2.U
    return conjugation(a) * b


def mv_norm(a: Multivector) -> float:
    return float(np.linalg.norm(a.coeffs))


def robinson_scan(x: Sequence[float], xs: Sequence[Sequence[float]],
                  U: Multivector) -> list[tuple[tuple[float, ...], float]]:
    t = twistor_from_ideal(x, U)
    out = []
    for xp in xs:
        tp = twistor_from_ideal(xp, U)
        out.append((tuple(float(v) for v in xp), mv_norm(incidence(t, tp))))
    return out


def random_U(rng) -> Multivector:
    return random_mv(rng, CL41.sig, range(6))


def chirality_residual(U: Multivector) -> float:
    """g5 Pi + i Pi in the reflected Weyl matrices (Pi is left-handed)."""
    f = dirac_idempotents("weyl").P[0]
    Pi = _column(projector("L") * iso_forward(U, "C") * f)
    G5 = dirac_rep(gamma5(), KELLER_REP)
    return float(np.max(np.abs(G5 @ Pi + 1j * Pi)))
