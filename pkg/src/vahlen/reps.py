"""Matrix representations: Pauli, quaternionic M(2,H), and Dirac via primitive idempotents."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import (CL13, CL30, DIRAC, AlgebraError, Multivector, grade_of_masks,
                      random_mv)

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)


def _require(a: Multivector, conv, what: str) -> None:
    if a.sig != conv.sig:
        raise AlgebraError(f"{what} expects an element of {conv.label}, got {a.sig}")


def _blade_images(conv, gen_images) -> np.ndarray:
    """Images of every canonical blade given images of the generators (by bit)."""
    n = conv.sig.n
    dim = gen_images[0].shape[0]
    out = np.empty((conv.sig.dim, dim, dim), dtype=complex)
    for m in range(conv.sig.dim):
        M = np.eye(dim, dtype=complex)
        for bit in range(n):
            if m >> bit & 1:
                M = M @ gen_images[bit]
        out[m] = M
    out.setflags(write=False)
    return out


# -- Pauli --------------------------------------------------------------------

@lru_cache(maxsize=None)
def _pauli_blades() -> np.ndarray:
    return _blade_images(CL30, [SIGMA[CL30.indices[CL30.bits.index(b)] - 1] for b in range(3)])


def pauli_rep(a: Multivector) -> np.ndarray:
    _require(a, CL30, "pauli_rep")
    return np.tensordot(a.coeffs, _pauli_blades(), axes=1)


def pauli_unrep(m) -> Multivector:
    """Inverse of pauli_rep on real-coefficient elements of Cl(3,0)."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise AlgebraError(f"expected a 2x2 matrix, got shape {m.shape}")
    # rho(psi) = w0 I + w1 s1 + w2 s2 + w3 s3 with
    # w0 = c + i c123, w1 = c1 + i c23, w2 = c2 - i c13, w3 = c3 + i c12
    w0 = (m[0, 0] + m[1, 1]) / 2
    w3 = (m[0, 0] - m[1, 1]) / 2
    w1 = (m[0, 1] + m[1, 0]) / 2
    w2 = (m[1, 0] - m[0, 1]) / 2j
    return CL30.from_labels({
        "": w0.real, "123": w0.imag,
        "1": w1.real, "23": w1.imag,
        "2": w2.real, "13": -w2.imag,
        "3": w3.real, "12": w3.imag,
    })


# -- even subalgebra Cl(1,3)+ -> Cl(3,0) ---------------------------------------

@lru_cache(maxsize=None)
def _even_images() -> dict[int, Multivector]:
    # pair up generators and insert g0 g0 = 1: g_a g_b = (g_a g0)(g0 g_b),
    # with g_a g0 -> e_a and g0 g_b = -g_b g0 -> -e_b (both trivial for index 0)
    def left(a):
        return CL30.one() if a == 0 else CL30.gen(a)

    def right(b):
        return CL30.one() if b == 0 else -CL30.gen(b)

    out = {}
    for m in range(CL13.sig.dim):
        idx = [CL13.indices[CL13.bits.index(bit)] for bit in range(4) if m >> bit & 1]
        if len(idx) % 2:
            continue
        img = CL30.one()
        for a, b in zip(idx[0::2], idx[1::2]):
            img = img * left(a) * right(b)
        out[m] = img * CL13.label_mask_sign("".join(map(str, idx)))[1] if idx else img
    return out


def even_iso(a: Multivector, tol: float = 1e-12) -> Multivector:
    """Cl(1,3)+ -> Cl(3,0) with g_i g_0 -> e_i."""
    _require(a, CL13, "even_iso")
    g = grade_of_masks(a.sig)
    if np.max(np.abs(a.coeffs[g % 2 == 1]), initial=0.0) > tol:
        raise AlgebraError("even_iso expects an even element")
    out = Multivector.zero(CL30.sig)
    for m, img in _even_images().items():
        if a.coeffs[m] != 0:
            out = out + img * a.coeffs[m]
    return out


# -- quaternions ----------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    @classmethod
    def from_array(cls, v) -> "Quaternion":
        return cls(*(float(x) for x in v))

    def as_array(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q2, self.q3])

    def __add__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion.from_array(self.as_array() + o.as_array())

    def __sub__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion.from_array(self.as_array() - o.as_array())

    def __neg__(self) -> "Quaternion":
        return Quaternion.from_array(-self.as_array())

    def __mul__(self, o):
        if isinstance(o, (int, float)):
            return Quaternion.from_array(self.as_array() * o)
        a0, a1, a2, a3 = self.q0, self.q1, self.q2, self.q3
        b0, b1, b2, b3 = o.q0, o.q1, o.q2, o.q3
        # ij = k, jk = i, ki = j, i^2 = j^2 = k^2 = -1
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    __rmul__ = __mul__  # only used with real scalars, which commute

    def conj(self) -> "Quaternion":
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def norm2(self) -> float:
        return float(self.as_array() @ self.as_array())


QI, QJ, QK = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
Q1 = Quaternion(1, 0, 0, 0)


@dataclass(frozen=True)
class QuatMatrix2:
    """2x2 quaternion matrix [[a, b], [c, d]]."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o: "QuatMatrix2") -> "QuatMatrix2":
        return QuatMatrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                           self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __add__(self, o: "QuatMatrix2") -> "QuatMatrix2":
        return QuatMatrix2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a.as_array(), self.b.as_array()],
                         [self.c.as_array(), self.d.as_array()]])

    def residual(self, o: "QuatMatrix2") -> float:
        return float(np.max(np.abs(self.as_array() - o.as_array())))

    @classmethod
    def identity(cls) -> "QuatMatrix2":
        return cls(Q1, Quaternion(), Quaternion(), Q1)


def quat_rep(a: Multivector, tol: float = 1e-12) -> QuatMatrix2:
    """Cl(1,3) -> M(2,H) from the ideal basis {1, g5} f, f = (1 + g0)/2."""
    _require(a, CL13, "quat_rep")
    if not a.is_real(tol):
        raise AlgebraError("quat_rep expects real coefficients")

    def c(label):
        return CL13.coeff(a, label).real

    q1 = Quaternion(c("") + c("0"), c("23") + c("023"), -c("13") - c("013"), c("12") + c("012"))
    q2 = Quaternion(-c("123") - c("0123"), c("1") + c("01"), c("2") + c("02"), c("3") + c("03"))
    q3 = Quaternion(-c("123") + c("0123"), c("1") - c("01"), c("2") - c("02"), c("3") - c("03"))
    q4 = Quaternion(c("") - c("0"), c("23") - c("023"), -c("13") + c("013"), c("12") - c("012"))
    return QuatMatrix2(q1, q2, q3, q4)


def quat_to_complex(q: Quaternion) -> np.ndarray:
    """q0 + q1 i + q2 j + q3 k as a 2x2 complex matrix (test oracle bridge)."""
    return np.array([[q.q0 + 1j * q.q1, q.q2 + 1j * q.q3],
                     [-q.q2 + 1j * q.q3, q.q0 - 1j * q.q1]])


def quat_matrix_to_complex(m: QuatMatrix2) -> np.ndarray:
    return np.block([[quat_to_complex(m.a), quat_to_complex(m.b)],
                     [quat_to_complex(m.c), quat_to_complex(m.d)]])


# -- Dirac idempotents -----------------------------------------------------------

# Ideal-basis tables E_ij as conjugator-times-idempotent words.  The standard
# table differs from the printed one in E_12 and E_21, whose signs are taken
# from the E_1j / E_i1 lists so that E_ij E_jk = E_ik holds.
STANDARD_TABLE = (
    ("P1", "e13P2", "e30P3", "e10P4"),
    ("-e13P1", "P2", "e10P3", "-e30P4"),
    ("e30P1", "e10P2", "P3", "e13P4"),
    ("e10P1", "e03P2", "-e13P3", "P4"),
)
STANDARD_TABLE_PRINTED = (
    ("P1", "-e13P2", "e30P3", "e10P4"),
    ("e13P1", "P2", "e10P3", "-e30P4"),
    ("e30P1", "e10P2", "P3", "e13P4"),
    ("e10P1", "e03P2", "-e13P3", "P4"),
)
WEYL_TABLE = (
    ("P1", "e01P2", "e0P3", "-e1P4"),
    ("e01P1", "P2", "-e1P3", "e0P4"),
    ("e0P1", "e1P2", "P3", "-e01P4"),
    ("e1P1", "e0P2", "e10P3", "P4"),
)
CONJUGATORS = {
    "standard": {"13": 2, "30": 3, "10": 4},
    "weyl": {"01": 2, "0": 3, "1": 4},
}
_WORD = re.compile(r"(-?)(?:e(\d+))?P([1-4])")


@dataclass(frozen=True)
class IdempotentSet:
    kind: str
    P: tuple[Multivector, ...]
    table: tuple[tuple[Multivector, ...], ...]
    words: tuple[tuple[str, ...], ...] = field(repr=False)


def idempotents(kind: str, weyl_imaginary: bool = True) -> tuple[Multivector, ...]:
    """P_1..P_4 = (1 +- u)/2 (1 +- i g12)/2 with u = g0 (standard) or i g5 (Weyl).

    ``weyl_imaginary=False`` gives the variant with u = g5, which is not
    idempotent since g5 squares to -1; kept for diagnostics.
    """
    one = DIRAC.one()
    if kind == "standard":
        u = DIRAC.gen(0)
    elif kind == "weyl":
        u = DIRAC.blade("0123") * (1j if weyl_imaginary else 1)
    else:
        raise AlgebraError(f"unknown idempotent kind {kind!r}")
    v = DIRAC.blade("12") * 1j
    return tuple((one + u * s1) * 0.5 * (one + v * s2) * 0.5
                 for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)))


def parse_word(word: str, P) -> Multivector:
    m = _WORD.fullmatch(word)
    if m is None:
        raise AlgebraError(f"bad ideal-basis word {word!r}")
    sign = -1 if m.group(1) else 1
    head = DIRAC.blade(m.group(2)) if m.group(2) else DIRAC.one()
    return head * P[int(m.group(3)) - 1] * sign


@lru_cache(maxsize=None)
def dirac_idempotents(kind: str = "standard") -> IdempotentSet:
    tables = {"standard": STANDARD_TABLE, "weyl": WEYL_TABLE}
    if kind not in tables:
        raise AlgebraError(f"unknown idempotent kind {kind!r}")
    P = idempotents(kind)
    words = tables[kind]
    table = tuple(tuple(parse_word(w, P) for w in row) for row in words)
    s = idempotent_report(P, table)
    if s["max"] > 1e-13:
        raise AssertionError(f"{kind} idempotent table failed its invariants: {s}")
    return IdempotentSet(kind, P, table, words)


def idempotent_report(P, table=None) -> dict[str, float]:
    """Residuals of P_i^2 = P_i, P_i P_j = 0, sum P_i = 1 and E_ij E_jk = E_ik."""
    one = DIRAC.one()
    out = {
        "idempotent": max((p * p - p).max_abs() for p in P),
        "orthogonal": max((P[i] * P[j]).max_abs() for i in range(4) for j in range(4) if i != j),
        "resolution": (sum(P, Multivector.zero(DIRAC.sig)) - one).max_abs(),
    }
    if table is not None:
        out["matrix_units"] = max((table[i][j] * table[j][k] - table[i][k]).max_abs()
                                  for i in range(4) for j in range(4) for k in range(4))
    out["max"] = max(out.values())
    return out


def conjugator_report(kind: str) -> dict[str, float]:
    """Residual of u P_1 u^-1 = P_k for the listed conjugators u (inverse computed in closed form)."""
    P = idempotents(kind)
    out = {}
    for lab, k in CONJUGATORS[kind].items():
        u = DIRAC.blade(lab)
        u_inv = u * (1.0 / (u * u).scalar_part())  # blades square to +-1
        out[f"e{lab}P1e{lab}^-1=P{k}"] = (u * P[0] * u_inv - P[k - 1]).max_abs()
    return out


@lru_cache(maxsize=None)
def _dirac_blades(kind: str) -> np.ndarray:
    if kind == "weyl-reflected":
        base = _dirac_blades("weyl")
        flip = np.array([(-1) ** bin(m & 0b1110).count("1") for m in range(16)])
        out = base * flip[:, None, None]
        out.setflags(write=False)
        return out
    S = dirac_idempotents(kind)
    E = S.table
    p1 = S.P[0].scalar_part()

    def rep(a):
        M = np.zeros((4, 4), dtype=complex)
        for i in range(4):
            left = E[0][i] * a
            for j in range(4):
                M[i, j] = (left * E[j][0]).scalar_part() / p1
        return M

    gens = [rep(DIRAC.gen(DIRAC.indices[DIRAC.bits.index(b)])) for b in range(4)]
    return _blade_images(DIRAC, gens)


DIRAC_KINDS = ("standard", "weyl", "weyl-reflected")


def dirac_rep(a: Multivector, kind: str = "standard") -> np.ndarray:
    """C (x) Cl(1,3) -> M(4,C).

    ``weyl-reflected`` is the Weyl representation composed with the spatial
    parity g_k -> -g_k, i.e. g_k = [[0, s_k], [-s_k, 0]].
    """
    _require(a, DIRAC, "dirac_rep")
    if kind not in DIRAC_KINDS:
        raise AlgebraError(f"unknown Dirac representation {kind!r}")
    return np.tensordot(a.coeffs, _dirac_blades(kind), axes=1)


@lru_cache(maxsize=None)
def _dirac_unrep_matrix(kind: str) -> np.ndarray:
    B = _dirac_blades(kind)
    return np.linalg.inv(B.reshape(16, 16).T)


def dirac_unrep(m, kind: str = "standard") -> Multivector:
    m = np.asarray(m, dtype=complex)
    return Multivector(DIRAC.sig, _dirac_unrep_matrix(kind) @ m.reshape(-1))


def expected_gammas(kind: str) -> list[np.ndarray]:
    """The block forms of g0..g3 and g5 given for each representation."""
    if kind == "standard":
        g0 = np.block([[I2, Z2], [Z2, -I2]])
    else:
        g0 = np.block([[Z2, I2], [I2, Z2]])
    sign = 1 if kind == "weyl-reflected" else -1
    gk = [np.block([[Z2, sign * s], [-sign * s, Z2]]) for s in SIGMA]
    g = [g0] + gk
    return g + [g[0] @ g[1] @ g[2] @ g[3]]


# -- verification ------------------------------------------------------------------

@dataclass(frozen=True)
class RepReport:
    kind: str
    samples: int
    homomorphism: float
    identity: float
    linearity: float

    @property
    def max_residual(self) -> float:
        return max(self.homomorphism, self.identity, self.linearity)


REP_KINDS = ("Pauli", "QuatCl13", "DiracStandard", "DiracWeyl")


def _rep_setup(kind: str):
    if kind == "Pauli":
        return CL30, pauli_rep, lambda m: np.asarray(m), False
    if kind == "QuatCl13":
        return CL13, quat_rep, quat_matrix_to_complex, False
    if kind == "DiracStandard":
        return DIRAC, lambda a: dirac_rep(a, "standard"), lambda m: m, True
    if kind == "DiracWeyl":
        return DIRAC, lambda a: dirac_rep(a, "weyl"), lambda m: m, True
    raise AlgebraError(f"unknown representation {kind!r}")


def verify_rep(kind: str, samples: int = 100, seed: int = 42) -> RepReport:
    if samples < 1:
        raise AlgebraError("samples must be >= 1")
    conv, rho, as_c, cplx = _rep_setup(kind)
    rng = np.random.default_rng(seed)
    allg = range(conv.sig.n + 1)
    hom = lin = 0.0
    for _ in range(samples):
        a = random_mv(rng, conv.sig, allg, cplx)
        b = random_mv(rng, conv.sig, allg, cplx)
        t = float(rng.uniform(-2, 2))
        ra, rb = as_c(rho(a)), as_c(rho(b))
        hom = max(hom, float(np.max(np.abs(as_c(rho(a * b)) - ra @ rb))))
        lin = max(lin, float(np.max(np.abs(as_c(rho(a + b * t)) - (ra + rb * t)))))
    ident = as_c(rho(conv.one()))
    idres = float(np.max(np.abs(ident - np.eye(ident.shape[0]))))
    return RepReport(kind, samples, hom, idres, lin)
