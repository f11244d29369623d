"""Cl(4,1) = C (x) Cl(1,3) in three flavours, the periodicity split and the R^{2,4} embedding.

Every cross-algebra map is an explicit linear operator whose columns are the
images of canonical blades, obtained by multiplying generator images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (CL24, CL30, CL41, DIRAC, AlgebraError, Multivector, conjugation,
                      grade_of_masks, residual, reversion)
from .reps import dirac_rep

ISO_KINDS = ("A", "B", "C")


def _gen_images(kind: str) -> dict[int, Multivector]:
    g = DIRAC.blade
    if kind == "A":
        # g_nu = E_nu E_4
        return {0: -1j * g("123"), 1: -1j * g("023"), 2: 1j * g("013"),
                3: -1j * g("012"), 4: -1j * g("0123")}
    if kind == "B":
        # E_mu -> -i g_mu
        return {0: -1j * g("0"), 1: -1j * g("1"), 2: -1j * g("2"),
                3: -1j * g("3"), 4: -1j * g("0123")}
    if kind == "C":
        return {0: 1j * g("0"), 1: g("10"), 2: g("20"), 3: g("30"), 4: g("0123") * g("0")}
    raise AlgebraError(f"unknown isomorphism kind {kind!r}")


def generator_images(kind: str) -> dict[int, Multivector]:
    """Images of E_0..E_4 (keyed by index) in C (x) Cl(1,3)."""
    return dict(_gen_images(kind))


@lru_cache(maxsize=None)
def _operators(kind: str):
    imgs = _gen_images(kind)
    cols = []
    for m in range(CL41.sig.dim):
        x = DIRAC.one()
        for bit in range(CL41.sig.n):
            if m >> bit & 1:
                x = x * imgs[CL41.indices[CL41.bits.index(bit)]]
        cols.append(x.coeffs)
    T = np.array(cols).T  # 16 x 32 complex, real-linear in the Cl(4,1) coefficients
    R = np.vstack([T.real, T.imag])
    Rinv = np.linalg.inv(R)
    for a in (T, Rinv):
        a.setflags(write=False)
    return T, Rinv


def iso_forward(a: Multivector, kind: str, tol: float = 1e-9) -> Multivector:
    if a.sig != CL41.sig:
        raise AlgebraError(f"iso_forward expects Cl(4,1), got {a.sig}")
    if not a.is_real(tol):
        raise AlgebraError("iso_forward is real-linear; input must have real coefficients")
    T, _ = _operators(kind)
    return Multivector(DIRAC.sig, T @ a.coeffs.real)


def iso_backward(b: Multivector, kind: str) -> Multivector:
    if b.sig != DIRAC.sig:
        raise AlgebraError(f"iso_backward expects C (x) Cl(1,3), got {b.sig}")
    _, Rinv = _operators(kind)
    return Multivector(CL41.sig, Rinv @ np.concatenate([b.coeffs.real, b.coeffs.imag]))


def iso_operator(kind: str) -> np.ndarray:
    return _operators(kind)[0]


def dirac_image(a: Multivector, kind: str, rep: str = "standard") -> np.ndarray:
    """4x4 complex matrix of a Cl(4,1) element through the chosen identification."""
    return dirac_rep(iso_forward(a, kind), rep)


# -- coefficient dictionaries ---------------------------------------------------------

# B-coefficients (gamma-blade expansion) in terms of H-coefficients (E-blade
# expansion).  "s" is the scalar; a leading "i" marks an imaginary weight.
# Kind A agrees with the printed list.  Kind B fixes the B^2 entry; kind C is
# recomputed from the generator images (see the decisions ledger).
COEFF_TABLES = {
    "A": "s:s i01234|0:04 -i123|1:14 -i023|2:24 i013|3:34 -i012|12:-12 i034|13:-13 -i024|"
         "23:-23 i014|01:-01 -i234|02:-02 i134|03:-03 -i124|012:-0124 -i3|013:-0134 i2|"
         "023:-0234 -i1|123:-1234 -i0|0123:0123 -i4",
    "B": "s:s i01234|0:-1234 -i0|1:-0234 -i1|2:0134 -i2|3:-0124 -i3|12:-12 i034|13:-13 -i024|"
         "23:-23 i014|01:-01 -i234|02:-02 i134|03:-03 -i124|012:-34 i012|013:24 i013|"
         "023:-14 i023|123:-04 i123|0123:0123 -i4",
    "C": "s:s -i01234|0:-1234 i0|1:-234 -i01|2:134 -i02|3:-124 -i03|12:-12 -i034|13:-13 i024|"
         "23:-23 -i014|01:-1 -i0234|02:-2 i0134|03:-3 -i0124|012:-34 -i012|013:24 -i013|"
         "023:-14 -i023|123:-4 i0123|0123:123 -i04",
}
PRINTED_COEFF_TABLES = {
    "A": COEFF_TABLES["A"],
    "B": COEFF_TABLES["B"].replace("2:0134 -i2", "2:0134 i2"),
    "C": "s:s i01234|0:1234 -i0|1:234 i01|2:134 i02|3:-124 i03|12:-12 i034|13:-13 -i024|"
         "23:-23 i014|01:1 i014|02:-2 -i0134|03:-3 i0124|012:-34 i012|013:24 i013|"
         "023:-14 i023|123:-4 -i0123|0123:123 i04",
}
_TERM = re.compile(r"([+-]?)(i?)(\d+|s)")


def _parse_table(text: str) -> dict[str, list[tuple[complex, str]]]:
    out = {}
    for item in text.split("|"):
        lhs, rhs = item.split(":")
        terms = []
        for tok in rhs.split():
            m = _TERM.fullmatch(tok)
            if m is None:
                raise AlgebraError(f"bad dictionary term {tok!r}")
            c = (-1 if m.group(1) == "-" else 1) * (1j if m.group(2) else 1)
            terms.append((c, "" if m.group(3) == "s" else m.group(3)))
        out["" if lhs == "s" else lhs] = terms
    return out


@dataclass(frozen=True)
class CoeffDict:
    kind: str
    rows: dict  # B-label -> [(weight, H-label), ...]

    def matrix(self) -> np.ndarray:
        """16 x 32 complex matrix from H (masks of Cl(4,1)) to B (masks of Cl(1,3))."""
        M = np.zeros((DIRAC.sig.dim, CL41.sig.dim), dtype=complex)
        for bl, terms in self.rows.items():
            mB, sB = DIRAC.label_mask_sign(bl)
            for w, hl in terms:
                mH, sH = CL41.label_mask_sign(hl)
                M[mB, mH] += w * sB * sH
        return M

    def forward(self, H: dict[str, float]) -> dict[str, complex]:
        """Map H-coefficients (by label) to B-coefficients (by label)."""
        return {bl: complex(sum(w * H.get(hl, 0.0) for w, hl in terms))
                for bl, terms in self.rows.items()}

    def backward(self, B: dict[str, complex]) -> dict[str, float]:
        """Inverse of forward: recover real H-coefficients."""
        M = self.matrix()
        b = np.zeros(DIRAC.sig.dim, dtype=complex)
        for bl, v in B.items():
            mB, sB = DIRAC.label_mask_sign(bl)
            b[mB] = v * sB
        h = np.linalg.solve(np.vstack([M.real, M.imag]), np.concatenate([b.real, b.imag]))
        a = Multivector(CL41.sig, h)
        return {hl: CL41.coeff(a, hl).real for hl in CL41.labels()}


def coeff_dict(kind: str, printed: bool = False) -> CoeffDict:
    src = PRINTED_COEFF_TABLES if printed else COEFF_TABLES
    if kind not in src:
        raise AlgebraError(f"unknown isomorphism kind {kind!r}")
    return CoeffDict(kind, _parse_table(src[kind]))


def coeff_dict_residual(kind: str, printed: bool = False) -> tuple[float, list[str]]:
    """Max entry difference between the dictionary and the operator, and the offending B-labels."""
    D = coeff_dict(kind, printed).matrix()
    T = iso_operator(kind)
    bad = []
    for bl in DIRAC.labels():
        m, _ = DIRAC.label_mask_sign(bl)
        if np.max(np.abs(D[m] - T[m])) > 1e-12:
            bad.append(bl or "s")
    return float(np.max(np.abs(D - T))), bad


# -- involutions and their block forms ---------------------------------------------------

def bullet(Z: Multivector) -> Multivector:
    E4 = CL41.gen(4)
    return E4 * reversion(Z) * E4


def triangle(Z: Multivector) -> Multivector:
    E4 = CL41.gen(4)
    return E4 * Z * E4


def _blocks(M):
    return M[:2, :2], M[:2, 2:], M[2:, :2], M[2:, 2:]


def adj(p: np.ndarray) -> np.ndarray:
    return np.array([[p[1, 1], -p[0, 1]], [-p[1, 0], p[0, 0]]])


def cof(p: np.ndarray) -> np.ndarray:
    return np.array([[p[1, 1], -p[1, 0]], [-p[0, 1], p[0, 0]]])


def _dag(p):
    return p.conj().T


def _blk(a, b, c, d):
    return np.block([[a, b], [c, d]])


_OPS = {
    "conjugation": conjugation,
    "reversion": reversion,
    "involution": lambda z: Multivector(z.sig, z.coeffs * (-1.0) ** grade_of_masks(z.sig)),
    "bullet": bullet,
    "triangle": triangle,
}

# block formulas acting on [[p1, p2], [p3, p4]]
BLOCK_FORMULAS = {
    "A": {
        "conjugation": lambda p1, p2, p3, p4: _blk(_dag(p4), -_dag(p2), -_dag(p3), _dag(p1)),
        "reversion": lambda p1, p2, p3, p4: _blk(adj(p4), adj(p2), adj(p3), adj(p1)),
        "involution": lambda p1, p2, p3, p4: _blk(cof(p1).conj(), -cof(p2).conj(),
                                                  -cof(p3).conj(), cof(p4).conj()),
        "bullet": lambda p1, p2, p3, p4: _blk(adj(p1), adj(p3), adj(p2), adj(p4)),
        "triangle": lambda p1, p2, p3, p4: _blk(p4, p3, p2, p1),
    },
    "B": {
        "conjugation": lambda p1, p2, p3, p4: _blk(_dag(p1), -_dag(p3), -_dag(p2), _dag(p4)),
        # under this identification reversion and bullet trade places
        # relative to the other one
        "reversion": lambda p1, p2, p3, p4: _blk(adj(p1), adj(p3), adj(p2), adj(p4)),
        "involution": lambda p1, p2, p3, p4: _blk(cof(p1).conj(), -cof(p2).conj(),
                                                  -cof(p3).conj(), cof(p4).conj()),
        "bullet": lambda p1, p2, p3, p4: _blk(adj(p4), adj(p2), adj(p3), adj(p1)),
        "triangle": lambda p1, p2, p3, p4: _blk(p4, p3, p2, p1),
    },
}
# kind B as printed reuses the kind A reversion and bullet forms
PRINTED_BLOCK_FORMULAS = {
    "A": dict(BLOCK_FORMULAS["A"]),
    "B": {**BLOCK_FORMULAS["B"], "reversion": BLOCK_FORMULAS["A"]["reversion"],
          "bullet": BLOCK_FORMULAS["A"]["bullet"]},
}


@dataclass(frozen=True)
class CheckReport:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def antiauto_matrix_check(Z: Multivector, which: str, kind: str, printed: bool = False,
                          tol: float = 1e-10) -> CheckReport:
    table = PRINTED_BLOCK_FORMULAS if printed else BLOCK_FORMULAS
    if kind not in table or which not in _OPS:
        raise AlgebraError(f"no block formula for {which!r} under kind {kind!r}")
    lhs = dirac_image(_OPS[which](Z), kind)
    rhs = table[kind][which](*_blocks(dirac_image(Z, kind)))
    return CheckReport(f"{kind}:{which}", float(np.max(np.abs(lhs - rhs))), tol)


J_SU22 = np.diag([1, 1, -1, -1]).astype(complex)
OMEGA_SP = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]]).astype(complex)


@dataclass(frozen=True)
class GroupMatrixReport:
    name: str
    form: float
    det: float
    algebra: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.form, self.det, self.algebra) <= self.tol


def _form_report(name, Z, kind, J, tol):
    M = dirac_image(Z, kind)
    form = float(np.max(np.abs(M.conj().T @ J @ M - J)))
    det = float(abs(np.linalg.det(M) - 1))
    alg = residual(Z * conjugation(Z), CL41.one())
    return GroupMatrixReport(name, form, det, alg, tol)


def su22_check(Z: Multivector, tol: float = 1e-8) -> GroupMatrixReport:
    """Kind-B image satisfies Z^dag J Z = J, det Z = 1; and Z Zbar = 1 in Cl(4,1)."""
    return _form_report("SU(2,2)", Z, "B", J_SU22, tol)


def sp2_check(Z: Multivector, tol: float = 1e-8) -> GroupMatrixReport:
    """Kind-A image satisfies Z^dag Omega Z = Omega with Omega = [[0, 1], [-1, 0]] blocks."""
    return _form_report("Sp(2,C)", Z, "A", OMEGA_SP, tol)


# -- periodicity split Cl(4,1) -> M(2, Cl(3,0)) -----------------------------------------------

@dataclass(frozen=True)
class VahlenSplit:
    """Block matrix [[a, c], [b, d]] over Cl(3,0); acts as x -> (a x + c)(b x + d)^-1."""

    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector

    def __matmul__(self, o: "VahlenSplit") -> "VahlenSplit":
        return VahlenSplit(
            a=self.a * o.a + self.c * o.b,
            b=self.b * o.a + self.d * o.b,
            c=self.a * o.c + self.c * o.d,
            d=self.b * o.c + self.d * o.d,
        )

    def __add__(self, o: "VahlenSplit") -> "VahlenSplit":
        return VahlenSplit(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def scale(self, s) -> "VahlenSplit":
        return VahlenSplit(self.a * s, self.b * s, self.c * s, self.d * s)

    def rows(self):
        return ((self.a, self.c), (self.b, self.d))

    def residual(self, o: "VahlenSplit") -> float:
        return max(residual(x, y) for x, y in zip((self.a, self.b, self.c, self.d),
                                                   (o.a, o.b, o.c, o.d)))

    @classmethod
    def identity(cls) -> "VahlenSplit":
        one, z = CL30.one(), Multivector.zero(CL30.sig)
        return cls(one, z, z, one)


def _split_gen(index: int) -> VahlenSplit:
    one, z = CL30.one(), Multivector.zero(CL30.sig)
    if index in (1, 2, 3):
        e = CL30.gen(index)
        return VahlenSplit(a=e, b=z, c=z, d=-e)
    if index == 4:
        return VahlenSplit(a=z, b=one, c=one, d=z)
    return VahlenSplit(a=z, b=one, c=-one, d=z)  # E_0


@lru_cache(maxsize=None)
def _split_blades() -> tuple[VahlenSplit, ...]:
    out = []
    for m in range(CL41.sig.dim):
        x = VahlenSplit.identity()
        for bit in range(CL41.sig.n):
            if m >> bit & 1:
                x = x @ _split_gen(CL41.indices[CL41.bits.index(bit)])
        out.append(x)
    return tuple(out)


@lru_cache(maxsize=None)
def _split_operator() -> tuple[np.ndarray, np.ndarray]:
    cols = [np.concatenate([s.a.coeffs, s.b.coeffs, s.c.coeffs, s.d.coeffs]).real
            for s in _split_blades()]
    S = np.array(cols).T  # 32 x 32 real
    Sinv = np.linalg.inv(S)
    S.setflags(write=False)
    Sinv.setflags(write=False)
    return S, Sinv


def periodicity_split(a: Multivector) -> VahlenSplit:
    """E_i -> [[e_i, 0], [0, -e_i]], E_4 -> [[0, 1], [1, 0]], E_0 -> [[0, -1], [1, 0]]."""
    if a.sig != CL41.sig:
        raise AlgebraError(f"periodicity_split expects Cl(4,1), got {a.sig}")
    S, _ = _split_operator()
    v = S @ a.coeffs  # S is real, so complex coefficients pass through linearly
    q = CL30.sig.dim
    return VahlenSplit(*(Multivector(CL30.sig, v[k * q:(k + 1) * q]) for k in range(4)))


def periodicity_join(s: VahlenSplit) -> Multivector:
    _, Sinv = _split_operator()
    v = np.concatenate([s.a.coeffs, s.b.coeffs, s.c.coeffs, s.d.coeffs])
    return Multivector(CL41.sig, Sinv @ v)


def split_tensor_factors(index: int) -> tuple[Multivector, np.ndarray]:
    """Generator E_index as (Cl(3,0) factor) (x) (2x2 real matrix of Cl(1,1))."""
    one = CL30.one()
    if index in (1, 2, 3):
        return CL30.gen(index), np.diag([1.0, -1.0])
    if index == 4:
        return one, np.array([[0.0, 1.0], [1.0, 0.0]])
    if index == 0:
        return one, np.array([[0.0, -1.0], [1.0, 0.0]])
    raise AlgebraError(f"Cl(4,1) has no generator E{index}")


# -- R^{2,4} embedding ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _xi_images() -> dict[int, Multivector]:
    return {A: CL24.gen(A) * CL24.gen(5) for A in range(5)}


@lru_cache(maxsize=None)
def _xi_operator() -> tuple[np.ndarray, np.ndarray]:
    imgs = _xi_images()
    cols = []
    for m in range(CL41.sig.dim):
        x = CL24.one()
        for bit in range(CL41.sig.n):
            if m >> bit & 1:
                x = x * imgs[CL41.indices[CL41.bits.index(bit)]]
        cols.append(x.coeffs.real)
    X = np.array(cols).T  # 64 x 32, onto the even part of Cl(2,4)
    Xpinv = np.linalg.pinv(X)
    X.setflags(write=False)
    Xpinv.setflags(write=False)
    return X, Xpinv


def xi(a: Multivector) -> Multivector:
    """Cl(4,1) -> Cl(2,4)+ with E_A -> eps_A eps_5."""
    if a.sig != CL41.sig:
        raise AlgebraError(f"xi expects Cl(4,1), got {a.sig}")
    X, _ = _xi_operator()
    return Multivector(CL24.sig, X @ a.coeffs)


def xi_inverse(b: Multivector, tol: float = 1e-10) -> Multivector:
    if b.sig != CL24.sig:
        raise AlgebraError(f"xi_inverse expects Cl(2,4), got {b.sig}")
    g = grade_of_masks(b.sig)
    if np.max(np.abs(b.coeffs[g % 2 == 1]), initial=0.0) > tol:
        raise AlgebraError("xi_inverse expects an even element of Cl(2,4)")
    _, Xp = _xi_operator()
    return Multivector(CL41.sig, Xp @ b.coeffs)


def embed_cl24(b: Multivector, tol: float = 1e-12) -> Multivector:
    """Grade-1 alpha in Cl(2,4) with xi(b) = alpha eps_5 for a paravector b of Cl(4,1)."""
    if b.sig != CL41.sig:
        raise AlgebraError(f"embed_cl24 expects Cl(4,1), got {b.sig}")
    if not b.grades(tol) <= {0, 1}:
        raise AlgebraError("embed_cl24 expects a paravector (grades 0 and 1 only)")
    alpha = CL24.gen(5) * b.scalar_part()
    for A in range(5):
        alpha = alpha + CL24.gen(A) * CL41.coeff(b, str(A))
    return alpha
