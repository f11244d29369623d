"""Independent reference computations used by the tests.

Nothing here calls into the package's product tables: Clifford products are
checked against a Jordan-Wigner matrix model, and the printed tables are typed
out entry by entry.
"""

from functools import reduce

import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
O2 = np.zeros((2, 2), dtype=complex)
SIG = (X, Y, Z)


def _kron(mats):
    return reduce(np.kron, mats)


def jw_generators(p: int, q: int) -> list[np.ndarray]:
    """Faithful complex matrices for the generators of Cl(p,q), bit i squaring to +1 iff i < p.

    Odd n is padded with one spare generator so that the image is a full
    matrix algebra and the map stays injective.
    """
    n = p + q
    m = (n + 1) // 2
    out = []
    for k in range(n):
        j = k // 2
        mats = [Z] * j + [X if k % 2 == 0 else Y] + [I2] * (m - j - 1)
        g = _kron(mats)
        out.append(g if k < p else 1j * g)
    return out


def blade_matrices(p: int, q: int) -> np.ndarray:
    gens = jw_generators(p, q)
    n = p + q
    dim = gens[0].shape[0]
    out = []
    for mask in range(1 << n):
        M = np.eye(dim, dtype=complex)
        for i in range(n):
            if mask >> i & 1:
                M = M @ gens[i]
        out.append(M)
    return np.array(out)


def mv_matrix(coeffs, p: int, q: int) -> np.ndarray:
    return np.tensordot(np.asarray(coeffs), blade_matrices(p, q), axes=1)


def block(a, b, c, d):
    return np.block([[a, b], [c, d]])


# the printed Dirac tables, entry by entry
STD_G0 = np.diag([1, 1, -1, -1]).astype(complex)
STD_G10 = np.fliplr(np.eye(4)).astype(complex)
STD_G30 = np.array([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=complex)
STD_GK = [block(O2, -s, s, O2) for s in SIG]

WEYL_G0 = block(O2, I2, I2, O2)
WEYL_G1 = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=complex)
WEYL_G2 = np.array([[0, 0, 0, 1j], [0, 0, -1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]], dtype=complex)
WEYL_G3 = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=complex)
WEYL_G5 = np.diag([-1j, -1j, 1j, 1j])

# reflected variant used for the Penrose form
REFL_G0 = WEYL_G0
REFL_GK = [block(O2, s, -s, O2) for s in SIG]


def quaternion_matrix(q0, q1, q2, q3) -> np.ndarray:
    """q0 + q1 i + q2 j + q3 k with i, j, k -> -i sigma_1, -i sigma_2, -i sigma_3."""
    return q0 * I2 - 1j * (q1 * X + q2 * Y + q3 * Z)


def quat_block_matrix(m) -> np.ndarray:
    """2x2 quaternionic matrix (package object with .a .b .c .d) as a 4x4 complex matrix."""
    def q(v):
        return quaternion_matrix(v.q0, v.q1, v.q2, v.q3)
    return block(q(m.a), q(m.b), q(m.c), q(m.d))


def hamilton(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


# conformal maps on coordinates (x0, x1, x2, x3), using x0 I + x.sigma as the matrix of x

def para_matrix(x) -> np.ndarray:
    return x[0] * I2 + x[1] * X + x[2] * Y + x[3] * Z


def para_coords(M) -> np.ndarray:
    return np.array([np.trace(M) / 2, np.trace(M @ X) / 2, np.trace(M @ Y) / 2,
                     np.trace(M @ Z) / 2]).real


def lorentz_norm(x) -> float:
    return float(x[0] ** 2 - x[1] ** 2 - x[2] ** 2 - x[3] ** 2)


def inversion(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.array([-x[0], x[1], x[2], x[3]]) / lorentz_norm(x)


def transvection(h, x) -> np.ndarray:
    H, Xm = para_matrix(h), para_matrix(x)
    return para_coords(Xm @ np.linalg.inv(H @ Xm + np.eye(2)))


def penrose(x, xi) -> np.ndarray:
    xv = x[0] * I2 + x[1] * X + x[2] * Y + x[3] * Z
    return np.concatenate([1j * xv @ xi, xi])
