"""Dense multivector arithmetic over real Clifford algebras Cl(p, q), n = p + q <= 6.

Blades are indexed by bitmask: bit ``i`` set means generator ``i`` is present,
factors taken in ascending order.  Generator ``i`` squares to +1 when ``i < p``
and to -1 otherwise.  Coefficients are always complex128; real algebras are the
subset whose imaginary parts vanish.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_DIM = 6
REAL_TOL = 1e-12


class AlgebraError(ValueError):
    """Raised on signature mismatches and malformed arguments."""


class SingularError(ArithmeticError):
    """Raised when an element has no (numerically reliable) inverse."""


class NonConvergenceError(ArithmeticError):
    """Raised when the exponential series does not settle within the term budget."""


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise AlgebraError(f"negative signature ({self.p},{self.q})")
        if self.p + self.q > MAX_DIM:
            raise AlgebraError(f"n = {self.p + self.q} exceeds {MAX_DIM}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n

    def square(self, i: int) -> int:
        return 1 if i < self.p else -1

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q})"


def _popcount(x: int) -> int:
    return bin(x).count("1")


def blade_sign(sig: Signature, a: int, b: int) -> int:
    """Sign of e_a * e_b relative to e_(a^b), both in canonical order."""
    swaps = 0
    t = a >> 1
    while t:
        swaps += _popcount(t & b)
        t >>= 1
    s = -1 if swaps & 1 else 1
    common = a & b
    i = 0
    while common:
        if common & 1:
            s *= sig.square(i)
        common >>= 1
        i += 1
    return s


@lru_cache(maxsize=None)
def _tables(sig: Signature):
    # gather[A, C] = A ^ C, signs[A, C] = sign(e_A * e_(A^C)), so that
    # (ab)[C] = sum_A a[A] * b[A^C] * signs[A, C]
    N = sig.dim
    idx = np.arange(N)
    gather = idx[:, None] ^ idx[None, :]
    signs = np.empty((N, N), dtype=np.int8)
    for A in range(N):
        for C in range(N):
            signs[A, C] = blade_sign(sig, A, A ^ C)
    grades = np.array([_popcount(m) for m in range(N)])
    gather.setflags(write=False)
    signs.setflags(write=False)
    grades.setflags(write=False)
    return gather, signs.astype(np.float64), grades


def grade_of_masks(sig: Signature) -> np.ndarray:
    return _tables(sig)[2]


class Multivector:
    """Immutable dense multivector."""

    __slots__ = ("sig", "_c")
    __array_priority__ = 1000  # keep numpy scalars from broadcasting over us

    def __init__(self, sig: Signature, coeffs: Iterable[complex] | np.ndarray):
        c = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if c.shape[0] != sig.dim:
            raise AlgebraError(f"expected {sig.dim} coefficients, got {c.shape[0]}")
        if not np.all(np.isfinite(c)):
            raise AlgebraError("non-finite coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors
    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, np.zeros(sig.dim))

    @classmethod
    def scalar(cls, sig: Signature, value: complex = 1.0) -> "Multivector":
        c = np.zeros(sig.dim, dtype=np.complex128)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def blade(cls, sig: Signature, mask: int, value: complex = 1.0) -> "Multivector":
        if not 0 <= mask < sig.dim:
            raise AlgebraError(f"mask {mask} out of range for {sig}")
        c = np.zeros(sig.dim, dtype=np.complex128)
        c[mask] = value
        return cls(sig, c)

    @classmethod
    def generator(cls, sig: Signature, i: int) -> "Multivector":
        return cls.blade(sig, 1 << i)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __getitem__(self, mask: int) -> complex:
        return complex(self._c[mask])

    # arithmetic
    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.sig != self.sig:
                raise AlgebraError(f"signature mismatch: {self.sig} vs {other.sig}")
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector.scalar(self.sig, complex(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, self._c + o._c)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, self._c - o._c)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, o._c - self._c)

    def __neg__(self):
        return Multivector(self.sig, -self._c)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector(self.sig, self._c * complex(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector(self.sig, self._c * complex(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Multivector(self.sig, self._c / complex(other))
        return NotImplemented

    def __xor__(self, other):
        return wedge(self, other)

    # conveniences
    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def rev(self) -> "Multivector":
        return reversion(self)

    def inv(self) -> "Multivector":
        return grade_involution(self)

    def conj(self) -> "Multivector":
        return conjugation(self)

    def scalar_part(self) -> complex:
        return complex(self._c[0])

    def grades(self, tol: float = 1e-12) -> set[int]:
        g = grade_of_masks(self.sig)
        return {int(k) for k in np.unique(g[np.abs(self._c) > tol])}

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c))) if self._c.size else 0.0

    def is_real(self, tol: float = REAL_TOL) -> bool:
        return float(np.max(np.abs(self._c.imag))) <= tol

    def close(self, other, tol: float = 1e-12) -> bool:
        return residual(self, other) <= tol

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash((self.sig, self._c.tobytes()))

    def __repr__(self) -> str:
        terms = []
        for m in np.nonzero(np.abs(self._c) > 1e-14)[0]:
            c = self._c[m]
            name = "1" if m == 0 else "e" + "".join(str(i) for i in range(self.sig.n) if m >> i & 1)
            terms.append(f"({c.real:.6g}{c.imag:+.6g}j)*{name}")
        return f"Multivector[{self.sig}](" + (" + ".join(terms) or "0") + ")"


def residual(a: Multivector, b) -> float:
    """Max-abs coefficient difference."""
    return (a - b).max_abs()


def _check_same(a: Multivector, b: Multivector) -> None:
    if a.sig != b.sig:
        raise AlgebraError(f"signature mismatch: {a.sig} vs {b.sig}")


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    _check_same(a, b)
    gather, signs, _ = _tables(a.sig)
    out = (a.coeffs[:, None] * b.coeffs[gather] * signs).sum(axis=0)
    return Multivector(a.sig, out)


def left_matrix(a: Multivector) -> np.ndarray:
    """Matrix L with L @ b.coeffs == (a*b).coeffs."""
    gather, signs, _ = _tables(a.sig)
    N = a.sig.dim
    L = np.zeros((N, N), dtype=np.complex128)
    cols = gather  # column index B = A ^ C for row C
    rows = np.broadcast_to(np.arange(N)[None, :], (N, N))
    L[rows, cols] = a.coeffs[:, None] * signs
    return L


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.sig.n:
        raise AlgebraError(f"grade {k} out of range 0..{a.sig.n}")
    g = grade_of_masks(a.sig)
    return Multivector(a.sig, np.where(g == k, a.coeffs, 0))


def _grade_scale(a: Multivector, fn) -> Multivector:
    g = grade_of_masks(a.sig)
    return Multivector(a.sig, a.coeffs * np.array([fn(int(k)) for k in g]))


def reversion(a: Multivector) -> Multivector:
    return _grade_scale(a, lambda k: -1 if (k // 2) % 2 else 1)


def grade_involution(a: Multivector) -> Multivector:
    return _grade_scale(a, lambda k: -1 if k % 2 else 1)


def conjugation(a: Multivector) -> Multivector:
    return _grade_scale(a, lambda k: -1 if ((k // 2) + k) % 2 else 1)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    _check_same(a, b)
    N = a.sig.dim
    out = np.zeros(N, dtype=np.complex128)
    for A in np.nonzero(a.coeffs)[0]:
        for B in np.nonzero(b.coeffs)[0]:
            if A & B == 0:
                out[A | B] += a.coeffs[A] * b.coeffs[B] * blade_sign(a.sig, int(A), int(B))
    return Multivector(a.sig, out)


def contract_left(a: Multivector, b: Multivector) -> Multivector:
    """Left contraction: grade-(l-k) part of e_A e_B for A a subset of B."""
    _check_same(a, b)
    N = a.sig.dim
    out = np.zeros(N, dtype=np.complex128)
    for A in np.nonzero(a.coeffs)[0]:
        for B in np.nonzero(b.coeffs)[0]:
            if A & B == A:
                out[A ^ B] += a.coeffs[A] * b.coeffs[B] * blade_sign(a.sig, int(A), int(B))
    return Multivector(a.sig, out)


def bilinear_form(a: Multivector, b: Multivector) -> complex:
    """Metric extended to k-vectors by Gram determinants.

    For orthogonal generators the Gram matrix of two blades is diagonal when
    the blades coincide and singular otherwise, so the form reduces to a sum
    over matching masks weighted by the product of generator squares.
    """
    _check_same(a, b)
    sig = a.sig
    w = np.array([math.prod(sig.square(i) for i in range(sig.n) if m >> i & 1)
                  for m in range(sig.dim)], dtype=np.float64)
    return complex(np.sum(a.coeffs * b.coeffs * w))


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return a * b - b * a


def exp(a: Multivector, max_terms: int = 200) -> Multivector:
    """Series exponential with scaling and squaring."""
    norm = a.max_abs()
    s = 0
    if norm > 1.0:
        s = int(math.ceil(math.log2(norm))) + 1
    x = a / (2 ** s)
    one = Multivector.scalar(a.sig, 1.0)
    result = one
    term = one
    for k in range(1, max_terms + 1):
        term = (term * x) / k
        result = result + term
        if term.max_abs() < 1e-16:
            break
    else:
        raise NonConvergenceError(f"exp series did not converge in {max_terms} terms")
    for _ in range(s):
        result = result * result
    return result


def inverse(a: Multivector, cond_limit: float = 1e12) -> Multivector:
    L = left_matrix(a)
    cond = np.linalg.cond(L)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularError(f"element is singular (condition estimate {cond:.3g})")
    rhs = np.zeros(a.sig.dim, dtype=np.complex128)
    rhs[0] = 1.0
    return Multivector(a.sig, np.linalg.solve(L, rhs))


def twisted_adjoint_core(g: Multivector, v: Multivector) -> Multivector:
    return g * v * reversion(g)


@dataclass(frozen=True)
class GroupReport:
    group: str
    member: bool
    residual: float
    parity_residual: float = 0.0


def group_check(a: Multivector, which: str, tol: float = 1e-9) -> GroupReport:
    """Membership in SpinPlus (R R~ = 1, even), PinPlus (R R~ = 1) or DollarPin (D Dbar = 1)."""
    one = Multivector.scalar(a.sig, 1.0)
    if which in ("SpinPlus", "PinPlus"):
        res = residual(a * reversion(a), one)
    elif which == "DollarPin":
        res = residual(a * conjugation(a), one)
    else:
        raise AlgebraError(f"unknown group {which!r}")
    parity = 0.0
    if which == "SpinPlus":
        g = grade_of_masks(a.sig)
        odd = np.abs(a.coeffs[g % 2 == 1])
        parity = float(odd.max()) if odd.size else 0.0
    return GroupReport(which, res <= tol and parity <= tol, res, parity)


def random_mv(seed: int | np.random.Generator, sig: Signature, grades: Iterable[int],
              complex_coeffs: bool = False) -> Multivector:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    grades = set(grades)
    g = grade_of_masks(sig)
    mask = np.isin(g, list(grades)) if grades else np.zeros(sig.dim, dtype=bool)
    c = rng.uniform(-1.0, 1.0, sig.dim) * mask
    if complex_coeffs:
        c = c + 1j * rng.uniform(-1.0, 1.0, sig.dim) * mask
    return Multivector(sig, c)


# -- serialization ---------------------------------------------------------

def to_json_obj(a: Multivector, tol: float = 1e-14) -> dict:
    entries = [[int(m), float(a.coeffs[m].real), float(a.coeffs[m].imag)]
               for m in range(a.sig.dim) if abs(a.coeffs[m]) > tol]
    return {"sig": [a.sig.p, a.sig.q], "coeffs": entries}


def to_json(a: Multivector) -> str:
    return json.dumps(to_json_obj(a), separators=(",", ":"))


def from_json_obj(obj: Mapping) -> Multivector:
    if not isinstance(obj, Mapping):
        raise AlgebraError("multivector JSON must be an object with 'sig' and 'coeffs'")
    for key in ("sig", "coeffs"):
        if key not in obj:
            raise AlgebraError(f"{key}: missing field")
    try:
        p, q = obj["sig"]
        sig = Signature(int(p), int(q))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise AlgebraError(f"sig: {exc}") from exc
        raise AlgebraError(f"sig: expected [p, q], got {obj['sig']!r}") from exc
    c = np.zeros(sig.dim, dtype=np.complex128)
    if not isinstance(obj["coeffs"], list):
        raise AlgebraError("coeffs: expected a list of [mask, re, im]")
    for k, entry in enumerate(obj["coeffs"]):
        try:
            mask, re, im = entry
            mask = int(mask)
            val = complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise AlgebraError(f"coeffs[{k}]: expected [mask, re, im], got {entry!r}") from exc
        if not 0 <= mask < sig.dim:
            raise AlgebraError(f"coeffs[{k}]: mask {mask} out of range for {sig}")
        c[mask] += val
    return Multivector(sig, c)


def from_json(text: str) -> Multivector:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"invalid JSON: {exc}") from exc
    return from_json_obj(obj)


# -- named bases -------------------------------------------------------------

@dataclass(frozen=True)
class BasisConvention:
    """Maps conventional generator indices to bit positions of a Signature.

    ``indices`` lists the conventional generator labels in their natural order and
    ``bits`` the bit each one occupies.  Blade labels such as ``"04"`` mean the
    product of the named generators in the order written.
    """

    label: str
    symbol: str
    sig: Signature
    indices: tuple[int, ...]
    bits: tuple[int, ...]

    def bit(self, index: int) -> int:
        try:
            return self.bits[self.indices.index(index)]
        except ValueError:
            raise AlgebraError(f"{self.label} has no generator {self.symbol}{index}") from None

    def square(self, index: int) -> int:
        return self.sig.square(self.bit(index))

    def gen(self, index: int) -> Multivector:
        return Multivector.generator(self.sig, self.bit(index))

    def one(self) -> Multivector:
        return Multivector.scalar(self.sig, 1.0)

    def blade(self, label: str | Sequence[int]) -> Multivector:
        """Ordered product of generators, e.g. blade("123") or blade([0, 4])."""
        idx = [int(ch) for ch in label] if isinstance(label, str) else list(label)
        out = self.one()
        for i in idx:
            out = out * self.gen(i)
        return out

    def labels(self) -> list[str]:
        """All blade labels with ascending generator indices, grade by grade."""
        from itertools import combinations
        out = []
        for k in range(self.sig.n + 1):
            for combo in combinations(self.indices, k):
                out.append("".join(str(i) for i in combo))
        return out

    def label_mask_sign(self, label: str) -> tuple[int, int]:
        b = self.blade(label)
        m = int(np.argmax(np.abs(b.coeffs)))
        return m, int(round(b.coeffs[m].real))

    def coeff(self, a: Multivector, label: str) -> complex:
        """Coefficient of the blade written ``label`` in the expansion of a."""
        m, s = self.label_mask_sign(label)
        return complex(a.coeffs[m] * s)

    def coeff_dict(self, a: Multivector, tol: float = 0.0) -> dict[str, complex]:
        out = {}
        for lab in self.labels():
            c = self.coeff(a, lab)
            if abs(c) > tol:
                out[lab] = c
        return out

    def from_labels(self, terms: Mapping[str, complex]) -> Multivector:
        out = Multivector.zero(self.sig)
        for lab, c in terms.items():
            out = out + self.blade(lab) * c
        return out


CL30 = BasisConvention("Cl30", "e", Signature(3, 0), (1, 2, 3), (0, 1, 2))
CL13 = BasisConvention("Cl13", "γ", Signature(1, 3), (0, 1, 2, 3), (0, 1, 2, 3))
DIRAC = BasisConvention("DiracComplex", "γ", Signature(1, 3), (0, 1, 2, 3), (0, 1, 2, 3))
# E0 squares to -1, so it must sit after the four +1 generators
CL41 = BasisConvention("Cl41", "E", Signature(4, 1), (0, 1, 2, 3, 4), (4, 0, 1, 2, 3))
# eps0, eps5 square to +1; eps1..eps4 to -1
CL24 = BasisConvention("Cl24", "ε", Signature(2, 4), (0, 1, 2, 3, 4, 5), (0, 2, 3, 4, 5, 1))

CONVENTIONS = {c.label: c for c in (CL30, CL13, CL41, CL24, DIRAC)}


def gamma5() -> Multivector:
    return CL13.blade("0123")
