"""Named verification suites that produce deterministic per-check reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import conformal as cf
from . import lie, reps, twistor
from .algebra import (CL13, CL24, CL30, CL41, DIRAC, Multivector, commutator, conjugation, exp,
                      from_json, gamma5, grade_involution, grade_project, random_mv, residual,
                      reversion, to_json)
from .iso import (BLOCK_FORMULAS, ISO_KINDS, antiauto_matrix_check, coeff_dict_residual,
                  iso_backward, iso_forward, periodicity_join, periodicity_split, sp2_check,
                  su22_check)

SUITE_NAMES = ("core", "reps", "iso", "conformal", "lie", "twistor")


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def to_json_obj(self) -> dict:
        return {"name": self.name, "residual": float(self.residual), "tol": self.tol,
                "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json_obj(self, timing: bool = False) -> dict:
        out = {"suite": self.suite, "seed": self.seed, "pass": self.passed,
               "checks": [c.to_json_obj() for c in self.checks]}
        if timing:
            out["wall_time"] = self.wall_time
        return out


class _Recorder:
    def __init__(self, report: SuiteReport, tol_scale: float):
        self.report = report
        self.scale = tol_scale

    def __call__(self, name: str, res: float, tol: float) -> None:
        self.report.checks.append(Check(name, float(res), tol * self.scale))


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


# -- core ------------------------------------------------------------------------------

def _anticommutation(conv) -> float:
    worst = 0.0
    idx = conv.indices
    for i in idx:
        for j in idx:
            lhs = conv.gen(i) * conv.gen(j) + conv.gen(j) * conv.gen(i)
            target = 2 * conv.square(i) if i == j else 0
            worst = max(worst, residual(lhs, conv.one() * target))
    return worst


def core_suite(add, rng) -> None:
    for conv in (CL30, CL13, CL41, CL24, DIRAC):
        add(f"{conv.label}:anticommutation", _anticommutation(conv), 0.0)
    for conv, g5 in ((DIRAC, gamma5()), (CL13, CL13.blade("0123"))):
        add(f"{conv.label}:g5^2=-1", residual(g5 * g5, -conv.one()), 0.0)
        add(f"{conv.label}:g5 anticommutes",
            max((g5 * conv.gen(m) + conv.gen(m) * g5).max_abs() for m in range(4)), 0.0)
    for conv in (CL30, CL41, CL24):
        sig = conv.sig
        allg = range(sig.n + 1)
        assoc = rev = inv = 0.0
        for _ in range(100):
            a, b, c = (random_mv(rng, sig, allg) for _ in range(3))
            assoc = max(assoc, residual((a * b) * c, a * (b * c)))
            rev = max(rev, residual(reversion(a * b), reversion(b) * reversion(a)))
            inv = max(inv, residual(grade_involution(a * b), grade_involution(a) * grade_involution(b)))
        add(f"{conv.label}:associativity", assoc, 1e-12)
        add(f"{conv.label}:reversion anti-automorphism", rev, 1e-12)
        add(f"{conv.label}:grade involution automorphism", inv, 1e-12)
    rt = 0.0
    for conv in (CL30, CL41, CL24):
        for _ in range(20):
            a = random_mv(rng, conv.sig, range(conv.sig.n + 1), True)
            rt = max(rt, residual(from_json(to_json(a)), a))
    add("json round trip", rt, 1e-14)
    spin = 0.0
    for _ in range(20):
        R = exp(random_mv(rng, CL24.sig, (2,)))
        spin = max(spin, residual(R * reversion(R), CL24.one()))
    add("Cl(2,4): exp(bivector) R R~ = 1", spin, 1e-10)


# -- reps ------------------------------------------------------------------------------

QUAT_GAMMAS = (
    ((1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (-1, 0, 0, 0)),
    ((0, 0, 0, 0), (0, 1, 0, 0), (0, 1, 0, 0), (0, 0, 0, 0)),
    ((0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 1, 0), (0, 0, 0, 0)),
    ((0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 1), (0, 0, 0, 0)),
)  # blocks (a, b, c, d) of [[a, b], [c, d]] as (q0, q1, q2, q3)


def _unit_entry_distance(M: np.ndarray) -> float:
    units = np.array([0, 1, -1, 1j, -1j])
    return float(np.max(np.min(np.abs(M.reshape(-1, 1) - units), axis=1)))


def reps_suite(add, rng) -> None:
    pauli = max(float(np.max(np.abs(reps.pauli_rep(CL30.gen(k + 1)) - reps.SIGMA[k])))
                for k in range(3))
    add("Pauli: generator images", pauli, 0.0)
    quat = 0.0
    for mu, blocks in enumerate(QUAT_GAMMAS):
        m = reps.quat_rep(CL13.gen(mu))
        got = [m.a, m.b, m.c, m.d]
        for q, want in zip(got, blocks):
            quat = max(quat, max(abs(x - y) for x, y in zip((q.q0, q.q1, q.q2, q.q3), want)))
    add("QuatCl13: generator images", quat, 0.0)
    for kind in ("standard", "weyl"):
        exp_g = reps.expected_gammas(kind)
        got = [reps.dirac_rep(DIRAC.gen(m), kind) for m in range(4)] + [reps.dirac_rep(gamma5(), kind)]
        add(f"Dirac {kind}: generator images",
            max(float(np.max(np.abs(g - e))) for g, e in zip(got, exp_g)), 0.0)
        add(f"Dirac {kind}: entries in {{0, +-1, +-i}}",
            max(_unit_entry_distance(g) for g in got), 0.0)
    for kind in reps.REP_KINDS:
        r = reps.verify_rep(kind, samples=100, seed=int(rng.integers(2 ** 31)))
        add(f"{kind}: homomorphism", r.homomorphism, 1e-10)
        add(f"{kind}: identity", r.identity, 0.0)
        add(f"{kind}: linearity", r.linearity, 1e-12)
    rt = 0.0
    for _ in range(20):
        a = random_mv(rng, CL30.sig, range(4))
        rt = max(rt, residual(reps.pauli_unrep(reps.pauli_rep(a)), a))
    add("Pauli: inverse", rt, 1e-12)
    for kind in ("standard", "weyl"):
        S = reps.dirac_idempotents(kind)
        rep = reps.idempotent_report(S.P, S.table)
        for key in ("idempotent", "orthogonal", "resolution", "matrix_units"):
            add(f"idempotents {kind}: {key}", rep[key], 1e-13)
        for name, res in reps.conjugator_report(kind).items():
            add(f"conjugator {kind}: {name}", res, 0.0)


# -- iso -------------------------------------------------------------------------------

def iso_suite(add, rng) -> None:
    allg = range(6)
    for kind in ISO_KINDS:
        hom = rt = 0.0
        for _ in range(100):
            a, b = random_mv(rng, CL41.sig, allg), random_mv(rng, CL41.sig, allg)
            fa = iso_forward(a, kind)
            hom = max(hom, residual(iso_forward(a * b, kind), fa * iso_forward(b, kind)))
            rt = max(rt, residual(iso_backward(fa, kind), a))
        add(f"kind {kind}: homomorphism", hom, 1e-10)
        add(f"kind {kind}: bijection round trip", rt, 1e-10)
        add(f"kind {kind}: coefficient dictionary", coeff_dict_residual(kind)[0], 1e-12)
    for kind in BLOCK_FORMULAS:
        for which in BLOCK_FORMULAS[kind]:
            worst = 0.0
            for _ in range(20):
                Z = random_mv(rng, CL41.sig, allg)
                worst = max(worst, antiauto_matrix_check(Z, which, kind).residual)
            add(f"kind {kind}: {which} block formula", worst, 1e-10)
    worst_sp = worst_su = worst_det = 0.0
    for _ in range(50):
        Z = exp(random_mv(rng, CL41.sig, (1, 2)) * 0.5)
        a, b = sp2_check(Z), su22_check(Z)
        worst_sp = max(worst_sp, a.form, a.algebra)
        worst_su = max(worst_su, b.form, b.algebra)
        worst_det = max(worst_det, b.det)
    add("kind A: Z Zbar = 1 gives Sp(2,C) form", worst_sp, 1e-10)
    add("kind B: Z Zbar = 1 gives Z^dag J Z = J", worst_su, 1e-10)
    add("kind B: |det Z - 1|", worst_det, 1e-8)
    hom = rt = tilde = bar = 0.0
    for _ in range(50):
        a, b = random_mv(rng, CL41.sig, allg), random_mv(rng, CL41.sig, allg)
        sa = periodicity_split(a)
        hom = max(hom, (periodicity_split(a * b)).residual(sa @ periodicity_split(b)))
        rt = max(rt, residual(periodicity_join(sa), a))
        tilde = max(tilde, periodicity_split(reversion(a)).residual(cf.vahlen_tilde(sa)))
        bar = max(bar, periodicity_split(conjugation(a)).residual(cf.vahlen_bar(sa)))
    add("split: homomorphism", hom, 1e-10)
    add("split: round trip", rt, 1e-12)
    add("split: reversion block form", tilde, 1e-12)
    add("split: conjugation block form", bar, 1e-12)


# -- conformal -------------------------------------------------------------------------

def _table_maps(rng) -> list:
    return [
        cf.Translation(cf.random_paravector(rng)),
        cf.Dilation(float(rng.uniform(0.2, 3.0))),
        cf.Rotation(cf.random_rotation(rng)),
        cf.Inversion(),
        cf.Transvection(cf.random_paravector(rng, 0.5)),
    ]


def _safe_point(rng, g, tries: int = 1000):
    """A random point where b x + d is comfortably invertible and x is off the light cone."""
    for _ in range(tries):
        x = cf.random_paravector(rng)
        if abs(cf.norm(x)) < 0.05:
            continue
        try:
            xp, delta = cf.act(g, x)
        except cf.MapUndefinedError:
            continue
        if abs(delta) > 0.05:
            return x, xp, delta
    raise RuntimeError("no admissible sample point found")


def conformal_suite(add, rng) -> None:
    maps = _table_maps(rng)
    for m in maps:
        name = type(m).__name__.lower()
        g = cf.make_map(m)
        add(f"{name}: Vahlen conditions", cf.vahlen_conditions(g, seed=int(rng.integers(2 ** 31))).max_residual, 1e-9)
        ex = sw = 0.0
        for _ in range(100):
            x, xp, delta = _safe_point(rng, g)
            ex = max(ex, _rel(cf.coords(xp), cf.coords(cf.explicit_map(m, x))))
            lhs = cf.sandwich(g, x)
            rhs = cf.chart_matrix(xp).scale(delta)
            sw = max(sw, lhs.residual(rhs) / max(1.0, abs(delta) * (1 + cf.norm(xp) ** 2)))
        add(f"{name}: explicit map", ex, 1e-10)
        add(f"{name}: sandwich equals Delta times chart", sw, 1e-9)
    klein = proj = 0.0
    for _ in range(100):
        m = maps[int(rng.integers(len(maps)))]
        g = cf.make_map(m)
        G = cf.to_cl41(g)
        x, xp, delta = _safe_point(rng, g)
        Y = G * cf.lift(x) * reversion(G)
        s = cf.paravector_matrix(Y)
        lam, mu = s.c.scalar_part().real, s.b.scalar_part().real
        scale = max(1.0, Y.max_abs() ** 2)
        klein = max(klein, abs(cf.norm(s.a) - lam * mu) / scale)
        proj = max(proj, residual(Y, cf.lift(xp) * delta) / max(1.0, Y.max_abs()))
    add("Klein absolute preserved", klein, 1e-9)
    add("image lift projects to x'", proj, 1e-9)
    ker = 0.0
    pts = [cf.random_paravector(rng) for _ in range(20)]
    for K in cf.kernel_elements():
        gK = cf.from_cl41(K)
        for x in pts:
            xp, _ = cf.act(gK, x)
            ker = max(ker, residual(xp, x))
    add("kernel elements act as the identity", ker, 1e-10)
    comp = 0.0
    for _ in range(50):
        i, j = (int(v) for v in rng.integers(len(maps), size=2))
        g1, g2 = cf.make_map(maps[i]), cf.make_map(maps[j])
        try:
            x, y, _ = _safe_point(rng, g2)
            z, _ = cf.act(g1, y)
            w, _ = cf.act(cf.compose(g1, g2), x)
        except cf.MapUndefinedError:
            continue
        comp = max(comp, _rel(cf.coords(w), cf.coords(z)))
    add("composition matches matrix product", comp, 1e-9)


# -- lie -------------------------------------------------------------------------------

def lie_suite(add, rng) -> None:
    for r in lie.REALIZATIONS:
        rep = lie.commutation_check(r)
        for rel, res in rep.residuals.items():
            add(f"{r}: [{rel[0]},{rel[1]}] relations", res, 1e-12)
        add(f"{r}: substitution symmetry", lie.substitution_symmetry_check(r).max_residual, 1e-12)
        add(f"{r}: commutators close on the basis", lie.structure_constants(r).orthogonal_residual, 1e-12)
    add("structure constants agree", lie.structure_constant_agreement(), 1e-10)
    for conv in (CL24, CL41):
        worst = 0.0
        for _ in range(100):
            B, C = random_mv(rng, conv.sig, (2,)), random_mv(rng, conv.sig, (2,))
            worst = max(worst, residual(commutator(B, C), grade_project(B * C, 2) * 2))
        add(f"{conv.label}: [B,C] = 2<BC>_2", worst, 1e-12)
    for r in lie.REALIZATIONS:
        worst = 0.0
        for _ in range(20):
            worst = max(worst, lie.exp_generator(rng.uniform(-0.5, 0.5, len(lie.BASIS)), r).residual)
        add(f"{r}: exp lands in the group", worst, 1e-8)
    flow = lie.dilation_flow_check(seed=int(rng.integers(2 ** 31)))
    add("dilation flow: finite difference", flow["finite_difference"], 1e-8)
    add("dilation flow: eigenvectors", max(flow["eigen_plus"], flow["eigen_minus"]), 1e-12)


# -- twistor ---------------------------------------------------------------------------

def twistor_suite(add, rng) -> None:
    PL, PR = twistor.projector("L"), twistor.projector("R")
    alg = max((PL * PL - PL).max_abs(), (PR * PR - PR).max_abs(), (PL * PR).max_abs(),
              (PR * PL).max_abs(), residual(PL + PR, DIRAC.one()),
              residual(gamma5() * PL, PL * -1j))
    add("projector algebra", alg, 0.0)
    two = pen = inc = fern = e4 = chir = 0.0
    for _ in range(100):
        x = rng.uniform(-1, 1, 4)
        U = twistor.random_U(rng)
        t = twistor.twistor_from_ideal(x, U)
        ref = twistor.reference_twistor(x, t.xi)
        two = max(two, float(np.max(np.abs(t.components - ref.components))))
        pen = max(pen, t.penrose_residual(), ref.penrose_residual())
        inc = max(inc, twistor.mv_norm(twistor.incidence(t, t)))
        fern = max(fern, twistor.fern_residual(x))
        e4 = max(e4, twistor.e4_pi_residuals(U)["+i"])
        chir = max(chir, twistor.chirality_residual(U))
    add("two-path equality", two, 1e-12)
    add("Penrose form (i x xi, xi)", pen, 1e-12)
    add("self-incidence on null lifts", inc, 1e-12)
    add("chi P_L = T_x P_L", fern, 1e-12)
    add("E4 Pi = i g0 Pi", e4, 1e-12)
    add("Pi is left-handed", chir, 1e-12)
    sc = 0.0
    for _ in range(20):
        x, y = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        U = twistor.random_U(rng)
        s = float(rng.uniform(0.5, 2.0))
        j1 = twistor.mv_norm(twistor.incidence(twistor.twistor_from_ideal(x, U),
                                               twistor.twistor_from_ideal(y, U)))
        j2 = twistor.mv_norm(twistor.incidence(twistor.twistor_from_ideal(x, U * s),
                                               twistor.twistor_from_ideal(y, U * s)))
        sc = max(sc, abs(j2 - s * s * j1) / max(1.0, j2))
    add("incidence scales quadratically in U", sc, 1e-12)


SUITES: dict[str, Callable] = {
    "core": core_suite, "reps": reps_suite, "iso": iso_suite,
    "conformal": conformal_suite, "lie": lie_suite, "twistor": twistor_suite,
}


def run_suite(name: str, seed: int = 42, tol_scale: float = 1.0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    report = SuiteReport(name, seed)
    rng = np.random.default_rng([seed, SUITE_NAMES.index(name)])
    t0 = time.perf_counter()
    SUITES[name](_Recorder(report, tol_scale), rng)
    report.wall_time = time.perf_counter() - t0
    return report


def run_suites(names, seed: int = 42, tol_scale: float = 1.0) -> list[SuiteReport]:
    return [run_suite(n, seed, tol_scale) for n in names]
