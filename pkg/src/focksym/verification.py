"""Named verification checks with pass/warn/info/fail records.

Every numerical claim the package makes is exercised here as a measured
quantity against a pinned threshold.  The thirteen groups below are what the
``verify-all`` CLI subcommand runs and what the acceptance test module
asserts; each record names the law it exercises (or is tagged "plumbing").

Checks marked truncation-sensitive degrade to ``warn`` instead of ``fail``
when run below the calibrated default dimension of 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .conjugation import (
    ConjugationParams,
    check_involution,
    check_isometry,
    conjugation_matrix,
    standard_conjugation,
)
from .evolution import (
    BagchiParams,
    bagchi_hamiltonian,
    check_adjoint_family,
    check_evolution_axioms,
    check_evolution_c_symmetry,
    check_nonauto_stone,
    constant_operator,
    evolve,
)
from .fock import DEFAULT_TOLERANCES, FockVector, basis_vector, monomial
from .generator import (
    check_empty_point_spectrum,
    check_generator_fd,
    check_stone_adjoint_relation,
    dissipativity_margin,
    eigen_residual,
    generator_matrix,
    matrix_exponential,
    point_spectrum_predicted,
    resolvent_bound_check,
)
from .rng import complex_normal_vectors
from .semigroup import (
    DilationFamily,
    GrowthProbe,
    SemigroupFamily,
    TranslationFamily,
    check_semicocycle,
    check_semiflow,
    check_semigroup_law,
    family_eval,
    laplace_resolvent,
    n_omega_estimate,
    norm_w_one_closed_form,
    scaling_instance,
    semigroup_matrix,
    solve_scaling_equation,
)
from .wco import WCOParams, is_bounded, wco_matrix

__all__ = ["CheckRecord", "VerifyConfig", "CHECK_GROUPS", "run_group", "run_all"]

CALIBRATED_DIM = 64


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    anchor: str
    measured: float
    threshold: float
    status: str
    direction: str = "<="  # how measured relates to threshold when passing
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "measured": self.measured,
            "threshold": self.threshold,
            "direction": self.direction,
            "status": self.status,
            "detail": self.detail,
        }

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "warn", "info")


@dataclass(frozen=True)
class VerifyConfig:
    dim: int = CALIBRATED_DIM
    seed: int = 20260814
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def tol(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])


def _record(
    cfg: VerifyConfig,
    check_id: str,
    anchor: str,
    measured: float,
    threshold: float,
    direction: str = "<=",
    sensitive: bool = False,
    detail: str = "",
) -> CheckRecord:
    measured = float(measured)
    if direction == "<=":
        ok = measured <= threshold
    elif direction == ">=":
        ok = measured >= threshold
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if ok:
        status = "pass"
    elif sensitive and cfg.dim < CALIBRATED_DIM:
        status = "warn"
    else:
        status = "fail"
    return CheckRecord(check_id, anchor, measured, float(threshold), status, direction, detail)


def _info(check_id: str, anchor: str, measured: float, detail: str = "") -> CheckRecord:
    return CheckRecord(check_id, anchor, float(measured), math.nan, "info", "<=", detail)


# ----------------------------------------------------------------------------
# shared fixtures

def _std_translation(E: complex = 1.0, F: complex = 0.0) -> TranslationFamily:
    return TranslationFamily(E=E, F=F, conj=standard_conjugation())

def _std_dilation(ell: complex, G: complex, H: complex = 0.0) -> DilationFamily:
    return DilationFamily(ell=ell, G=G, H=H, conj=standard_conjugation())

_PHASE = complex(math.cos(0.7), math.sin(0.7))

_B0_CONJUGATIONS = (
    ConjugationParams(1.0, 0.0, 1.0),
    ConjugationParams(_PHASE, 0.0, 1.0),
    ConjugationParams(-1.0, 0.0, 1j),
)

_OFFSET_CONJUGATION = ConjugationParams(1.0, 1j, math.exp(-0.5))


# ----------------------------------------------------------------------------
# group 1: conjugation operator laws

def conjugation_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tol = cfg.tol("involution_exact")
    vecs = complex_normal_vectors(cfg.seed ^ 0x1, 4, cfg.dim)
    for i, p in enumerate(_B0_CONJUGATIONS):
        op = conjugation_matrix(p, cfg.dim)
        inv = float(np.max(check_involution(op, min(8, cfg.dim - 1))))
        out.append(
            _record(cfg, f"conjugation.involution.b0.{i}", "C^2 = identity",
                    inv, tol)
        )
        f = FockVector(vecs[0], "normalized")
        g = FockVector(vecs[1], "normalized")
        iso = check_isometry(op, f, g)
        out.append(
            _record(cfg, f"conjugation.isometry.b0.{i}", "<Cf,Cg> = <g,f>",
                    iso, cfg.tol("isometry_exact"))
        )
    # offset conjugation: involution holds only in the truncation limit;
    # evidence is the residual decay from dim/2 to dim.
    deg = min(8, cfg.dim // 2 - 1)
    r_half = float(np.max(check_involution(conjugation_matrix(_OFFSET_CONJUGATION, cfg.dim // 2), deg)))
    r_full = float(np.max(check_involution(conjugation_matrix(_OFFSET_CONJUGATION, cfg.dim), deg)))
    factor = r_half / r_full if r_full > 0 else math.inf
    out.append(
        _record(cfg, "conjugation.involution.offset.decay",
                "C^2 -> identity as truncation grows",
                factor, cfg.tol("residual_decay_factor"), direction=">=",
                sensitive=True,
                detail=f"residual {r_half:.3e} at dim {cfg.dim // 2} -> {r_full:.3e} at dim {cfg.dim}")
    )
    return out


# ----------------------------------------------------------------------------
# group 2: boundedness classification against truncated norm growth

_BOUNDEDNESS_SETS = (
    WCOParams(0.5, 0.0, 1.0, 1.0),
    WCOParams(1.0, 1.0, 1.0, -1.0),
    WCOParams(0.5 + 0.5j, 0.2, 0.7, 0.1 + 0.1j),
    WCOParams(1.0, 0.0, 1.0, 1.0),
    WCOParams(1.2, 0.0, 1.0, 0.0),
    WCOParams(1.0, 1j, 1.0, 2j),
)


def boundedness_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    dims = (max(4, cfg.dim // 4), max(6, cfg.dim // 2), cfg.dim)
    for i, p in enumerate(_BOUNDEDNESS_SETS):
        verdict = is_bounded(p)
        norms = [float(np.linalg.norm(wco_matrix(p, d), 2)) for d in dims]
        growth = max(norms[j + 1] / norms[j] for j in range(len(dims) - 1))
        if verdict.bounded:
            out.append(
                _record(cfg, f"boundedness.flat-norms.{i}",
                        "bounded symbols give convergent truncated norms",
                        growth, 1.01, sensitive=True,
                        detail=f"{verdict.reason}; norms {norms}")
            )
        else:
            out.append(
                _record(cfg, f"boundedness.growing-norms.{i}",
                        "unbounded symbols give growing truncated norms",
                        growth, 2.0, direction=">=", sensitive=True,
                        detail=f"{verdict.reason}; norms {norms}")
            )
    return out


# ----------------------------------------------------------------------------
# group 3: flow and cocycle laws

_FLOW_FAMILIES: tuple[SemigroupFamily, ...] = (
    _std_translation(E=1.0, F=0.0),
    _std_translation(E=1 + 1j, F=0.3 - 0.2j),
    _std_dilation(ell=-1.0, G=1.0, H=0.1),
    _std_dilation(ell=0.5j, G=0.5 - 0.5j, H=0.0),
    DilationFamily(ell=1.0, G=0.7, H=0.2j, conj=_OFFSET_CONJUGATION),
)


def flow_cocycle_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    grid = np.linspace(0.0, 1.0, 5)
    for i, fam in enumerate(_FLOW_FAMILIES):
        flow_dev = max(
            check_semiflow(fam, float(t), float(s)) for t in grid for s in grid
        )
        coc_dev = max(
            check_semicocycle(fam, float(t), float(s)) for t in grid for s in grid
        )
        kind = "translation" if isinstance(fam, TranslationFamily) else "dilation"
        out.append(
            _record(cfg, f"family.semiflow.{kind}.{i}",
                    "zeta_{t+s} = zeta_t o zeta_s", flow_dev, cfg.tol("semiflow"))
        )
        out.append(
            _record(cfg, f"family.semicocycle.{kind}.{i}",
                    "xi_{t+s} = xi_t (xi_s o zeta_t)", coc_dev, cfg.tol("semicocycle"))
        )
        p0 = family_eval(fam, 0.0)
        ident_dev = max(abs(p0.A - 1), abs(p0.B), abs(p0.C - 1), abs(p0.D))
        out.append(
            _record(cfg, f"family.identity-at-zero.{kind}.{i}",
                    "family passes through the identity at t = 0",
                    ident_dev, 1e-15)
        )
    return out


# ----------------------------------------------------------------------------
# group 4: operator semigroup law on the truncation

_LAW_FAMILIES: tuple[SemigroupFamily, ...] = (
    _std_translation(E=1.0, F=0.0),
    _std_translation(E=2.0, F=0.1),
    _std_translation(E=1j, F=0.0),
    _std_dilation(ell=-1.0, G=1.0),
    _std_dilation(ell=0.5, G=0.5j, H=0.1),
    _std_dilation(ell=1j, G=1.0, H=0.0),
)


def semigroup_law_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    times = (0.1, 0.25, 0.5, 1.0)
    ks = range(0, min(7, cfg.dim))
    for i, fam in enumerate(_LAW_FAMILIES):
        worst = 0.0
        for t in times:
            for s in times:
                for k in ks:
                    worst = max(worst, check_semigroup_law(fam, t, s, k, cfg.dim))
        kind = "translation" if isinstance(fam, TranslationFamily) else "dilation"
        out.append(
            _record(cfg, f"semigroup.law.{kind}.{i}",
                    "W(t) W(s) = W(t+s) on monomials",
                    worst, cfg.tol("semigroup_law"), sensitive=True)
        )
    return out


# ----------------------------------------------------------------------------
# group 5: generators by finite differences and the exponential bridge

_GEN_FAMILIES: tuple[SemigroupFamily, ...] = (
    _std_translation(E=1.0, F=0.0),
    _std_dilation(ell=-1.0, G=1.0, H=0.1),
)


def generator_fd_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    for i, fam in enumerate(_GEN_FAMILIES):
        kind = "translation" if isinstance(fam, TranslationFamily) else "dilation"
        for k in range(0, 5):
            slope_f, _ = check_generator_fd(fam, k, cfg.dim, scheme="forward")
            slope_c, _ = check_generator_fd(fam, k, cfg.dim, scheme="central")
            out.append(
                _record(cfg, f"generator.fd-forward.{kind}.k{k}",
                        "first-order quotient converges to the generator",
                        abs(slope_f - 1.0), 0.1, sensitive=True,
                        detail=f"slope {slope_f:.4f}")
            )
            out.append(
                _record(cfg, f"generator.fd-central.{kind}.k{k}",
                        "second-order quotient converges to the generator",
                        abs(slope_c - 2.0), 0.1, sensitive=True,
                        detail=f"slope {slope_c:.4f}")
            )
    # exponential of the truncated generator against the family member
    fam = _GEN_FAMILIES[0]
    gen = generator_matrix(fam, cfg.dim).dense()
    block = min(20, cfg.dim)
    worst = 0.0
    for t in (0.1, 0.25, 0.5):
        expm_t = matrix_exponential(gen, t)
        W_t = semigroup_matrix(fam, t, cfg.dim)
        for k in range(0, min(6, cfg.dim)):
            v = monomial(k, cfg.dim).to_normalized().coeffs
            dev = np.linalg.norm((expm_t @ v - W_t @ v)[:block])
            worst = max(worst, float(dev))
    out.append(
        _record(cfg, "generator.exponential-bridge",
                "exp(t Q) matches W(t) on low coefficients",
                worst, cfg.tol("expm_vs_semigroup"), sensitive=True)
    )
    return out


# ----------------------------------------------------------------------------
# group 6: generator symmetry under diagonal conjugations

def stone_symmetry_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    dims = (max(4, cfg.dim // 4), max(6, cfg.dim // 2), cfg.dim)
    cases: list[tuple[str, SemigroupFamily]] = []
    for p in _B0_CONJUGATIONS:
        cases.append(("translation", TranslationFamily(E=1.0, F=0.2, conj=p)))
        cases.append(("dilation", DilationFamily(ell=-1.0, G=0.8, H=0.1j, conj=p)))
    for i, (kind, fam) in enumerate(cases):
        worst_sym = 0.0
        adj = math.inf
        for d in dims:
            stone = check_stone_adjoint_relation(fam, fam.conj, d)
            worst_sym = max(worst_sym, stone.c_symmetry_residual)
            adj = min(adj, stone.adjoint_fd_residual)
        out.append(
            _record(cfg, f"stone.generator-symmetry.{kind}.{i}",
                    "Q M = M Q^T for diagonal conjugation matrices",
                    worst_sym, cfg.tol("matrix_symmetry_exact"))
        )
        out.append(
            _info(f"stone.adjoint-quotient.{kind}.{i}",
                  "adjoint family differentiates to Q^H",
                  adj, "first-order quotient at h = 1e-6")
        )
    return out


# ----------------------------------------------------------------------------
# group 7: dilation point spectrum

def spectrum_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    # beta = 0: the truncation is triangular and its eigenvalues are exact
    fam0 = _std_dilation(ell=-1.0 + 0.5j, G=0.0, H=0.3)
    predicted = point_spectrum_predicted(fam0, 5)
    dense = generator_matrix(fam0, cfg.dim).dense()
    eigs = np.linalg.eigvals(dense)
    dev = max(
        float(np.min(np.abs(eigs - lam))) for lam in predicted
    )
    out.append(
        _record(cfg, "spectrum.lattice.beta0",
                "eigenvalues H + k ell when the twist vanishes",
                dev, cfg.tol("spectrum_exact"))
    )
    # beta != 0: explicit eigenfunction residuals, non-increasing in dim
    fam1 = _std_dilation(ell=1.0, G=1.0, H=0.0)
    big = cfg.dim + cfg.dim // 4
    grid = (max(8, big // 2), max(10, (3 * big) // 4), big)
    worst = 0.0
    monotone = True
    for m in range(6):
        resids = [eigen_residual(fam1, m, d) for d in grid]
        worst = max(worst, resids[-1])
        monotone = monotone and all(
            resids[j + 1] <= resids[j] for j in range(len(resids) - 1)
        )
    out.append(
        _record(cfg, "spectrum.eigenfunction-residuals",
                "(z-G)^m exp(beta z) are eigenfunctions",
                worst, cfg.tol("eigen_residual"), sensitive=True,
                detail=f"max over m <= 5 at dim {big}")
    )
    out.append(
        _record(cfg, "spectrum.residuals-monotone",
                "residuals do not grow with the truncation",
                0.0 if monotone else 1.0, 0.5,
                detail=f"dims {grid}")
    )
    eigs1 = np.linalg.eigvals(generator_matrix(fam1, cfg.dim).dense())
    out.append(
        _info("spectrum.truncated-eigs-nonnormal",
              "plumbing",
              float(np.max(np.abs(eigs1))),
              "truncated eigenvalues reported only; non-normal truncation "
              "does not approximate the lattice when beta != 0")
    )
    return out


# ----------------------------------------------------------------------------
# group 8: empty point spectrum of the translation generator

def empty_spectrum_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    fam = _std_translation(E=1.0, F=0.0)
    base = max(4, cfg.dim // 4)
    n_seq = (base, 2 * base, 4 * base)
    for eta in (0.0, 1 + 1j):
        cert = check_empty_point_spectrum(fam, eta, n_seq)
        worst = min(cert.ratios.values())
        out.append(
            _record(cfg, f"empty-spectrum.divergence.eta={eta}",
                    "candidate eigenfunction leaves the space",
                    worst, cert.threshold, direction=">=", sensitive=True,
                    detail=f"partial-norm ratios {cert.ratios}")
        )
    return out


# ----------------------------------------------------------------------------
# group 9: growth estimates and the norm of W(t) 1

def growth_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    for i, fam in enumerate(
        (_std_translation(E=1.0, F=0.0),
         _std_translation(E=0.5 + 0.5j, F=0.1),
         _std_dilation(ell=-1.0, G=1.0, H=0.1),
         _std_dilation(ell=1.0, G=0.5, H=0.0))
    ):
        kind = "translation" if isinstance(fam, TranslationFamily) else "dilation"
        worst = 0.0
        for t in np.linspace(0.0, 1.0, 5):
            W = semigroup_matrix(fam, float(t), cfg.dim)
            direct = float(np.linalg.norm(W[:, 0]))
            closed = norm_w_one_closed_form(fam, float(t))
            worst = max(worst, abs(direct - closed) / closed)
        out.append(
            _record(cfg, f"growth.norm-one.{kind}.{i}",
                    "||W(t) 1|| = |C(t)| exp(|D(t)|^2 / 2)",
                    worst, cfg.tol("norm_one"), sensitive=True)
        )
    fam = _std_translation(E=1.0, F=0.0)
    # for E=1, a=1, F=0 the closed form collapses to exp(t^2)
    tgrid = np.linspace(0.0, 2.0, 9)
    dev = max(
        abs(norm_w_one_closed_form(fam, float(t)) / math.exp(t * t) - 1.0)
        for t in tgrid
    )
    out.append(
        _record(cfg, "growth.norm-one-exp-t-squared",
                "||W(t) 1|| = exp(t^2) for unit drift-free translation",
                dev, 1e-12)
    )
    one = monomial(0, cfg.dim)
    for omega in (0.0, 1.0, 10.0):
        rep = n_omega_estimate(fam, one, GrowthProbe(omega=omega), cfg.dim)
        out.append(
            _record(cfg, f"growth.divergence-flag.omega={omega:g}",
                    "quadratic cocycle growth beats every exponential weight",
                    1.0 if rep.diverging else 0.0, 1.0, direction=">=",
                    sensitive=True,
                    detail=f"sup {rep.sup:.3e} at t = {rep.argmax_t:.3g}")
        )
    return out


# ----------------------------------------------------------------------------
# group 10: Laplace-transform resolvent

def laplace_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    fam = _std_dilation(ell=-1.0, G=0.0, H=0.0)  # W(t) = diag(e^{-kt})
    lam = 1.0 + 0.0j
    gen = generator_matrix(fam, cfg.dim).dense()
    worst_diag = 0.0
    worst_ident = 0.0
    for k in range(5):
        ek = basis_vector(k, cfg.dim)
        J = laplace_resolvent(fam, lam, ek, omega=0.0, dim=cfg.dim)
        expected = ek.coeffs / (lam + k)
        worst_diag = max(worst_diag, float(np.linalg.norm(J.coeffs - expected)))
        ident = (lam * np.eye(cfg.dim) - gen) @ J.coeffs - ek.coeffs
        worst_ident = max(worst_ident, float(np.linalg.norm(ident)))
    out.append(
        _record(cfg, "laplace.diagonal-values",
                "integral of e^{-lam t} W(t) e_k equals e_k / (lam + k)",
                worst_diag, cfg.tol("laplace_diagonal"))
    )
    out.append(
        _record(cfg, "laplace.resolvent-identity",
                "(lam - Q) J_lam = identity on basis vectors",
                worst_ident, cfg.tol("laplace_identity"))
    )
    # the integral must refuse families whose growth probe diverges
    bad = _std_translation(E=1.0, F=0.0)
    try:
        laplace_resolvent(bad, 2.0 + 0.0j, monomial(0, cfg.dim), omega=0.0, dim=cfg.dim)
        refused = 0.0
    except ValueError:
        refused = 1.0
    out.append(
        _record(cfg, "laplace.refuses-divergent",
                "no Laplace integral without a growth certificate",
                refused, 1.0, direction=">=")
    )
    return out


# ----------------------------------------------------------------------------
# group 11: dissipativity of a damped symmetric generator

def dissipativity_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    fam = _std_translation(E=1j, F=-1.0)  # Q = -I + i(creation + annihilation)
    Q = generator_matrix(fam, cfg.dim).dense()
    margin = dissipativity_margin(Q)
    out.append(
        _record(cfg, "dissipativity.margin",
                "Hermitian part of the damped generator tops out at -1",
                abs(margin + 1.0), cfg.tol("dissipativity_margin"))
    )
    vectors = complex_normal_vectors(cfg.seed, 100, cfg.dim)
    bound = resolvent_bound_check(Q, (0.1, 1.0, 10.0), list(vectors))
    out.append(
        _record(cfg, "dissipativity.resolvent-bound",
                "||(alpha - Q) v|| >= alpha ||v|| for dissipative Q",
                bound, 1.0 - cfg.tol("resolvent_lower_bound"), direction=">=")
    )
    return out


# ----------------------------------------------------------------------------
# group 12: evolution families

def evolution_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    rel_tol = 1e-10
    p = BagchiParams(nu=1.0, kappa=lambda t: 0.3, lam=lambda t: 1.0)
    B = bagchi_hamiltonian(p)
    ident, comp = check_evolution_axioms(B, (0.0, 0.5, 1.0), rel_tol)
    out.append(
        _record(cfg, "evolution.identity", "U(t, t) = identity", ident,
                cfg.tol("evolution_tol_factor") * rel_tol)
    )
    out.append(
        _record(cfg, "evolution.composition", "U(t, r) U(r, s) = U(t, s)", comp,
                cfg.tol("evolution_tol_factor") * rel_tol)
    )
    # constant coefficients: closed form via the spectral decomposition
    U = evolve(B, 0.0, 1.0, rel_tol).matrix
    nu, kap, lamb = 1.0, 0.3, 1.0
    mu = math.sqrt(lamb**2 - kap**2)
    H = np.array([[nu + 1j * kap, lamb], [lamb, nu - 1j * kap]], dtype=complex)
    closed = np.exp(-1j * nu) * (
        math.cos(mu) * np.eye(2) - 1j * math.sin(mu) / mu * (H - nu * np.eye(2))
    )
    out.append(
        _record(cfg, "evolution.closed-form",
                "propagator of the constant two-level model",
                float(np.max(np.abs(U - closed))), cfg.tol("closed_form_evolution"))
    )
    # same constant model through the exponential (independent route)
    exp_route = matrix_exponential(B(0.0), 1.0)
    out.append(
        _record(cfg, "evolution.exponential-route",
                "constant-coefficient propagator equals exp((t-s) B)",
                float(np.max(np.abs(U - exp_route))), cfg.tol("closed_form_evolution"))
    )
    # commutation of B(s) with plain conjugation (complex symmetric B)
    stone = check_nonauto_stone(B, np.eye(2), np.linspace(0.0, 2.0, 9))
    out.append(
        _record(cfg, "evolution.nonauto-commutation",
                "B(s) M = M B(s)^T along the whole time axis",
                float(np.max(stone)), cfg.tol("nonauto_commutation"))
    )
    # commuting family (time-varying detuning only): U inherits the symmetry
    p2 = BagchiParams(nu=0.5, kappa=lambda t: 0.3 * math.cos(t), lam=lambda t: 0.0)
    B2 = bagchi_hamiltonian(p2)
    sym = check_evolution_c_symmetry(B2, np.eye(2), 0.0, 1.5, rel_tol)
    out.append(
        _record(cfg, "evolution.symmetry-commuting",
                "U(t, s) M = M U(t, s)^T for commuting families",
                sym, cfg.tol("evolution_symmetry"))
    )
    # adjoint family differentiates at first order: slope fit over h
    z = np.array([0.3 - 0.1j, 0.8 + 0.2j])
    hs = np.array([3e-2, 1e-2, 3e-3, 1e-3])
    errs = [check_adjoint_family(B, 0.0, 1.0, z, float(h), rel_tol=1e-12) for h in hs]
    slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
    out.append(
        _record(cfg, "evolution.adjoint-slope",
                "d/dt U(t,s)^H z = U(t,s)^H B(t)^H z",
                abs(slope - 1.0), 0.1, detail=f"slope {slope:.4f}")
    )
    # reversed integration inverts the propagator
    from .evolution import _integrate_matrix

    U_rev, _ = _integrate_matrix(B, 1.0, 0.0, rel_tol)
    inv_resid = float(np.max(np.abs(U_rev @ U - np.eye(2))))
    out.append(
        _record(cfg, "evolution.reverse-inverse",
                "backward integration inverts the propagator",
                inv_resid, cfg.tol("evolution_tol_factor") * rel_tol)
    )
    return out


# ----------------------------------------------------------------------------
# group 13: scaling-equation solver against the family cocycles

def scaling_solver_checks(cfg: VerifyConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    for i, fam in enumerate(
        (_std_translation(E=1.0, F=0.25),
         _std_translation(E=1 - 1j, F=0.1j),
         _std_dilation(ell=-1.0, G=1.0, H=0.3),
         _std_dilation(ell=0.5 + 0.5j, G=0.4, H=0.1 - 0.2j))
    ):
        kind = "translation" if isinstance(fam, TranslationFamily) else "dilation"
        lam0, dpsi = scaling_instance(fam)
        worst = 0.0
        for t in np.linspace(0.0, 2.0, 9):
            solved = solve_scaling_equation(lam0, dpsi, float(t))
            closed = family_eval(fam, float(t)).C
            worst = max(worst, abs(solved - closed) / abs(closed))
        out.append(
            _record(cfg, f"scaling.solver.{kind}.{i}",
                    "multiplier solves the scaling differential equation",
                    worst, cfg.tol("scaling_solver"))
        )
    return out


# ----------------------------------------------------------------------------

CHECK_GROUPS: dict[str, Callable[[VerifyConfig], list[CheckRecord]]] = {
    "conjugation": conjugation_checks,
    "boundedness": boundedness_checks,
    "flow-cocycle": flow_cocycle_checks,
    "semigroup-law": semigroup_law_checks,
    "generator-fd": generator_fd_checks,
    "stone-symmetry": stone_symmetry_checks,
    "spectrum": spectrum_checks,
    "empty-spectrum": empty_spectrum_checks,
    "growth": growth_checks,
    "laplace": laplace_checks,
    "dissipativity": dissipativity_checks,
    "evolution": evolution_checks,
    "scaling-solver": scaling_solver_checks,
}


def run_group(name: str, cfg: VerifyConfig) -> list[CheckRecord]:
    return CHECK_GROUPS[name](cfg)


def run_all(cfg: VerifyConfig, parallel: bool = False) -> list[CheckRecord]:
    if not parallel:
        records: list[CheckRecord] = []
        for name in CHECK_GROUPS:
            records.extend(run_group(name, cfg))
        return records
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor() as pool:
        chunks = list(pool.map(lambda fn: fn(cfg), CHECK_GROUPS.values()))
    records = []
    for chunk in chunks:
        records.extend(chunk)
    return records
