"""Scenario-driven command line: validate inputs, run checks, write reports.

Subcommands
    validate <scenario.json>          schema- and constraint-check only
    run <scenario.json>               execute a scenario, write its report
    verify-all [--seed] [--dim] [--parallel]
                                      the full check suite as one report
    spectrum  [family flags]          dilation spectrum report front end
    evolve    [model flags]           propagator time series as CSV

Exit codes: 0 every record passed (warn/info allowed), 1 input error,
2 at least one failed check.  Complex scalars in JSON are [re, im] pairs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .conjugation import (
    ConjugationParams,
    ConstraintViolation,
    check_involution,
    check_isometry,
    conjugation_matrix,
)
from .evolution import (
    BagchiParams,
    TimeDependentOperator,
    bagchi_hamiltonian,
    check_evolution_axioms,
    check_evolution_c_symmetry,
    constant_operator,
    evolve,
)
from .fock import DEFAULT_TOLERANCES, FockVector, TruncationConfig, monomial
from .generator import (
    check_empty_point_spectrum,
    check_generator_fd,
    check_stone_adjoint_relation,
    generator_matrix,
    matrix_exponential,
    spectrum_report,
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
    family_is_bounded,
    n_omega_estimate,
    scaling_instance,
    semigroup_matrix,
    solve_scaling_equation,
)
from .serialize import (
    complex_from_json,
    default_output_dir,
    write_csv,
    write_json_report,
)
from .verification import CheckRecord, VerifyConfig, run_all
from .wco import WCOParams, is_bounded, is_c_selfadjoint_symbols, wco_matrix

__all__ = ["main"]

SCENARIO_KINDS = (
    "conjugation-check",
    "wco",
    "semigroup",
    "generator",
    "spectrum",
    "evolution",
    "full-verify",
)


class ScenarioError(Exception):
    """Input validation failure; carries the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# ----------------------------------------------------------------------------
# field extraction with path-carrying errors

def _get(obj: dict, path: str, key: str, typ: type, default: Any = ...) -> Any:
    here = f"{path}.{key}" if path else key
    if key not in obj:
        if default is not ...:
            return default
        raise ScenarioError(here, "missing required field")
    val = obj[key]
    if typ is float and isinstance(val, int):
        val = float(val)
    if not isinstance(val, typ):
        raise ScenarioError(here, f"expected {typ.__name__}, got {type(val).__name__}")
    return val


def _get_complex(obj: dict, path: str, key: str, default: Any = ...) -> complex:
    here = f"{path}.{key}" if path else key
    if key not in obj:
        if default is not ...:
            return default
        raise ScenarioError(here, "missing required field")
    try:
        return complex_from_json(obj[key])
    except (TypeError, ValueError, IndexError):
        raise ScenarioError(here, "expected a number or an [re, im] pair")


def _conjugation_from(obj: dict, path: str) -> ConjugationParams:
    p = ConjugationParams(
        a=_get_complex(obj, path, "a", 1.0 + 0j),
        b=_get_complex(obj, path, "b", 0.0 + 0j),
        c=_get_complex(obj, path, "c", 1.0 + 0j),
    )
    try:
        p.validate()
    except ConstraintViolation as exc:
        raise ScenarioError(path, str(exc))
    return p


def _family_from(obj: dict, path: str) -> SemigroupFamily:
    variant = _get(obj, path, "variant", str)
    conj = _conjugation_from(_get(obj, path, "conjugation", dict, {}),
                             f"{path}.conjugation")
    try:
        if variant == "translation":
            return TranslationFamily(
                E=_get_complex(obj, path, "E"),
                F=_get_complex(obj, path, "F", 0.0 + 0j),
                conj=conj,
            )
        if variant == "dilation":
            return DilationFamily(
                ell=_get_complex(obj, path, "ell"),
                G=_get_complex(obj, path, "G", 0.0 + 0j),
                H=_get_complex(obj, path, "H", 0.0 + 0j),
                conj=conj,
            )
    except ValueError as exc:
        raise ScenarioError(path, str(exc))
    raise ScenarioError(f"{path}.variant",
                        "expected 'translation' or 'dilation'")


def _truncation_from(obj: dict, path: str) -> TruncationConfig:
    dim = _get(obj, path, "dim", int, 64)
    if dim < 2:
        raise ScenarioError(f"{path}.dim", "truncation dimension must be >= 2")
    overrides = _get(obj, path, "tolerances", dict, {})
    tolerances = dict(DEFAULT_TOLERANCES)
    for key, val in overrides.items():
        if key not in tolerances:
            raise ScenarioError(f"{path}.tolerances.{key}", "unknown tolerance name")
        if not isinstance(val, (int, float)) or isinstance(val, bool):
            raise ScenarioError(f"{path}.tolerances.{key}", "expected a number")
        tolerances[key] = float(val)
    return TruncationConfig(dim=dim, tolerances=tolerances)


# ----------------------------------------------------------------------------
# scenario parsing

def load_scenario(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(str(path), f"cannot read file: {exc}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(str(path), f"malformed JSON: {exc}")
    if not isinstance(obj, dict):
        raise ScenarioError(str(path), "scenario must be a JSON object")
    return obj


def validate_scenario(obj: dict) -> tuple[str, str, dict, TruncationConfig, dict]:
    """Returns (name, kind, params, truncation, output spec) or raises."""
    name = _get(obj, "", "name", str)
    kind = _get(obj, "", "kind", str)
    if kind not in SCENARIO_KINDS:
        raise ScenarioError("kind", f"unknown kind {kind!r}; expected one of "
                                    f"{', '.join(SCENARIO_KINDS)}")
    params = _get(obj, "", "params", dict, {})
    truncation = _truncation_from(_get(obj, "", "truncation", dict, {}), "truncation")
    output = _get(obj, "", "output", dict, {})
    fmt = _get(output, "output", "format", str, "json")
    if fmt not in ("json", "csv"):
        raise ScenarioError("output.format", "expected 'json' or 'csv'")
    # run a dry parameter validation so `validate` catches constraint errors
    _SCENARIO_VALIDATORS[kind](params, truncation)
    return name, kind, params, truncation, output


# per-kind parameter validation (no heavy computation)

def _vld_conjugation(params: dict, trunc: TruncationConfig) -> None:
    _conjugation_from(params, "params")


def _wco_params_from(params: dict, path: str) -> WCOParams:
    return WCOParams(
        A=_get_complex(params, path, "A"),
        B=_get_complex(params, path, "B", 0.0 + 0j),
        C=_get_complex(params, path, "C", 1.0 + 0j),
        D=_get_complex(params, path, "D", 0.0 + 0j),
    )


def _vld_wco(params: dict, trunc: TruncationConfig) -> None:
    _wco_params_from(params, "params")
    if "conjugation" in params:
        _conjugation_from(params["conjugation"], "params.conjugation")


def _vld_family(params: dict, trunc: TruncationConfig) -> None:
    _family_from(_get(params, "params", "family", dict), "params.family")


def _vld_spectrum(params: dict, trunc: TruncationConfig) -> None:
    fam = _family_from(_get(params, "params", "family", dict), "params.family")
    k_max = _get(params, "params", "k_max", int, 5)
    if k_max < 0:
        raise ScenarioError("params.k_max", "must be >= 0")
    if isinstance(fam, TranslationFamily):
        _get_complex(params, "params", "eta", 1 + 1j)


_EVOLUTION_MODELS = ("bagchi", "constant", "table")


def _coefficient_fn(spec: Any, path: str) -> Callable[[float], float]:
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        v = float(spec)
        return lambda t: v
    if isinstance(spec, dict) and "cosine" in spec:
        c = spec["cosine"]
        amp = _get(c, f"{path}.cosine", "amplitude", float, 1.0)
        freq = _get(c, f"{path}.cosine", "frequency", float, 1.0)
        phase = _get(c, f"{path}.cosine", "phase", float, 0.0)
        return lambda t: amp * math.cos(freq * t + phase)
    raise ScenarioError(path, "expected a number or {'cosine': {...}}")


def _matrix_from(entry: Any, path: str) -> np.ndarray:
    if not isinstance(entry, list) or not entry:
        raise ScenarioError(path, "expected a non-empty matrix (list of rows)")
    try:
        rows = [[complex_from_json(x) for x in row] for row in entry]
    except (TypeError, ValueError, IndexError):
        raise ScenarioError(path, "matrix entries must be numbers or [re, im] pairs")
    M = np.array(rows, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ScenarioError(path, "matrix must be square")
    return M


def _evolution_operator_from(params: dict) -> tuple[TimeDependentOperator, dict]:
    model = _get(params, "params", "B", str)
    if model not in _EVOLUTION_MODELS:
        raise ScenarioError("params.B", f"expected one of {_EVOLUTION_MODELS}")
    if model == "bagchi":
        nu = _get(params, "params", "nu", float, 1.0)
        kappa = _coefficient_fn(params.get("kappa", 0.0), "params.kappa")
        lam = _coefficient_fn(params.get("lam", 1.0), "params.lam")
        op = bagchi_hamiltonian(BagchiParams(nu=nu, kappa=kappa, lam=lam))
        meta = {"model": "bagchi", "nu": nu}
        return op, meta
    if model == "constant":
        M = _matrix_from(_get(params, "params", "matrix", list), "params.matrix")
        return constant_operator(M), {"model": "constant", "dim": M.shape[0]}
    times = _get(params, "params", "times", list)
    mats = _get(params, "params", "matrices", list)
    if len(times) != len(mats) or len(times) < 2:
        raise ScenarioError("params.times",
                            "need >= 2 sample times matching 'matrices'")
    ts = np.array([float(x) for x in times])
    if np.any(np.diff(ts) <= 0):
        raise ScenarioError("params.times", "must be strictly increasing")
    stack = np.stack([_matrix_from(m, f"params.matrices[{i}]")
                      for i, m in enumerate(mats)])

    def eval_b(t: float) -> np.ndarray:
        # piecewise-linear interpolation, clamped at the ends
        if t <= ts[0]:
            return stack[0]
        if t >= ts[-1]:
            return stack[-1]
        j = int(np.searchsorted(ts, t) - 1)
        w = (t - ts[j]) / (ts[j + 1] - ts[j])
        return (1 - w) * stack[j] + w * stack[j + 1]

    op = TimeDependentOperator(dim=stack.shape[1], eval=eval_b)
    return op, {"model": "table", "dim": stack.shape[1], "samples": len(times)}


def _vld_evolution(params: dict, trunc: TruncationConfig) -> None:
    _evolution_operator_from(params)
    s = _get(params, "params", "s", float, 0.0)
    t = _get(params, "params", "t", float, 1.0)
    if t < s:
        raise ScenarioError("params.t", "need t >= s")


def _vld_full_verify(params: dict, trunc: TruncationConfig) -> None:
    seed = _get(params, "params", "seed", int, 20260814)
    if seed < 0:
        raise ScenarioError("params.seed", "seed must be >= 0")


_SCENARIO_VALIDATORS: dict[str, Callable[[dict, TruncationConfig], None]] = {
    "conjugation-check": _vld_conjugation,
    "wco": _vld_wco,
    "semigroup": _vld_family,
    "generator": _vld_family,
    "spectrum": _vld_spectrum,
    "evolution": _vld_evolution,
    "full-verify": _vld_full_verify,
}


# ----------------------------------------------------------------------------
# scenario runners: each returns (records, extra report payload, csv rows)

def _run_conjugation(params: dict, trunc: TruncationConfig, seed: int):
    p = _conjugation_from(params, "params")
    dim = trunc.dim
    op = conjugation_matrix(p, dim)
    max_degree = min(8, dim - 1)
    inv = float(np.max(check_involution(op, max_degree)))
    vecs = complex_normal_vectors(seed, 2, dim)
    iso = check_isometry(op, FockVector(vecs[0], "normalized"),
                         FockVector(vecs[1], "normalized"))
    records = []
    if p.b == 0:
        records.append(_mk("conjugation.involution", "C^2 = identity",
                           inv, trunc.tol("involution_exact")))
        records.append(_mk("conjugation.isometry", "<Cf,Cg> = <g,f>",
                           iso, trunc.tol("isometry_exact")))
    else:
        # truncation-limited: report the residual and its decay, judge the decay
        half_op = conjugation_matrix(p, dim // 2)
        inv_half = float(np.max(check_involution(half_op, min(max_degree, dim // 2 - 1))))
        factor = inv_half / inv if inv > 0 else math.inf
        records.append(CheckRecord("conjugation.involution.residual",
                                   "C^2 = identity (truncation limited)",
                                   inv, math.nan, "info"))
        records.append(_mk("conjugation.involution.decay",
                           "C^2 -> identity as truncation grows",
                           factor, trunc.tol("residual_decay_factor"),
                           direction=">="))
        records.append(CheckRecord("conjugation.isometry.residual",
                                   "<Cf,Cg> = <g,f> (truncation limited)",
                                   iso, math.nan, "info"))
    payload = {"conjugation": p.to_json(), "diagonal": p.is_diagonal}
    return records, payload, None


def _run_wco(params: dict, trunc: TruncationConfig, seed: int):
    p = _wco_params_from(params, "params")
    dim = trunc.dim
    M = wco_matrix(p, dim)
    verdict = is_bounded(p)
    records = [
        CheckRecord("wco.bounded", "symbol criterion for boundedness",
                    1.0 if verdict.bounded else 0.0, math.nan, "info",
                    detail=verdict.reason),
    ]
    norms = [float(np.linalg.norm(wco_matrix(p, d), 2)) for d in (dim // 2, dim)]
    records.append(CheckRecord("wco.truncated-norms", "plumbing",
                               norms[-1], math.nan, "info",
                               detail=f"2-norm at dim {dim//2}: {norms[0]!r}, "
                                      f"dim {dim}: {norms[1]!r}"))
    payload: dict[str, Any] = {"wco": p.to_json()}
    if "conjugation" in params:
        cp = _conjugation_from(params["conjugation"], "params.conjugation")
        res = is_c_selfadjoint_symbols(p, cp.a, cp.b)
        records.append(_mk("wco.symbol-selfadjointness",
                           "D = a B - b A + b", res.deviation,
                           trunc.tol("constraint")))
        payload["conjugation"] = cp.to_json()
    return records, payload, None


def _run_semigroup(params: dict, trunc: TruncationConfig, seed: int):
    fam = _family_from(_get(params, "params", "family", dict), "params.family")
    dim = trunc.dim
    grid = np.linspace(0.0, 1.0, 5)
    flow_dev = max(check_semiflow(fam, float(t), float(s))
                   for t in grid for s in grid)
    coc_dev = max(check_semicocycle(fam, float(t), float(s))
                  for t in grid for s in grid)
    law = max(check_semigroup_law(fam, t, s, k, dim)
              for t in (0.25, 1.0) for s in (0.25, 1.0)
              for k in range(0, min(5, dim)))
    lam0, dpsi = scaling_instance(fam)
    scal = max(
        abs(solve_scaling_equation(lam0, dpsi, float(t))
            - family_eval(fam, float(t)).C) / abs(family_eval(fam, float(t)).C)
        for t in np.linspace(0.0, 2.0, 5)
    )
    records = [
        _mk("semigroup.semiflow", "zeta_{t+s} = zeta_t o zeta_s",
            flow_dev, trunc.tol("semiflow")),
        _mk("semigroup.semicocycle", "xi_{t+s} = xi_t (xi_s o zeta_t)",
            coc_dev, trunc.tol("semicocycle")),
        _mk("semigroup.law", "W(t) W(s) = W(t+s) on monomials",
            law, trunc.tol("semigroup_law")),
        _mk("semigroup.scaling-multiplier",
            "multiplier solves the scaling differential equation",
            scal, trunc.tol("scaling_solver")),
        CheckRecord("semigroup.bounded", "uniform boundedness criterion",
                    1.0 if family_is_bounded(fam) else 0.0, math.nan, "info"),
    ]
    omega = float(params.get("omega", 0.0))
    probe = GrowthProbe(omega=omega)
    rep = n_omega_estimate(fam, monomial(0, dim), probe, dim)
    records.append(CheckRecord(
        "semigroup.growth", "sup_t e^{-omega t} ||W(t) 1||",
        rep.sup, math.nan, "info",
        detail=f"diverging={rep.diverging} argmax_t={rep.argmax_t!r}"))
    rows = [("t", "norm", "weighted_norm")]
    for t, weighted in zip(probe.t_grid, rep.values):
        raw = weighted * math.exp(omega * t)
        rows.append((float(t), float(raw), float(weighted)))
    payload = {"family": fam.to_json(), "growth": rep.to_json(), "omega": omega}
    return records, payload, rows


def _run_generator(params: dict, trunc: TruncationConfig, seed: int):
    fam = _family_from(_get(params, "params", "family", dict), "params.family")
    dim = trunc.dim
    slope_f, _ = check_generator_fd(fam, 0, dim, scheme="forward")
    slope_c, _ = check_generator_fd(fam, 0, dim, scheme="central")
    gen = generator_matrix(fam, dim).dense()
    worst = 0.0
    block = min(20, dim)
    for t in (0.1, 0.5):
        E = matrix_exponential(gen, t)
        W = semigroup_matrix(fam, t, dim)
        for k in range(min(4, dim)):
            v = monomial(k, dim).to_normalized().coeffs
            worst = max(worst, float(np.linalg.norm((E @ v - W @ v)[:block])))
    stone = check_stone_adjoint_relation(fam, fam.conj, dim)
    records = [
        _mk("generator.fd-forward-slope", "first-order quotient converges",
            abs(slope_f - 1.0), 0.1, detail=f"slope {slope_f:.4f}"),
        _mk("generator.fd-central-slope", "second-order quotient converges",
            abs(slope_c - 2.0), 0.1, detail=f"slope {slope_c:.4f}"),
        _mk("generator.exponential-bridge",
            "exp(t Q) matches W(t) on low coefficients",
            worst, trunc.tol("expm_vs_semigroup")),
        _mk("generator.c-symmetry", "Q M = M Q^T",
            stone.c_symmetry_residual, trunc.tol("matrix_symmetry_exact")),
        CheckRecord("generator.adjoint-quotient",
                    "adjoint family differentiates to Q^H",
                    stone.adjoint_fd_residual, math.nan, "info"),
    ]
    return records, {"family": fam.to_json()}, None


def _run_spectrum(params: dict, trunc: TruncationConfig, seed: int):
    fam = _family_from(_get(params, "params", "family", dict), "params.family")
    k_max = _get(params, "params", "k_max", int, 5)
    dim = trunc.dim
    if isinstance(fam, TranslationFamily):
        eta = _get_complex(params, "params", "eta", 1 + 1j)
        base = max(4, dim // 4)
        cert = check_empty_point_spectrum(fam, eta, (base, 2 * base, 4 * base))
        records = [
            _mk(f"spectrum.empty.divergence.eta={eta}",
                "candidate eigenfunction leaves the space",
                min(cert.ratios.values()), cert.threshold, direction=">=",
                detail=f"ratios {cert.ratios}"),
        ]
        return records, {"family": fam.to_json(),
                         "certificate": cert.to_json()}, None
    rep = spectrum_report(fam, k_max, dim)
    records = [
        _mk("spectrum.eigen-residuals",
            "(z-G)^m exp(beta z) are eigenfunctions",
            float(np.max(rep.residuals)), trunc.tol("eigen_residual")),
        CheckRecord("spectrum.predicted-lattice",
                    "eigenvalues H - ell beta G + k ell",
                    float(np.max(np.abs(rep.predicted))), math.nan, "info",
                    detail=", ".join(repr(complex(z)) for z in rep.predicted)),
    ]
    rows = [("m", "predicted_re", "predicted_im", "residual")]
    for m, (lam, r) in enumerate(zip(rep.predicted, rep.residuals)):
        rows.append((m, lam.real, lam.imag, float(r)))
    return records, {"family": fam.to_json(), "spectrum": rep.to_json()}, rows


def _run_evolution(params: dict, trunc: TruncationConfig, seed: int):
    B, meta = _evolution_operator_from(params)
    s = _get(params, "params", "s", float, 0.0)
    t = _get(params, "params", "t", float, 1.0)
    rel_tol = _get(params, "params", "rel_tol", float, 1e-10)
    steps = _get(params, "params", "samples", int, 21)
    mid = s + (t - s) / 2
    ident, comp = check_evolution_axioms(B, (s, mid, t), rel_tol)
    sym = check_evolution_c_symmetry(B, np.eye(B.dim), s, t, rel_tol)
    records = [
        _mk("evolution.identity", "U(t, t) = identity", ident,
            trunc.tol("evolution_tol_factor") * rel_tol),
        _mk("evolution.composition", "U(t, r) U(r, s) = U(t, s)", comp,
            trunc.tol("evolution_tol_factor") * rel_tol),
        CheckRecord("evolution.transpose-symmetry",
                    "U M = M U^T under plain conjugation",
                    sym, math.nan, "info",
                    detail="pass/fail asserted only for commuting families"),
    ]
    header = ["t"]
    for i in range(B.dim):
        for j in range(B.dim):
            header += [f"U{i}{j}_re", f"U{i}{j}_im"]
    rows: list[tuple] = [tuple(header)]
    for tk in np.linspace(s, t, steps):
        if tk == s:
            U = np.eye(B.dim, dtype=complex)
        else:
            U = evolve(B, s, float(tk), rel_tol).matrix
        row: list[float] = [float(tk)]
        for i in range(B.dim):
            for j in range(B.dim):
                row += [U[i, j].real, U[i, j].imag]
        rows.append(tuple(row))
    payload = {"evolution": meta, "s": s, "t": t, "rel_tol": rel_tol}
    return records, payload, rows


def _run_full_verify(params: dict, trunc: TruncationConfig, seed: int):
    seed = _get(params, "params", "seed", int, seed)
    parallel = _get(params, "params", "parallel", bool, False)
    cfg = VerifyConfig(dim=trunc.dim, seed=seed, tolerances=dict(trunc.tolerances))
    records = run_all(cfg, parallel=parallel)
    return records, {"seed": seed, "parallel": parallel}, None


_SCENARIO_RUNNERS = {
    "conjugation-check": _run_conjugation,
    "wco": _run_wco,
    "semigroup": _run_semigroup,
    "generator": _run_generator,
    "spectrum": _run_spectrum,
    "evolution": _run_evolution,
    "full-verify": _run_full_verify,
}


def _mk(check_id: str, anchor: str, measured: float, threshold: float,
        direction: str = "<=", detail: str = "") -> CheckRecord:
    measured = float(measured)
    ok = measured <= threshold if direction == "<=" else measured >= threshold
    return CheckRecord(check_id, anchor, measured, float(threshold),
                       "pass" if ok else "fail", direction, detail)


# ----------------------------------------------------------------------------
# report assembly and output

def _assemble_report(name: str, records: Sequence[CheckRecord],
                     provenance: dict) -> dict:
    return {
        "scenario": name,
        "records": [r.to_json() for r in records],
        "provenance": provenance,
    }


def _print_records(records: Sequence[CheckRecord]) -> None:
    width = max((len(r.check_id) for r in records), default=0)
    for r in records:
        if math.isnan(r.threshold):
            bound = "-"
        else:
            bound = f"{r.direction} {r.threshold:g}"
        print(f"  {r.status.upper():4s}  {r.check_id:<{width}s}  "
              f"{r.measured:.6g} {bound}")
    n_fail = sum(r.status == "fail" for r in records)
    n_warn = sum(r.status == "warn" for r in records)
    n_info = sum(r.status == "info" for r in records)
    n_pass = sum(r.status == "pass" for r in records)
    print(f"  {n_pass} pass, {n_warn} warn, {n_info} info, {n_fail} fail")


def _resolve_output(output: dict, fallback_stem: str) -> tuple[Path, str]:
    fmt = output.get("format", "json")
    if "path" in output:
        return Path(output["path"]), fmt
    ext = "json" if fmt == "json" else "csv"
    return Path(default_output_dir()) / f"{fallback_stem}.{ext}", fmt


def _emit(report: dict, records: Sequence[CheckRecord],
          rows, output: dict, stem: str) -> Path:
    path, fmt = _resolve_output(output, stem)
    if fmt == "csv":
        if rows is None:
            rows = [("check_id", "anchor", "measured", "threshold",
                     "direction", "status")]
            rows += [(r.check_id, r.anchor, r.measured, r.threshold,
                      r.direction, r.status) for r in records]
        write_csv(str(path), [str(h) for h in rows[0]], rows[1:])
    else:
        write_json_report(str(path), report)
    return path


# ----------------------------------------------------------------------------
# subcommand handlers

def _cmd_validate(args) -> int:
    obj = load_scenario(Path(args.scenario))
    name, kind, *_ = validate_scenario(obj)
    print(f"scenario valid: {name} ({kind})")
    return 0


def _cmd_run(args) -> int:
    obj = load_scenario(Path(args.scenario))
    name, kind, params, trunc, output = validate_scenario(obj)
    t0 = time.perf_counter()
    records, payload, rows = _SCENARIO_RUNNERS[kind](params, trunc, args.seed)
    wall = time.perf_counter() - t0
    provenance = {
        "kind": kind,
        "parameters": payload,
        "truncation": {"dim": trunc.dim},
        "tolerances": dict(trunc.tolerances),
        "seed": args.seed,
        "wall_time_s": wall,
    }
    report = _assemble_report(name, records, provenance)
    path = _emit(report, records, rows, output, name.replace(" ", "-"))
    print(f"scenario: {name} ({kind})")
    _print_records(records)
    print(f"report written to {path}")
    failed = [r for r in records if r.status == "fail"]
    if failed:
        print(f"FAILED: {', '.join(r.check_id for r in failed)}", file=sys.stderr)
        return 2
    return 0


def _cmd_verify_all(args) -> int:
    cfg = VerifyConfig(dim=args.dim, seed=args.seed)
    t0 = time.perf_counter()
    records = run_all(cfg, parallel=args.parallel)
    wall = time.perf_counter() - t0
    provenance = {
        "kind": "full-verify",
        "parameters": {"parallel": args.parallel},
        "truncation": {"dim": cfg.dim},
        "tolerances": dict(cfg.tolerances),
        "seed": cfg.seed,
        "wall_time_s": wall,
    }
    report = _assemble_report("verify-all", records, provenance)
    output = {"path": args.out} if args.out else {}
    path = _emit(report, records, None, output, "verify-all")
    _print_records(records)
    print(f"report written to {path}  ({wall:.1f}s)")
    if any(r.status == "fail" for r in records):
        bad = [r.check_id for r in records if r.status == "fail"]
        print(f"FAILED: {', '.join(bad)}", file=sys.stderr)
        return 2
    return 0


def _cmd_spectrum(args) -> int:
    conj = ConjugationParams(a=args.a, b=args.b, c=args.c)
    try:
        conj.validate()
        fam = DilationFamily(ell=args.ell, G=args.G, H=args.H, conj=conj)
    except (ConstraintViolation, ValueError) as exc:
        raise ScenarioError("parameters", str(exc))
    trunc = TruncationConfig(dim=args.dim)
    params = {"family": fam.to_json(), "k_max": args.k_max}
    records, payload, rows = _run_spectrum(params, trunc, args.seed)
    provenance = {
        "kind": "spectrum",
        "parameters": payload,
        "truncation": {"dim": trunc.dim},
        "tolerances": dict(trunc.tolerances),
        "seed": args.seed,
        "wall_time_s": 0.0,
    }
    report = _assemble_report("spectrum", records, provenance)
    output = {"path": args.out} if args.out else {}
    if args.format == "csv":
        output["format"] = "csv"
    path = _emit(report, records, rows if args.format == "csv" else None,
                 output, "spectrum")
    _print_records(records)
    print(f"report written to {path}")
    return 2 if any(r.status == "fail" for r in records) else 0


def _cmd_evolve(args) -> int:
    params: dict[str, Any] = {
        "B": "bagchi",
        "nu": args.nu,
        "kappa": args.kappa,
        "lam": args.lam,
        "s": args.s,
        "t": args.t,
        "rel_tol": args.rel_tol,
        "samples": args.samples,
    }
    trunc = TruncationConfig(dim=2)
    records, payload, rows = _run_evolution(params, trunc, args.seed)
    output = {"path": args.out} if args.out else {}
    output["format"] = "csv"
    report = _assemble_report("evolve", records, {
        "kind": "evolution", "parameters": payload,
        "truncation": {"dim": 2}, "tolerances": dict(trunc.tolerances),
        "seed": args.seed, "wall_time_s": 0.0,
    })
    path = _emit(report, records, rows, output, "evolve")
    _print_records(records)
    print(f"time series written to {path}")
    return 2 if any(r.status == "fail" for r in records) else 0


# ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        raise ScenarioError("arguments", message)


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=20260814,
                   help="seed for deterministic sample vectors")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="focksym",
                     description="truncated Fock-space semigroup verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file without running")
    p.add_argument("scenario")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("run", help="execute a scenario file")
    p.add_argument("scenario")
    _add_seed(p)
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("verify-all", help="run the complete check suite")
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", default=None, help="report path (default: output dir)")
    _add_seed(p)
    p.set_defaults(fn=_cmd_verify_all)

    p = sub.add_parser("spectrum", help="dilation point-spectrum report")
    p.add_argument("--ell", type=complex, default=1 + 0j,
                   help="complex values accepted as e.g. --ell=-1+0.5j")
    p.add_argument("--G", type=complex, default=1 + 0j)
    p.add_argument("--H", type=complex, default=0j)
    p.add_argument("--a", type=complex, default=1 + 0j)
    p.add_argument("--b", type=complex, default=0j)
    p.add_argument("--c", type=complex, default=1 + 0j)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    _add_seed(p)
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("evolve", help="two-level propagator time series (CSV)")
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=0.3)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=21)
    p.add_argument("--out", default=None)
    _add_seed(p)
    p.set_defaults(fn=_cmd_evolve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except ScenarioError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
