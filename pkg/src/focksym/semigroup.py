"""One-parameter families of weighted composition operators.

Two concrete families are realized, both attached to conjugation data (a, b)
and both satisfying the symbol relation D(t) = a B(t) - b A(t) + b for all t:

* translation flow, parameters (E != 0, F):
    A(t) = 1,  B(t) = E t,  C(t) = exp(F t + a E^2 t^2 / 2),  D(t) = a E t

* dilation flow, parameters (ell != 0, G, H), with beta = a G + b:
    A(t) = exp(ell t)
    B(t) = G (1 - exp(ell t))
    C(t) = exp(H t + G beta (exp(ell t) - ell t - 1))
    D(t) = beta (1 - exp(ell t))

The module also provides the flow/cocycle law checks, a quadrature solver for
the scalar scaling equation, truncated operator matrices, growth probes, and
the Laplace-transform resolvent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .conjugation import ConjugationParams
from .fock import FockVector, monomial
from .serialize import complex_from_json, complex_to_json
from .wco import WCOParams, wco_matrix

__all__ = [
    "TranslationFamily",
    "DilationFamily",
    "SemigroupFamily",
    "QuadratureError",
    "GrowthProbe",
    "GrowthReport",
    "family_from_json",
    "family_eval",
    "family_is_bounded",
    "check_semiflow",
    "check_semicocycle",
    "solve_scaling_equation",
    "semigroup_matrix",
    "check_semigroup_law",
    "scaling_instance",
    "n_omega_estimate",
    "norm_w_one_closed_form",
    "laplace_resolvent",
    "DEFAULT_Z_SAMPLES",
]

DEFAULT_Z_SAMPLES: tuple[complex, ...] = (0.0, 1.0, -1.0, 1j, -1j, 2 + 1j)


@dataclass(frozen=True)
class TranslationFamily:
    """Flow z + conj(a) E t with exponential cocycle; generator is tridiagonal."""

    E: complex
    F: complex
    conj: ConjugationParams

    def __post_init__(self) -> None:
        if self.E == 0:
            raise ValueError("translation family requires E != 0")

    def to_json(self) -> dict:
        return {
            "variant": "translation",
            "E": complex_to_json(self.E),
            "F": complex_to_json(self.F),
            "conjugation": self.conj.to_json(),
        }


@dataclass(frozen=True)
class DilationFamily:
    """Flow with attracting/repelling fixed point G and rate ell."""

    ell: complex
    G: complex
    H: complex
    conj: ConjugationParams

    def __post_init__(self) -> None:
        if self.ell == 0:
            raise ValueError("dilation family requires ell != 0")

    @property
    def beta(self) -> complex:
        return self.conj.a * self.G + self.conj.b

    def to_json(self) -> dict:
        return {
            "variant": "dilation",
            "ell": complex_to_json(self.ell),
            "G": complex_to_json(self.G),
            "H": complex_to_json(self.H),
            "conjugation": self.conj.to_json(),
        }


SemigroupFamily = Union[TranslationFamily, DilationFamily]


def family_from_json(obj: dict) -> SemigroupFamily:
    variant = obj.get("variant")
    if variant not in ("translation", "dilation"):
        raise ValueError(f"unknown family variant {variant!r}")
    conj = ConjugationParams.from_json(obj["conjugation"])
    if variant == "translation":
        return TranslationFamily(
            complex_from_json(obj["E"]), complex_from_json(obj["F"]), conj
        )
    return DilationFamily(
        complex_from_json(obj["ell"]),
        complex_from_json(obj["G"]),
        complex_from_json(obj["H"]),
        conj,
    )


def _eval_any_t(fam: SemigroupFamily, t: float) -> WCOParams:
    # The closed forms extend to all real t (the semigroup embeds in a group);
    # negative times are used internally by central finite differences.
    a, b = fam.conj.a, fam.conj.b
    if isinstance(fam, TranslationFamily):
        return WCOParams(
            A=1.0,
            B=fam.E * t,
            C=np.exp(fam.F * t + a * fam.E**2 * t**2 / 2),
            D=a * fam.E * t,
        )
    beta = fam.beta
    eat = np.exp(fam.ell * t)
    return WCOParams(
        A=eat,
        B=fam.G * (1 - eat),
        C=np.exp(fam.H * t + fam.G * beta * (eat - fam.ell * t - 1)),
        D=beta * (1 - eat),
    )


def family_eval(fam: SemigroupFamily, t: float) -> WCOParams:
    """Symbol data (A, B, C, D)(t); t = 0 gives the identity (1, 0, 1, 0)."""
    if t < 0:
        raise ValueError(f"family parameter t must be >= 0, got {t}")
    return _eval_any_t(fam, t)


def family_is_bounded(fam: SemigroupFamily, tol: float = 1e-12) -> bool:
    """Uniform boundedness of the whole family (every t > 0).

    Translation: conj(E) + a E = 0.  Dilation: Re ell < 0, or Re ell = 0
    together with a G + b - conj(G) = 0.
    """
    a, b = fam.conj.a, fam.conj.b
    if isinstance(fam, TranslationFamily):
        return bool(abs(np.conj(fam.E) + a * fam.E) <= tol)
    re = fam.ell.real if isinstance(fam.ell, complex) else float(fam.ell)
    if re < -tol:
        return True
    if abs(re) <= tol:
        return bool(abs(a * fam.G + b - np.conj(fam.G)) <= tol)
    return False


def _flow(fam: SemigroupFamily, t: float, z: complex) -> complex:
    # zeta_t(z) = conj(A(t)) z + conj(B(t)) evaluated through the conjugated
    # symbols; equivalently the composition symbol of the antilinear picture.
    p = _eval_any_t(fam, t)
    return p.A * z + p.B


def check_semiflow(
    fam: SemigroupFamily,
    t: float,
    s: float,
    z_samples: Sequence[complex] = DEFAULT_Z_SAMPLES,
) -> float:
    """max_z |zeta_{t+s}(z) - zeta_t(zeta_s(z))| over the sample points."""
    worst = 0.0
    for z in z_samples:
        lhs = _flow(fam, t + s, z)
        rhs = _flow(fam, t, _flow(fam, s, z))
        worst = max(worst, abs(lhs - rhs))
    return worst


def _cocycle(fam: SemigroupFamily, t: float, z: complex) -> complex:
    p = _eval_any_t(fam, t)
    return p.C * np.exp(p.D * z)


def check_semicocycle(
    fam: SemigroupFamily,
    t: float,
    s: float,
    z_samples: Sequence[complex] = DEFAULT_Z_SAMPLES,
) -> float:
    """Relative deviation of xi_{t+s}(z) from xi_t(z) xi_s(zeta_t(z)).

    Equivalent scalar identities: C(t+s) = C(t) C(s) exp(B(t) D(s)) and
    D(t+s) = D(t) + A(t) D(s).
    """
    worst = 0.0
    for z in z_samples:
        lhs = _cocycle(fam, t + s, z)
        rhs = _cocycle(fam, t, z) * _cocycle(fam, s, _flow(fam, t, z))
        denom = abs(lhs)
        if denom == 0:
            raise ZeroDivisionError("cocycle vanished at a sample point")
        worst = max(worst, abs(lhs - rhs) / denom)
    return worst


class QuadratureError(RuntimeError):
    """Step-halving refinement failed to converge."""


def _composite_gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, panels: int, nodes: int
) -> complex:
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0 + 0.0j
    for left, right in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (left + right)
        half = 0.5 * (right - left)
        total += half * np.sum(w * f(mid + half * x))
    return total


def _refine_quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: float,
    nodes: int = 10,
    max_refinements: int = 12,
) -> complex:
    panels = 4
    prev = _composite_gauss_legendre(f, lo, hi, panels, nodes)
    for _ in range(max_refinements):
        panels *= 2
        cur = _composite_gauss_legendre(f, lo, hi, panels, nodes)
        scale = max(abs(cur), 1.0)
        if abs(cur - prev) <= tol * scale:
            return cur
        prev = cur
    raise QuadratureError(
        f"step-halving disagreement {abs(cur - prev):.3e} above {tol:.1e} "
        f"after {max_refinements} refinements on [{lo}, {hi}]"
    )


def solve_scaling_equation(
    lambda0: complex,
    dpsi: Callable[[np.ndarray], np.ndarray],
    t: float,
    tol: float = 1e-12,
) -> complex:
    """Solve Lambda'(t) = [lambda0 + integral drift] Lambda via the closed form.

    Returns exp(t*lambda0 + int_0^t dpsi(tau) dtau) with the integral done by
    composite Gauss-Legendre under step-halving control.  ``dpsi`` is the
    partial derivative (d/ds at s=0) of the scaling symbol at offset tau.
    """
    if t == 0:
        return 1.0 + 0.0j
    integral = _refine_quadrature(dpsi, 0.0, float(t), tol)
    return complex(np.exp(t * lambda0 + integral))


def scaling_instance(fam: SemigroupFamily) -> tuple[complex, Callable]:
    """(Lambda'(0), dpsi) pair whose scaling solution reproduces C(t)."""
    a, b = fam.conj.a, fam.conj.b
    if isinstance(fam, TranslationFamily):
        E, F = fam.E, fam.F
        return F, lambda tau: a * E**2 * np.asarray(tau, dtype=complex)
    ell, G = fam.ell, fam.G
    beta = fam.beta
    return fam.H, lambda tau: -ell * G * beta * (
        1 - np.exp(np.asarray(tau, dtype=complex) * ell)
    )


def semigroup_matrix(fam: SemigroupFamily, t: float, dim: int) -> np.ndarray:
    """Truncated matrix of the family member at time t (normalized basis)."""
    return wco_matrix(family_eval(fam, t), dim)


def check_semigroup_law(
    fam: SemigroupFamily, t: float, s: float, k: int, dim: int
) -> float:
    """Relative deviation ||W(t) W(s) e_k - W(t+s) e_k|| / ||W(t+s) e_k||.

    W(s) is applied at full dimension ``dim`` and all coefficients are kept
    before W(t) acts; no intermediate re-truncation.
    """
    if not 0 <= k < dim:
        raise ValueError("monomial degree outside truncation")
    v = monomial(k, dim).to_normalized().coeffs
    Wt = semigroup_matrix(fam, t, dim)
    Ws = semigroup_matrix(fam, s, dim)
    Wts = semigroup_matrix(fam, t + s, dim)
    lhs = Wt @ (Ws @ v)
    rhs = Wts @ v
    denom = np.linalg.norm(rhs)
    if denom == 0:
        raise ZeroDivisionError("reference vector vanished")
    return float(np.linalg.norm(lhs - rhs) / denom)


def _default_t_grid() -> np.ndarray:
    # 0 followed by 64 geometrically spaced points up to 8.
    return np.concatenate(([0.0], np.geomspace(1.0 / 64.0, 8.0, 64)))


@dataclass(frozen=True)
class GrowthProbe:
    """Exponential weight omega and the time grid for sup_t e^{-wt} ||W(t)x||."""

    omega: float = 0.0
    t_grid: np.ndarray = field(default_factory=_default_t_grid)

    def __post_init__(self) -> None:
        grid = np.asarray(self.t_grid, dtype=float)
        if grid.ndim != 1 or grid.size < 4 or grid[0] != 0.0:
            raise ValueError("t_grid must be 1-D, start at 0, and have >= 4 points")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("t_grid must be strictly increasing")
        grid = grid.copy()
        grid.setflags(write=False)
        object.__setattr__(self, "t_grid", grid)


@dataclass(frozen=True)
class GrowthReport:
    sup: float
    argmax_t: float
    diverging: bool
    values: np.ndarray  # e^{-omega t} ||W(t) x|| along the grid

    def to_json(self) -> dict:
        return {
            "sup": self.sup,
            "argmax_t": self.argmax_t,
            "diverging": self.diverging,
        }


def n_omega_estimate(
    fam: SemigroupFamily, x: FockVector, probe: GrowthProbe, dim: int | None = None
) -> GrowthReport:
    """Grid estimate of N_omega(x) = sup_t e^{-omega t} ||W(t) x||.

    Diverging is flagged when the last three grid values strictly increase
    and exceed ten times the grid minimum, or when the norm overflows.
    """
    dim = dim if dim is not None else x.dim
    vec = x.to_normalized().coeffs
    if vec.size != dim:
        raise ValueError("probe vector dimension differs from requested dim")
    vals = np.empty(probe.t_grid.size)
    for i, t in enumerate(probe.t_grid):
        W = semigroup_matrix(fam, float(t), dim)
        nrm = np.linalg.norm(W @ vec)
        vals[i] = math.exp(-probe.omega * t) * nrm if np.isfinite(nrm) else np.inf
    finite = vals[np.isfinite(vals)]
    overflowed = finite.size < vals.size
    tail_up = bool(
        vals.size >= 3
        and np.all(np.diff(vals[-3:]) > 0)
        and np.all(vals[-3:] > 10 * np.min(vals))
    )
    diverging = overflowed or tail_up
    sup = float(np.max(finite)) if finite.size else math.inf
    arg = float(probe.t_grid[int(np.argmax(np.where(np.isfinite(vals), vals, -1.0)))])
    if overflowed:
        sup = math.inf
        arg = float(probe.t_grid[int(np.argmin(np.isfinite(vals)))])
    return GrowthReport(sup=sup, argmax_t=arg, diverging=diverging, values=vals)


def norm_w_one_closed_form(fam: SemigroupFamily, t: float) -> float:
    """||W(t) 1|| = |C(t)| exp(|D(t)|^2 / 2), from the kernel-vector image."""
    p = family_eval(fam, t)
    return float(abs(p.C) * math.exp(abs(p.D) ** 2 / 2))


def laplace_resolvent(
    fam: SemigroupFamily,
    lam: complex,
    x: FockVector,
    omega: float,
    dim: int | None = None,
    tol: float = 1e-10,
    tail_tol: float = 1e-10,
) -> FockVector:
    """Resolvent-type vector J_lam x = int_0^inf e^{-lam t} W(t) x dt.

    Requires Re(lam) > omega and a non-diverging growth probe at weight
    omega; the upper limit T is chosen so the integrand tail bound
    e^{(omega - Re lam) T} * N_omega-estimate falls below ``tail_tol``.
    """
    if lam.real <= omega:
        raise ValueError(f"need Re(lam) > omega, got {lam.real} <= {omega}")
    dim = dim if dim is not None else x.dim
    report = n_omega_estimate(fam, x, GrowthProbe(omega=omega), dim)
    if report.diverging:
        raise ValueError(
            f"growth probe diverges at omega = {omega}; the Laplace integral "
            "is not certified to converge — raise omega or change the family"
        )
    bound = max(report.sup, 1e-30)
    T = math.log(bound / tail_tol) / (lam.real - omega)
    T = max(T, 1.0)
    vec = x.to_normalized().coeffs

    def integrand(ts: np.ndarray) -> np.ndarray:
        out = np.empty((ts.size, dim), dtype=complex)
        for i, t in enumerate(np.asarray(ts, dtype=float)):
            W = semigroup_matrix(fam, float(t), dim)
            out[i] = np.exp(-lam * t) * (W @ vec)
        return out

    panels = 8
    nodes = 10
    x_gl, w_gl = np.polynomial.legendre.leggauss(nodes)
    prev = None
    for _ in range(10):
        edges = np.linspace(0.0, T, panels + 1)
        acc = np.zeros(dim, dtype=complex)
        for left, right in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (left + right), 0.5 * (right - left)
            vals = integrand(mid + half * x_gl)
            acc += half * (w_gl[:, None] * vals).sum(axis=0)
        if prev is not None:
            scale = max(np.linalg.norm(acc), 1.0)
            if np.linalg.norm(acc - prev) <= tol * scale:
                return FockVector(acc, "normalized")
        prev = acc
        panels *= 2
    raise QuadratureError("Laplace quadrature did not reach the requested agreement")
