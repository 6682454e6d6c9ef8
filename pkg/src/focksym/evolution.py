"""Nonautonomous evolution families U(t, s) solving U' = B(t) U, U(s, s) = I.

The propagator is integrated as a full matrix with an adaptive embedded
Runge-Kutta pair of orders 5(4) (Dormand-Prince tableau).  Local error is
controlled per unit step so that the accumulated error over a path of modest
length stays at the order of the requested relative tolerance.

Checks cover the evolution-family axioms, the adjoint family's derivative
identity, the commutation relation B(s) J = J conj(B(s))  (written here as
B(s) M = M B(s)^T for the matrix part M of the antilinear J), and the induced
symmetry U(t,s) = J U(t,s)* J of the propagator for commuting families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "TimeDependentOperator",
    "IntegratorStats",
    "EvolutionOperator",
    "StiffnessError",
    "evolve",
    "check_evolution_axioms",
    "check_adjoint_family",
    "check_nonauto_stone",
    "check_evolution_c_symmetry",
    "BagchiParams",
    "bagchi_hamiltonian",
    "constant_operator",
]


@dataclass(frozen=True)
class TimeDependentOperator:
    """Matrix-valued coefficient t -> B(t), with fixed dimension."""

    dim: int
    eval: Callable[[float], np.ndarray]

    def __call__(self, t: float) -> np.ndarray:
        M = np.asarray(self.eval(t), dtype=complex)
        if M.shape != (self.dim, self.dim):
            raise ValueError(f"B({t}) has shape {M.shape}, expected {(self.dim, self.dim)}")
        return M


def constant_operator(M: np.ndarray) -> TimeDependentOperator:
    M = np.asarray(M, dtype=complex)
    return TimeDependentOperator(dim=M.shape[0], eval=lambda t: M)


@dataclass(frozen=True)
class IntegratorStats:
    steps: int
    rejected: int
    max_local_error: float


@dataclass(frozen=True)
class EvolutionOperator:
    """Propagator matrix from time s to time t with integrator statistics."""

    s: float
    t: float
    matrix: np.ndarray
    stats: IntegratorStats


class StiffnessError(RuntimeError):
    """Step size underflowed; the problem is too stiff for this integrator."""


# Dormand-Prince 5(4) tableau.
_STAGE_TIMES = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_COUPLING = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_WEIGHTS5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_ERROR_WEIGHTS = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)

_MIN_STEP_FACTOR = 1e-13
_MAX_GROWTH = 5.0
_MIN_SHRINK = 0.2
_SAFETY = 0.9


def _integrate_matrix(
    B: TimeDependentOperator, t0: float, t1: float, rel_tol: float
) -> tuple[np.ndarray, IntegratorStats]:
    dim = B.dim
    U = np.eye(dim, dtype=complex)
    if t1 == t0:
        return U, IntegratorStats(steps=0, rejected=0, max_local_error=0.0)
    span = t1 - t0
    h = span / 50.0
    h_floor = abs(span) * _MIN_STEP_FACTOR
    x = t0
    steps = rejected = 0
    max_err = 0.0
    direction = 1.0 if span > 0 else -1.0
    while (t1 - x) * direction > 0:
        if (x + h - t1) * direction > 0:
            h = t1 - x
        stages: list[np.ndarray] = []
        for i in range(7):
            Y = U
            for j, c in enumerate(_COUPLING[i]):
                if c:
                    Y = Y + (h * c) * stages[j]
            stages.append(B(x + _STAGE_TIMES[i] * h) @ Y)
        U5 = U
        for i, w in enumerate(_WEIGHTS5):
            if w:
                U5 = U5 + (h * w) * stages[i]
        err = np.zeros_like(U)
        for i, w in enumerate(_ERROR_WEIGHTS):
            if w:
                err = err + (h * w) * stages[i]
        scale = max(float(np.max(np.abs(U5))), float(np.max(np.abs(U))), 1.0)
        local = float(np.max(np.abs(err))) / scale
        budget = rel_tol * abs(h)  # error-per-unit-step control
        finite = math.isfinite(local)
        if finite and local <= budget:
            x += h
            U = U5
            steps += 1
            max_err = max(max_err, local)
        else:
            rejected += 1
        if not finite:
            h *= _MIN_SHRINK
        elif local > 0:
            h *= min(_MAX_GROWTH, max(_MIN_SHRINK, _SAFETY * (budget / local) ** 0.2))
        else:
            h *= _MAX_GROWTH
        if abs(h) < h_floor:
            raise StiffnessError(
                f"step size {abs(h):.3e} underflowed at t = {x:.6g}; "
                "the coefficient family is too stiff for the 5(4) pair"
            )
    return U, IntegratorStats(steps=steps, rejected=rejected, max_local_error=max_err)


def evolve(
    B: TimeDependentOperator, s: float, t: float, rel_tol: float = 1e-10
) -> EvolutionOperator:
    """Propagator U(t, s) for t >= s at the requested tolerance."""
    if t < s:
        raise ValueError(f"evolve requires t >= s, got t = {t} < s = {s}")
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    U, stats = _integrate_matrix(B, s, t, rel_tol)
    return EvolutionOperator(s=s, t=t, matrix=U, stats=stats)


def check_evolution_axioms(
    B: TimeDependentOperator,
    times: tuple[float, float, float],
    rel_tol: float = 1e-10,
) -> tuple[float, float]:
    """(identity residual, composition residual) for s <= r <= t.

    Identity: max-abs of U(t, t) - I.  Composition: max-abs of
    U(t, r) U(r, s) - U(t, s).
    """
    s, r, t = times
    if not s <= r <= t:
        raise ValueError(f"need s <= r <= t, got {times}")
    ident = evolve(B, t, t, rel_tol).matrix - np.eye(B.dim)
    U_ts = evolve(B, s, t, rel_tol).matrix
    U_tr = evolve(B, r, t, rel_tol).matrix
    U_rs = evolve(B, s, r, rel_tol).matrix
    comp = U_tr @ U_rs - U_ts
    return float(np.max(np.abs(ident))), float(np.max(np.abs(comp)))


def check_adjoint_family(
    B: TimeDependentOperator,
    s: float,
    t: float,
    z: np.ndarray,
    h: float,
    rel_tol: float = 1e-12,
) -> float:
    """Difference-quotient residual of d/dt [U(t,s)^H z] = U(t,s)^H B(t)^H z.

    Returns ||(U(t+h,s)^H z - U(t,s)^H z)/h - U(t,s)^H B(t)^H z||, an O(h)
    quantity for smooth coefficients.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    z = np.asarray(z, dtype=complex)
    U_t = evolve(B, s, t, rel_tol).matrix
    U_th = evolve(B, s, t + h, rel_tol).matrix
    quotient = (U_th.conj().T @ z - U_t.conj().T @ z) / h
    target = U_t.conj().T @ (B(t).conj().T @ z)
    return float(np.linalg.norm(quotient - target))


def check_nonauto_stone(
    B: TimeDependentOperator,
    conj_matrix: np.ndarray,
    s_grid: Sequence[float],
    involution_tol: float = 1e-12,
) -> np.ndarray:
    """Residuals ||B(s) M - M B(s)^T|| over the grid, for antilinear J = M conj.

    Validates that M actually defines an involution (M conj(M) = I) before
    measuring; a broken involution raises rather than producing residuals.
    """
    M = np.asarray(conj_matrix, dtype=complex)
    inv = np.max(np.abs(M @ np.conj(M) - np.eye(M.shape[0])))
    if inv > involution_tol:
        raise ValueError(
            f"conjugation matrix is not an involution: ||M conj(M) - I|| = {inv:.3e}"
        )
    out = np.empty(len(s_grid))
    for i, sv in enumerate(s_grid):
        Bs = B(float(sv))
        out[i] = np.max(np.abs(Bs @ M - M @ Bs.T))
    return out


def check_evolution_c_symmetry(
    B: TimeDependentOperator,
    conj_matrix: np.ndarray,
    s: float,
    t: float,
    rel_tol: float = 1e-10,
) -> float:
    """Max-abs of U M - M U^T for U = U(t, s); zero iff J U J = U*."""
    M = np.asarray(conj_matrix, dtype=complex)
    U = evolve(B, s, t, rel_tol).matrix
    return float(np.max(np.abs(U @ M - M @ U.T)))


@dataclass(frozen=True)
class BagchiParams:
    """Two-level non-Hermitian model: H(t) = nu I + i k(t) s3 + (l(t)/2)(s+ + s-).

    With s3 = diag(1, -1), s+ = [[0, 2], [0, 0]], s- = [[0, 0], [2, 0]] the
    matrix is complex symmetric for all t; the propagator solves
    i U' = H(t) U, i.e. B(t) = -i H(t).
    """

    nu: float
    kappa: Callable[[float], float]
    lam: Callable[[float], float]


def bagchi_hamiltonian(p: BagchiParams) -> TimeDependentOperator:
    def B(t: float) -> np.ndarray:
        k = p.kappa(t)
        l = p.lam(t)
        H = np.array(
            [[p.nu + 1j * k, l], [l, p.nu - 1j * k]],
            dtype=complex,
        )
        return -1j * H

    return TimeDependentOperator(dim=2, eval=B)
