"""
title : solver.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Callable, Literal, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
import logging

import numpy as np

from qkagome.core import (
    Complex,
    DEDUP_RADIUS,
    MULTISTART,
    NEWTON_MAX_ITER,
    NEWTON_STEP,
    NEWTON_TOL,
    SEED,
    SingularKernel,
)

from .families import PolyFamily
from .variables import (
    SpectralParams,
    branch_free,
    branch_xxz,
    dual_map,
    elementary_F_all,
    inverse_lift,
    lift,
)

__all__ = [
    "Solution",
    "SolutionSet",
    "newton",
    "jacobian",
    "solve_one_particle",
    "solve_system",
    "branch_tag",
]

logger = logging.getLogger(__name__)

Mode = Literal["u", "x-free"]

# solutions with a larger |u| are treated as escaped to infinity
U_BOUND = 1e3
BRANCH_TOL = 1e-8

# extra Newton steps taken after the residual first drops below tol
POLISH_ITER = 30
# a step shorter than STALL·(1 + |z|) ends the iteration
STALL = 1e-14

# roots whose Jacobian has condition number above ILL_CONDITIONED are merged
# within NEAR_SINGULAR_RADIUS instead of the dedup radius
ILL_CONDITIONED = 1e6
NEAR_SINGULAR_RADIUS = 1e-4
# rounding floor of the residual at an exact product of one-particle roots
SNAP_FLOOR = 1e-13


@dataclass(frozen=True)
class Solution:
    """One converged solution of the spectral equations.

    Parameters
    ----------
    u : tuple[complex, ...]
    X : tuple[complex, ...]
    Lambda : complex | None
        The eigenvalue u_1...u_N; None for x-free solutions, whose u are not
        tied to X
    residual : float
        max_n |F_n - P_n|
    branch : str
        'free', 'xxz' or 'other'

    """

    u: tuple[complex, ...]
    X: tuple[complex, ...]
    Lambda: complex | None
    residual: float
    branch: str

    def to_json(self) -> dict[str, Any]:
        out = {
            "u": [[z.real, z.imag] for z in self.u],
            "X": [[z.real, z.imag] for z in self.X],
            "residual": self.residual,
            "branch": self.branch,
        }
        if self.Lambda is not None:
            out["Lambda"] = [self.Lambda.real, self.Lambda.imag]
        return out


@dataclass
class SolutionSet:
    """Deduplicated solutions of one spectral system.

    Parameters
    ----------
    family : PolyFamily | None
        None for the one-particle equation
    N : int
    M : int
    q : float
    mode : str
    solutions : list[Solution]
    dedup : float
    starts : int
        Number of Newton starts tried
    converged : int
        Number of starts that converged, duplicates included

    """

    family: PolyFamily | None
    N: int
    M: int
    q: float
    mode: str
    solutions: list[Solution] = field(default_factory=list)
    dedup: float = DEDUP_RADIUS
    starts: int = 0
    converged: int = 0

    def __len__(self) -> int:
        return len(self.solutions)

    def eigenvalues(self) -> list[complex]:
        return [s.Lambda for s in self.solutions if s.Lambda is not None]

    def to_json(self) -> dict[str, Any]:
        return {
            "family": None if self.family is None else self.family.to_json(),
            "N": self.N,
            "M": self.M,
            "q": self.q,
            "mode": self.mode,
            "dedup": self.dedup,
            "starts": self.starts,
            "converged": self.converged,
            "solutions": [s.to_json() for s in self.solutions],
        }


def newton(
    fun: Callable[[np.ndarray], np.ndarray],
    z0: np.ndarray,
    tol: float = NEWTON_TOL,
    max_iter: int = NEWTON_MAX_ITER,
    step: float = NEWTON_STEP,
) -> tuple[np.ndarray, float, bool]:
    """Damped Newton iteration for a holomorphic map C^N -> C^N.

    The Jacobian is taken by central differences along each coordinate;
    steps are halved while they increase the residual. Once the residual
    is below tol the iteration goes on polishing until a step no longer
    lowers it. Near a singular root Newton only converges linearly, so the
    polishing steps also try the doubled step.

    Returns
    -------
    tuple[np.ndarray, float, bool]
        (final point, max-norm residual, converged)

    """

    z = np.asarray(z0, dtype=complex).copy()
    r = fun(z)
    res = float(np.max(np.abs(r)))

    polishing = 0
    for _ in range(max_iter + POLISH_ITER):
        if res <= tol:
            polishing += 1
            if polishing > POLISH_ITER or res == 0.0:
                break

        dz = np.linalg.lstsq(jacobian(fun, z, step), -r, rcond=None)[0]
        if np.max(np.abs(dz)) <= STALL * (1.0 + np.max(np.abs(z))):
            break

        if polishing:
            best = None
            for t in (1.0, 2.0):
                r_trial = _evaluate(fun, z + t * dz)
                if r_trial is None:
                    continue
                res_trial = float(np.max(np.abs(r_trial)))
                if res_trial < res and (best is None or res_trial < best[2]):
                    best = (z + t * dz, r_trial, res_trial)
            if best is None:
                break
            z, r, res = best
            continue

        t = 1.0
        for _halving in range(20):
            r_trial = _evaluate(fun, z + t * dz)
            if r_trial is not None:
                res_trial = float(np.max(np.abs(r_trial)))
                if res_trial < res or t < 1e-3:
                    z, r, res = z + t * dz, r_trial, res_trial
                    break
            t *= 0.5
        else:
            break

    return z, res, res <= tol


def jacobian(
    fun: Callable[[np.ndarray], np.ndarray], z: np.ndarray, step: float = NEWTON_STEP
) -> np.ndarray:
    """Central-difference Jacobian of fun at z."""

    z = np.asarray(z, dtype=complex)
    columns = []
    for k in range(len(z)):
        e = np.zeros(len(z), dtype=complex)
        e[k] = step
        columns.append((fun(z + e) - fun(z - e)) / (2 * step))
    return np.stack(columns, axis=1)


def _evaluate(fun: Callable[[np.ndarray], np.ndarray], z: np.ndarray) -> np.ndarray | None:
    try:
        r = fun(z)
    except (ZeroDivisionError, FloatingPointError, SingularKernel):
        return None
    return r if np.all(np.isfinite(r)) else None


def branch_tag(params: Sequence[SpectralParams], X: Sequence[Complex]) -> str:
    """Name the branch X belongs to: 'free', 'xxz' or 'other'."""

    X = np.asarray(X, dtype=complex)
    if np.max(np.abs(X - 1.0)) <= BRANCH_TOL:
        return "free"
    if np.max(np.abs(X - np.asarray(branch_xxz(params)))) <= BRANCH_TOL:
        return "xxz"
    return "other"


def solve_one_particle(M: int, q: float) -> SolutionSet:
    """All M + 1 roots of u^(M+1) + q u^M - q u - 1 = 0.

    Roots come from the companion matrix and are not deduplicated.

    Parameters
    ----------
    M : int
    q : float

    Returns
    -------
    SolutionSet

    """

    if M < 1:
        raise ValueError(f"Cannot solve the one-particle equation for M={M}<1.")

    coeffs = np.zeros(M + 2, dtype=float)
    coeffs[0] += 1.0
    coeffs[1] += q
    coeffs[M] -= q
    coeffs[M + 1] -= 1.0
    roots = np.roots(coeffs)

    solutions = []
    for u in sorted(roots, key=_angle_key):
        p = lift(u, q, M)
        solutions.append(
            Solution((complex(u),), (p.X,), complex(u), float(abs(p.X - 1.0)), "free")
        )

    logger.info("One-particle equation (M=%d, q=%g): %d roots.", M, q, len(solutions))
    return SolutionSet(None, 1, M, q, "u", solutions, starts=1, converged=len(solutions))


def _angle_key(z: Complex) -> tuple[float, float]:
    return (round(float(np.angle(z)), 9), round(abs(z), 9))


def _same_up_to_permutation(a: Sequence[Complex], b: Sequence[Complex], radius: float) -> bool:
    a = np.asarray(a)
    return any(
        np.max(np.abs(a - np.asarray(perm))) <= radius for perm in permutations(b)
    )


def solve_system(
    N: int,
    M: int,
    q: float,
    family: PolyFamily,
    mode: Mode = "u",
    starts: int = MULTISTART,
    seed: int = SEED,
    dedup: float = DEDUP_RADIUS,
    tol: float = NEWTON_TOL,
    jobs: int = 1,
) -> SolutionSet:
    """Solve F_n = P_n, n = 1..N, by multistart Newton.

    In mode 'u' the unknowns are u_1..u_N with x and X tied to u. In mode
    'x-free' a random set of x is fixed and the X_1..X_N are the unknowns;
    the solution set is then closed under the dual map.

    Parameters
    ----------
    N : int
    M : int
    q : float
    family : PolyFamily
        Evaluated at family.q when set, else at q
    mode : Literal['u', 'x-free'] = 'u'
    starts : int = MULTISTART
    seed : int = SEED
    dedup : float = DEDUP_RADIUS
    tol : float = NEWTON_TOL
    jobs : int = 1
        Number of Newton starts run concurrently

    Returns
    -------
    SolutionSet

    Raises
    ------
    ValueError
        If N does not match the family or the mode is unknown

    """

    if family.N != N:
        raise ValueError(f"Family {family.kind} is built for N={family.N}, not N={N}.")
    if mode not in ("u", "x-free"):
        raise ValueError(f"Unknown solve mode={mode}.")

    P = family.values(q if family.q is None else family.q)[1:]
    rng = np.random.default_rng(seed)

    if mode == "u":
        if N == 1 and family.q in (None, q):
            out = solve_one_particle(M, q)
            out.family = family
            return out
        result = _solve_u(N, M, q, P, starts, rng, dedup, tol, jobs)
    else:
        result = _solve_x_free(N, M, q, P, starts, rng, dedup, tol, jobs)

    result.family = family
    logger.info(
        "Spectral system N=%d M=%d q=%g (%s, %s): %d solutions from %d/%d converged starts.",
        N,
        M,
        q,
        family.kind,
        mode,
        len(result),
        result.converged,
        result.starts,
    )
    if result.converged < result.starts:
        logger.warning("%d Newton starts did not converge.", result.starts - result.converged)
    return result


def _run_starts(fun, seeds: list[np.ndarray], tol: float, jobs: int) -> list[tuple]:
    def run(z0: np.ndarray) -> tuple:
        try:
            return newton(fun, z0, tol)
        except (ZeroDivisionError, SingularKernel, np.linalg.LinAlgError):
            return z0, np.inf, False

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, seeds))
    return [run(z0) for z0 in seeds]


def _solve_u(
    N: int,
    M: int,
    q: float,
    P: np.ndarray,
    starts: int,
    rng: np.random.Generator,
    dedup: float,
    tol: float,
    jobs: int,
) -> SolutionSet:
    def fun(u: np.ndarray) -> np.ndarray:
        params = [lift(v, q, M) for v in u]
        return elementary_F_all(params) - P

    roots = [s.u[0] for s in solve_one_particle(M, q).solutions]
    seeds: list[np.ndarray] = []
    for chosen in combinations(roots, N):
        seeds.append(np.array(chosen, dtype=complex))
        seeds.append(np.array(chosen, dtype=complex) * np.exp(0.05j * rng.normal(size=N)))
    seeds.extend(_xxz_seeds(N, M, q, roots, rng, dedup, tol))
    while len(seeds) < starts:
        seeds.append(np.exp(2j * np.pi * rng.random(N)))
    seeds = seeds[:starts]

    kept: list[tuple[np.ndarray, float, float]] = []
    converged = 0
    for u, res, ok in _run_starts(fun, seeds, tol, jobs):
        if not ok:
            continue
        converged += 1
        if np.max(np.abs(u)) > U_BOUND or _min_gap(u) <= dedup:
            continue
        radius = _merge_radius(fun, u, dedup)
        if radius > dedup:
            u, res = _snap(fun, u, res, roots, radius)
        for i, (v, res_v, radius_v) in enumerate(kept):
            if _same_up_to_permutation(u, v, max(radius, radius_v)):
                if res < res_v:
                    kept[i] = (u, res, max(radius, radius_v))
                break
        else:
            kept.append((u, res, radius))

    solutions: list[Solution] = []
    for u, res, _ in kept:
        params = [lift(v, q, M) for v in u]
        X = tuple(p.X for p in params)
        solutions.append(
            Solution(
                tuple(complex(v) for v in u),
                X,
                complex(np.prod(u)),
                float(res),
                branch_tag(params, X),
            )
        )

    solutions.sort(key=lambda s: (_angle_key(s.Lambda), [_angle_key(v) for v in s.u]))
    return SolutionSet(None, N, M, q, "u", solutions, dedup, len(seeds), converged)


def _xxz_seeds(
    N: int,
    M: int,
    q: float,
    roots: Sequence[complex],
    rng: np.random.Generator,
    dedup: float,
    tol: float,
) -> list[np.ndarray]:
    """Points u on the branch X_i = Π_{j != i} S_ji / S_ij.

    The branch equations are solved for u from every combination of
    one-particle roots, slightly perturbed so no two x coincide.
    """

    def bethe(u: np.ndarray) -> np.ndarray:
        params = [lift(v, q, M) for v in u]
        return np.asarray([p.X for p in params]) - np.asarray(branch_xxz(params))

    starts = [
        np.array(chosen, dtype=complex) * np.exp(0.05j * rng.normal(size=N))
        for chosen in combinations(roots, N)
    ]
    found: list[np.ndarray] = []
    for u, _, ok in _run_starts(bethe, starts, tol, 1):
        if not ok or np.max(np.abs(u)) > U_BOUND or _min_gap(u) <= dedup:
            continue
        if not any(_same_up_to_permutation(u, v, dedup) for v in found):
            found.append(u)
    logger.debug("Branch X_i = Π S_ji / S_ij: %d seeds for N=%d.", len(found), N)
    return found


def _merge_radius(fun: Callable[[np.ndarray], np.ndarray], u: np.ndarray, dedup: float) -> float:
    """Radius within which another root counts as the same one.

    Near a singular root the Newton iterates stall far from the root, so
    distinct starts land on distinct points around it.
    """

    try:
        sv = np.linalg.svd(jacobian(fun, u), compute_uv=False)
    except (ZeroDivisionError, SingularKernel, np.linalg.LinAlgError):
        return NEAR_SINGULAR_RADIUS
    if sv[-1] == 0 or sv[0] / sv[-1] > ILL_CONDITIONED:
        return NEAR_SINGULAR_RADIUS
    return dedup


def _snap(
    fun: Callable[[np.ndarray], np.ndarray],
    u: np.ndarray,
    res: float,
    roots: Sequence[complex],
    radius: float,
) -> tuple[np.ndarray, float]:
    """Move a near-singular root onto the nearest product of one-particle roots.

    The two branches of the spectral equations cross on the free branch,
    where every u_i is a one-particle root known to machine precision. The
    move is kept only if the residual stays below max(res, SNAP_FLOOR).
    """

    nearest = np.array([min(roots, key=lambda r: abs(r - v)) for v in u], dtype=complex)
    if np.max(np.abs(nearest - u)) > radius or _min_gap(nearest) == 0:
        return u, res
    r = _evaluate(fun, nearest)
    if r is None:
        return u, res
    res_nearest = float(np.max(np.abs(r)))
    if res_nearest > max(res, SNAP_FLOOR):
        return u, res
    return nearest, res_nearest


def _solve_x_free(
    N: int,
    M: int,
    q: float,
    P: np.ndarray,
    starts: int,
    rng: np.random.Generator,
    dedup: float,
    tol: float,
    jobs: int,
) -> SolutionSet:
    xs = np.exp(2j * np.pi * rng.random(N)) * (0.5 + rng.random(N))
    us = [inverse_lift(x, q) for x in xs]
    params = [lift(u, q, M) for u in us]

    def fun(X: np.ndarray) -> np.ndarray:
        return elementary_F_all(params, X) - P

    seeds = [np.asarray(branch_free(params)), np.asarray(branch_xxz(params))]
    while len(seeds) < starts:
        seeds.append(np.exp(2j * np.pi * rng.random(N)) * (0.5 + rng.random(N)))
    seeds = seeds[:starts]

    found: list[np.ndarray] = []
    converged = 0
    for X, res, ok in _run_starts(fun, seeds, tol, jobs):
        if not ok:
            continue
        converged += 1
        if not any(np.max(np.abs(X - Y)) <= dedup for Y in found):
            found.append(X)

    # close under the dual map
    for X in list(found):
        try:
            image = np.asarray(dual_map(params, X))
        except ZeroDivisionError:
            continue
        image, _, ok = newton(fun, image, tol)
        if ok and not any(np.max(np.abs(image - Y)) <= dedup for Y in found):
            found.append(image)

    solutions = []
    for X in found:
        res = float(np.max(np.abs(fun(X))))
        solutions.append(
            Solution(
                tuple(complex(u) for u in us),
                tuple(complex(v) for v in X),
                None,
                res,
                branch_tag(params, X),
            )
        )
    solutions.sort(key=lambda s: [_angle_key(v) for v in s.X])
    return SolutionSet(None, N, M, q, "x-free", solutions, dedup, len(seeds), converged)


def _min_gap(u: np.ndarray) -> float:
    if len(u) < 2:
        return np.inf
    return float(min(abs(a - b) for a, b in combinations(u, 2)))
