"""
title : appendix.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Any, Sequence
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
import logging

import numpy as np
import scipy.linalg as sla

from qkagome.core import Complex, SingularKernel
from qkagome.evolution import EvolutionBlock, build_evolution
from qkagome.lattice import (
    DeltaSchedule,
    Geometry,
    GeometryClass,
    ModeId,
    TorusConfig,
    Vertex,
    cyclic_reanchor,
    delta_schedule,
)
from qkagome.qfock import ModelParams, Occupation, SectorCharge, StateVec, apply_raise
from qkagome.spectral import kernel_S_u

from .one_particle import one_particle_coefficient, pair_term

__all__ = [
    "MAX_PARTICLES",
    "Assignment",
    "AnsatzCoefficients",
    "AnsatzClosure",
    "AppendixSystem",
    "build_appendix_system",
    "solve_coefficients",
]

logger = logging.getLogger(__name__)

MAX_PARTICLES = 4

# singular values below RANK_TOL·s_max count as zero
RANK_TOL = 1e-9

# an assignment whose |C| falls below this fraction of max |C| is dropped
C_FLOOR = 1e-12

# closure singular values below this count as eigenvectors
CLOSURE_NULL_TOL = 1e-8


@dataclass(frozen=True)
class Assignment:
    """A distribution of the spectral parameters over the particle positions.

    Parameters
    ----------
    perm : tuple[int, ...]
        Position i carries u[perm[i]]
    u : tuple[complex, ...]
        The parameter at every position, u[i] = u_list[perm[i]]

    """

    perm: tuple[int, ...]
    u: tuple[complex, ...]

    @staticmethod
    def of(perm: Sequence[int], u_list: Sequence[Complex]) -> Assignment:
        perm = tuple(perm)
        return Assignment(perm, tuple(complex(u_list[i]) for i in perm))

    def swap(self, a: int, b: int) -> tuple[int, ...]:
        perm = list(self.perm)
        perm[a], perm[b] = perm[b], perm[a]
        return tuple(perm)

    def grid(self, geom: Geometry) -> dict[tuple[int, int], complex]:
        """The arrangement as a map from chart coordinates to parameters."""
        return {geom.chart[i]: self.u[i] for i in range(len(self.u))}


@dataclass
class AnsatzClosure:
    """The ansatz as a subspace of sector (N, N) and the action of U - Λ on it.

    Every term of the expansion of Σ_perm Π_j A+(v_j, u_perm(j)) |0> is
    labelled by its assignment, the state of every factor (impurity or
    photon pair at shift 1..M) and the chain segment that state falls in.
    Terms sharing a label form one plane wave in the shifts with a free
    amplitude; for factors anchored at one vertex the label also records
    which pair runs ahead. Occupations in which two factors raise modes on
    a common vertex are collisions and carry an amplitude of their own.

    Parameters
    ----------
    support : tuple[Occupation, ...]
        Occupations reached by the expansion, in block basis order
    keys : list[tuple]
        ('R', perm, segments, order) for a plane wave, ('J', occupation)
        for a collision
    raw : np.ndarray
        Amplitude of every unknown on the support
    basis : np.ndarray
        Orthonormal basis of the column span of raw
    image : np.ndarray
        (U - Λ) applied to basis, in the full block basis
    Lambda : complex

    """

    support: tuple[Occupation, ...]
    keys: list[tuple]
    raw: np.ndarray
    basis: np.ndarray
    image: np.ndarray
    Lambda: complex

    @property
    def collisions(self) -> int:
        return sum(1 for key in self.keys if key[0] == "J")


@dataclass
class AnsatzCoefficients:
    """Solved amplitudes of the multi-particle ansatz.

    Parameters
    ----------
    C : dict[tuple[int, ...], complex]
        Weight of every assignment, normalised so the identity has weight 1
    g_tables : dict[tuple[int, tuple[int, ...]], list[complex]]
        For (position, assignment) the constant g value of every chain
        segment, first and last segments included
    schedules : list[DeltaSchedule]
        Chain schedule of every position
    deficiency : int
        Null directions beyond the gauge
    state : StateVec | None
        The unit-norm eigenstate solved on the ansatz closure, if any
    closure_residual : float | None
        ‖(U - Λ) state‖
    closure_nullity : int
        Number of closure singular values below CLOSURE_NULL_TOL

    """

    C: dict[tuple[int, ...], complex]
    g_tables: dict[tuple[int, tuple[int, ...]], list[complex]]
    schedules: list[DeltaSchedule]
    deficiency: int = 0
    state: StateVec | None = None
    closure_residual: float | None = None
    closure_nullity: int = 0

    def g(self, position: int, perm: tuple[int, ...], delta: int) -> complex:
        """g at shift delta (1..M) of the chain anchored at position."""
        segment = self.schedules[position].segment(delta)
        return self.g_tables[(position, perm)][segment]

    def to_json(self) -> dict[str, Any]:
        out = {
            "C": [
                {"perm": list(p), "value": [c.real, c.imag]} for p, c in sorted(self.C.items())
            ],
            "deficiency": self.deficiency,
        }
        if self.closure_residual is not None:
            out["closure_residual"] = self.closure_residual
            out["closure_nullity"] = self.closure_nullity
        return out


@dataclass
class AppendixSystem:
    """The linear and residual equations of the multi-particle ansatz.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    geom : Geometry
    u_list : tuple[complex, ...]
    assignments : dict[tuple[int, ...], Assignment]
    schedules : list[DeltaSchedule]
        Schedule of the chain anchored at every position
    columns : dict[tuple, int]
        ('C', perm) and ('h', perm, position, segment) to column index
    matrix : np.ndarray
        First-type equations, each row scaled by the summed modulus of its terms
    labels : list[tuple]
        (perm, position, break) for every row
    pairs : list[tuple[int, int, int, int]]
        Second-type equations as (a, b, delta, delta')
    closure : AnsatzClosure | None
        Present when the block of sector (N, N) was available

    """

    cfg: TorusConfig
    params: ModelParams
    geom: Geometry
    u_list: tuple[complex, ...]
    assignments: dict[tuple[int, ...], Assignment]
    schedules: list[DeltaSchedule]
    columns: dict[tuple, int]
    matrix: np.ndarray
    labels: list[tuple] = field(default_factory=list)
    pairs: list[tuple[int, int, int, int]] = field(default_factory=list)
    closure: AnsatzClosure | None = None

    @property
    def N(self) -> int:
        return len(self.u_list)

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(range(self.N))


def _chain_ends(u: complex, params: ModelParams, M: int) -> tuple[complex, complex]:
    return one_particle_coefficient(u, params.q, M)


def _h(
    system_columns: dict[tuple, int],
    perm: tuple[int, ...],
    position: int,
    segment: int,
    breaks: int,
    u0: complex,
    params: ModelParams,
    M: int,
) -> dict[int, complex]:
    """The chain value C·g on one segment as a combination of unknowns."""

    first, last = _chain_ends(u0, params, M)
    c = system_columns[("C", perm)]
    if segment == 0:
        return {c: first}
    if segment == breaks:
        return {c: last}
    return {system_columns[("h", perm, position, segment)]: 1.0}


def build_appendix_system(
    cfg: TorusConfig,
    params: ModelParams,
    geom: Geometry,
    u_list: Sequence[Complex],
    block: EvolutionBlock | None = None,
) -> AppendixSystem:
    """Assemble the chain equations of the ansatz for all assignments and anchors.

    For every assignment and every anchoring position the chain of segment
    values runs from (1 + q u0) / (1 - q^2) to (q + u0) u0^M / (1 - q^2),
    where u0 is the anchor's parameter; at each break the new value is
    S(u_k, u0) times the old one minus the exchanged chain of the assignment
    with u0 and u_k swapped. The pair equations between positions that
    differ in both coordinates are recorded for residual evaluation.

    A lone particle closes its chain on itself. Particles anchored at one
    vertex have no breaks; their conditions come from the closure alone,
    so for them the block is built here when none is given.

    Parameters
    ----------
    cfg : TorusConfig
    params : ModelParams
    geom : Geometry
        LINE, GRID or COINCIDENT
    u_list : Sequence[complex]
        Pairwise distinct, one per position
    block : EvolutionBlock | None = None
        The block of sector (N, N); when given the ansatz closure is built

    Returns
    -------
    AppendixSystem

    Raises
    ------
    ValueError
        If the geometry is GENERIC, sizes disagree, N exceeds MAX_PARTICLES
        or block belongs to another sector
    DegenerateSchedule
        If some anchoring has equal horizontal and vertical differences
    SingularKernel
        If two parameters coincide

    """

    u_list = tuple(complex(u) for u in u_list)
    N = len(u_list)
    if N != geom.N:
        raise ValueError(f"Got {N} spectral parameters for {geom.N} positions.")
    if N < 1 or N > MAX_PARTICLES:
        raise ValueError(f"Cannot build the ansatz for N={N} outside [1, {MAX_PARTICLES}].")
    if geom.classification.kind is GeometryClass.GENERIC:
        raise ValueError("Cannot build the ansatz for a generic geometry.")
    for i in range(N):
        for j in range(i + 1, N):
            if u_list[i] == u_list[j]:
                raise SingularKernel(f"Kernel S is singular at coincident u={u_list[i]}.")

    M, q = cfg.M, params.q
    schedules = [delta_schedule(cyclic_reanchor(geom, cfg, j), cfg) for j in range(N)]
    assignments = {p: Assignment.of(p, u_list) for p in permutations(range(N))}

    columns: dict[tuple, int] = {}
    for p in assignments:
        columns[("C", p)] = len(columns)
    for p in assignments:
        for j, sched in enumerate(schedules):
            for s in range(1, len(sched)):
                columns[("h", p, j, s)] = len(columns)

    rows: list[np.ndarray] = []
    weights: list[float] = []
    labels: list[tuple] = []
    for p, asg in assignments.items():
        for j, sched in enumerate(schedules):
            B = len(sched)
            u0 = asg.u[j]
            if B == 0:
                if N > 1:
                    continue
                row = np.zeros(len(columns), dtype=complex)
                first, last = _chain_ends(u0, params, M)
                row[columns[("C", p)]] = first - last
                rows.append(row)
                weights.append(abs(first) + abs(last))
                labels.append((p, j, 0))
                continue

            for k in range(1, B + 1):
                slot = sched.slots[k - 1]
                delta = sched.deltas[k - 1]
                uk = asg.u[slot]
                swapped = asg.swap(j, slot)
                S = kernel_S_u(uk, u0, q)
                coef = (uk / u0) ** (-delta) * (q + u0) * (1 + q * u0) / (q * (u0 - uk))

                row = np.zeros(len(columns), dtype=complex)
                weight = 0.0
                for col, val in _h(columns, p, j, k, B, u0, params, M).items():
                    row[col] += val
                    weight += abs(val)
                for col, val in _h(columns, p, j, k - 1, B, u0, params, M).items():
                    row[col] -= S * val
                    weight += abs(S * val)
                for col, val in _h(columns, swapped, j, k - 1, B, uk, params, M).items():
                    row[col] += coef * val
                    weight += abs(coef * val)
                rows.append(row)
                weights.append(weight)
                labels.append((p, j, k))

    # each row is divided by the summed modulus of its contributions
    matrix = np.array(rows, dtype=complex).reshape(len(rows), len(columns))
    scale = np.asarray(weights, dtype=float)[:, None]
    scale[scale == 0] = 1.0
    matrix = matrix / scale

    pairs: list[tuple[int, int, int, int]] = []
    for a in range(N):
        chart = cyclic_reanchor(geom, cfg, a).chart
        na, ma = chart[a]
        for b in range(N):
            nb, mb = chart[b]
            if b == a or nb == na or mb == ma:
                continue
            pairs.append((a, b, mb - ma, na - nb + M))
            pairs.append((a, b, nb - na, ma - mb + M))

    if block is None and geom.classification.kind is GeometryClass.COINCIDENT and N > 1:
        block = build_evolution(cfg, params, SectorCharge(N, N))
    closure = None
    if block is not None:
        closure = _closure(cfg, params, geom, assignments, schedules, block)

    logger.info(
        "Ansatz system for %s, N=%d: %d equations, %d unknowns, %d pair equations.",
        geom.classification,
        N,
        matrix.shape[0],
        matrix.shape[1],
        len(pairs),
    )
    return AppendixSystem(
        cfg, params, geom, u_list, assignments, schedules, columns, matrix, labels, pairs, closure
    )


def _factor_modes(cfg: TorusConfig, v: Vertex, state: int) -> tuple[ModeId, ...]:
    """Modes raised by one factor A+(v): the impurity for state 0, else the pair at that shift."""
    if state == 0:
        return (ModeId(2, v),)
    return pair_term(v, state, cfg)


def _shared_anchors(geom: Geometry) -> list[tuple[int, ...]]:
    groups: dict[Vertex, list[int]] = {}
    for j, v in enumerate(geom.positions):
        groups.setdefault(v, []).append(j)
    return [tuple(g) for g in groups.values() if len(g) > 1]


def _meet(factors: Sequence[tuple[ModeId, ...]]) -> bool:
    touched = [{m.vertex for m in modes} for modes in factors]
    return any(a & b for a, b in combinations(touched, 2))


def _closure(
    cfg: TorusConfig,
    params: ModelParams,
    geom: Geometry,
    assignments: dict[tuple[int, ...], Assignment],
    schedules: list[DeltaSchedule],
    block: EvolutionBlock,
) -> AnsatzClosure:
    N = geom.N
    if tuple(block.charge) != (N, N):
        raise ValueError(f"Block of sector {tuple(block.charge)} cannot hold N={N} particles.")

    groups = _shared_anchors(geom)
    Lambda = complex(np.prod(next(iter(assignments.values())).u))

    terms: list[tuple[tuple, Occupation, complex]] = []
    collided: set[Occupation] = set()
    for p, asg in assignments.items():
        for states in product(range(cfg.M + 1), repeat=N):
            factors = [_factor_modes(cfg, v, s) for v, s in zip(geom.positions, states)]
            vec = StateVec.vacuum()
            for modes in factors:
                for m in modes:
                    vec = apply_raise(m, vec, params)
            [(occ, amp)] = vec.items()
            if _meet(factors):
                collided.add(occ)
                continue

            wave = amp * np.prod([asg.u[j] ** (-s) for j, s in enumerate(states)])
            segments = tuple(
                0 if s == 0 else 1 + schedules[j].segment(s) for j, s in enumerate(states)
            )
            order = tuple(tuple(sorted(g, key=lambda j: states[j])) for g in groups)
            terms.append((("R", p, segments, order), occ, complex(wave)))

    support = sorted(
        {occ for _, occ, _ in terms} | collided, key=lambda occ: block.basis.index[occ]
    )
    row = {occ: i for i, occ in enumerate(support)}

    keys: dict[tuple, int] = {}
    entries: list[tuple[int, int, complex]] = []
    for key, occ, wave in terms:
        if occ not in collided:
            entries.append((row[occ], keys.setdefault(key, len(keys)), wave))
    for occ in support:
        if occ in collided:
            entries.append((row[occ], keys.setdefault(("J", occ), len(keys)), 1.0 + 0j))

    raw = np.zeros((len(support), len(keys)), dtype=complex)
    for i, j, wave in entries:
        raw[i, j] += wave

    basis = sla.orth(raw, rcond=RANK_TOL)
    idx = [block.basis.index[occ] for occ in support]
    image = block.matrix[:, idx] @ basis
    image[idx, :] -= Lambda * basis

    logger.info(
        "Ansatz closure: %d occupations, %d plane waves, %d collisions, rank %d.",
        len(support),
        len(keys) - len(collided),
        len(collided),
        basis.shape[1],
    )
    return AnsatzClosure(tuple(support), list(keys), raw, basis, image, Lambda)


def solve_coefficients(system: AppendixSystem) -> tuple[AnsatzCoefficients, np.ndarray]:
    """Solve the chain equations with C(identity) = 1, then the closure.

    The closure eigenstate is the right singular vector of (U - Λ) on the
    ansatz subspace with the smallest singular value; that value is the
    eigen residual of the state.

    Parameters
    ----------
    system : AppendixSystem

    Returns
    -------
    tuple[AnsatzCoefficients, np.ndarray]
        The coefficients and the consistency conditions: the moduli of the
        chain residuals, the scaled pair-equation residuals and, with a
        closure, its smallest singular value. All vanish when the
        parameters solve the spectral equations.

    """

    A = system.matrix
    gauge = system.columns[("C", system.identity)]
    rest = [i for i in range(A.shape[1]) if i != gauge]

    solution = np.zeros(A.shape[1], dtype=complex)
    solution[gauge] = 1.0
    deficiency = 0
    if A.shape[0] > 0 and rest:
        A_rest = A[:, rest]
        solution[rest] = sla.lstsq(A_rest, -A[:, gauge])[0]
        sv = sla.svdvals(A_rest)
        rank = int(np.sum(sv > RANK_TOL * sv[0])) if sv.size and sv[0] > 0 else 0
        deficiency = A_rest.shape[1] - rank
    chain_residual = np.abs(A @ solution)

    if deficiency > 0:
        logger.warning(
            "Ansatz system has %d null directions beyond the gauge; "
            "using the minimum-norm coefficients.",
            deficiency,
        )

    coeffs = _coefficients(system, solution, deficiency)
    conditions = [chain_residual, _pair_residuals(system, coeffs)]
    if system.closure is not None:
        _solve_closure(system, coeffs)
        conditions.append(np.array([coeffs.closure_residual]))
    return coeffs, np.concatenate(conditions)


def _solve_closure(system: AppendixSystem, coeffs: AnsatzCoefficients) -> None:
    closure = system.closure
    _, sv, vh = sla.svd(closure.image, full_matrices=False)
    amplitudes = closure.basis @ vh[-1].conj()
    peak = amplitudes[np.argmax(np.abs(amplitudes))]
    amplitudes = amplitudes * (abs(peak) / peak)

    coeffs.state = StateVec(dict(zip(closure.support, amplitudes))).pruned()
    coeffs.closure_residual = float(sv[-1])
    coeffs.closure_nullity = int(np.sum(sv <= CLOSURE_NULL_TOL))
    if coeffs.closure_nullity > 1:
        logger.warning(
            "Ansatz closure holds %d eigenvectors at Λ=%s; keeping one.",
            coeffs.closure_nullity,
            closure.Lambda,
        )
    if system.matrix.shape[0] == 0:
        coeffs.C = _closure_weights(system, amplitudes)


def _closure_weights(system: AppendixSystem, amplitudes: np.ndarray) -> dict[tuple[int, ...], complex]:
    """Assignment weights read off the all-pairs plane waves of the closure state."""

    closure = system.closure
    y = sla.lstsq(closure.raw, amplitudes)[0]
    order = tuple(_shared_anchors(system.geom))
    segments = (1,) * system.N
    index = {key: i for i, key in enumerate(closure.keys)}

    weights = {}
    for p in system.assignments:
        i = index.get(("R", p, segments, order))
        weights[p] = complex(y[i]) if i is not None else 0j
    ref = weights[system.identity]
    if ref == 0:
        return weights
    return {p: w / ref for p, w in weights.items()}


def _coefficients(
    system: AppendixSystem, solution: np.ndarray, deficiency: int
) -> AnsatzCoefficients:
    M = system.cfg.M
    C = {p: complex(solution[system.columns[("C", p)]]) for p in system.assignments}

    g_tables = {}
    for p, asg in system.assignments.items():
        c = C[p]
        for j, sched in enumerate(system.schedules):
            B = len(sched)
            first, last = _chain_ends(asg.u[j], system.params, M)
            if B == 0:
                g_tables[(j, p)] = [first]
                continue
            interior = [
                solution[system.columns[("h", p, j, s)]] / c if c != 0 else np.nan
                for s in range(1, B)
            ]
            g_tables[(j, p)] = [first, *interior, last]

    return AnsatzCoefficients(C, g_tables, system.schedules, deficiency)


def _pair_residuals(system: AppendixSystem, coeffs: AnsatzCoefficients) -> np.ndarray:
    out = []
    for p, asg in system.assignments.items():
        for a, b, d, d2 in system.pairs:
            swapped = asg.swap(a, b)
            ua, ub = asg.u[a], asg.u[b]
            t1 = coeffs.C[p] * coeffs.g(a, p, d) * coeffs.g(b, p, d2) * ua ** (-d) * ub ** (-d2)
            t2 = (
                coeffs.C[swapped]
                * coeffs.g(a, swapped, d)
                * coeffs.g(b, swapped, d2)
                * ub ** (-d)
                * ua ** (-d2)
            )
            scale = max(abs(t1), abs(t2), 1e-300)
            out.append(abs(t1 + t2) / scale if np.isfinite(t1 + t2) else np.inf)
    return np.asarray(out, dtype=float)
