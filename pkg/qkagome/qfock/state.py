"""
title : state.py
create : @tarickali 26/10/17
update : @tarickali 26/10/17
"""

from __future__ import annotations
from typing import Iterator, Mapping, TYPE_CHECKING
from dataclasses import dataclass

import numpy as np

from qkagome.core import Number, PRUNE_TOL, SupportError
from qkagome.lattice import ModeId

if TYPE_CHECKING:
    from .sector import SectorBasis

__all__ = ["Occupation", "StateVec", "inner", "mode_order"]


def mode_order(mode: ModeId) -> tuple[int, int, int]:
    """Sort key of the canonical mode order (family, l, k)."""
    return (mode.family, mode.vertex.l, mode.vertex.k)


@dataclass(frozen=True)
class Occupation:
    """A Fock basis state: occupation numbers of finitely many modes.

    Only strictly positive counts are stored, sorted in the canonical mode
    order, so equal occupations compare and hash equal.

    """

    counts: tuple[tuple[ModeId, int], ...] = ()

    @staticmethod
    def of(mapping: Mapping[ModeId, int]) -> Occupation:
        """Create the canonical Occupation from a mode -> count mapping.

        Raises
        ------
        ValueError
            If a count is negative

        """

        items = []
        for mode, n in mapping.items():
            if n < 0:
                raise ValueError(f"Cannot occupy mode={mode} with n={n}<0 quanta.")
            if n > 0:
                items.append((ModeId(*mode), int(n)))
        items.sort(key=lambda item: mode_order(item[0]))
        return Occupation(tuple(items))

    @staticmethod
    def vacuum() -> Occupation:
        return Occupation()

    def get(self, mode: ModeId) -> int:
        for m, n in self.counts:
            if m == mode:
                return n
        return 0

    def with_count(self, mode: ModeId, n: int) -> Occupation:
        mapping = dict(self.counts)
        mapping[mode] = n
        return Occupation.of(mapping)

    def modes(self) -> list[ModeId]:
        return [m for m, _ in self.counts]

    def total(self, family: int) -> int:
        return sum(n for m, n in self.counts if m.family == family)

    def is_vacuum(self) -> bool:
        return len(self.counts) == 0

    def to_json(self) -> dict[str, int]:
        return {m.key(): n for m, n in self.counts}

    @staticmethod
    def from_json(payload: Mapping[str, int]) -> Occupation:
        return Occupation.of({ModeId.parse(key): n for key, n in payload.items()})

    def __str__(self) -> str:
        body = "; ".join(f"{n}@{m.key()}" for m, n in self.counts)
        return f"|{body or '0'}>"


class StateVec:
    """A sparse vector over the orthonormal occupation basis.

    Parameters
    ----------
    amplitudes : Mapping[Occupation, complex] = {}

    Note
    ----
    StateVec values are treated as immutable; every operation returns a new
    vector.

    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes: Mapping[Occupation, Number] = None) -> None:
        self.amplitudes: dict[Occupation, complex] = {}
        if amplitudes is not None:
            for occ, amp in amplitudes.items():
                if amp != 0:
                    self.amplitudes[occ] = complex(amp)

    @staticmethod
    def basis(occ: Occupation, amp: Number = 1.0) -> StateVec:
        return StateVec({occ: amp})

    @staticmethod
    def vacuum() -> StateVec:
        return StateVec({Occupation.vacuum(): 1.0})

    @staticmethod
    def zero() -> StateVec:
        return StateVec()

    def get(self, occ: Occupation) -> complex:
        return self.amplitudes.get(occ, 0j)

    def items(self) -> Iterator[tuple[Occupation, complex]]:
        return iter(self.amplitudes.items())

    def support(self) -> list[Occupation]:
        return list(self.amplitudes)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values())))

    def pruned(self, tol: float = PRUNE_TOL) -> StateVec:
        return StateVec({o: a for o, a in self.amplitudes.items() if abs(a) >= tol})

    def normalized(self) -> StateVec:
        """Scale to unit norm and drop amplitudes below PRUNE_TOL.

        Raises
        ------
        ZeroDivisionError
            If the state is zero

        """

        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroDivisionError("Cannot normalize the zero state.")
        return (self * (1.0 / nrm)).pruned()

    def to_vector(self, basis: SectorBasis) -> np.ndarray:
        """Dense amplitudes in the order of basis.

        Raises
        ------
        SupportError
            If the state has amplitude outside basis

        """

        vec = np.zeros(len(basis), dtype=complex)
        for occ, amp in self.amplitudes.items():
            idx = basis.index.get(occ)
            if idx is None:
                raise SupportError(
                    f"State amplitude on {occ} lies outside sector {basis.charge}."
                )
            vec[idx] = amp
        return vec

    @staticmethod
    def from_vector(vec: np.ndarray, basis: SectorBasis) -> StateVec:
        return StateVec({occ: vec[i] for i, occ in enumerate(basis.states) if vec[i] != 0})

    def to_json(self) -> list[dict]:
        return [
            {"occupation": occ.to_json(), "amplitude": [a.real, a.imag]}
            for occ, a in self.amplitudes.items()
        ]

    def __add__(self, other: StateVec) -> StateVec:
        out = dict(self.amplitudes)
        for occ, amp in other.amplitudes.items():
            out[occ] = out.get(occ, 0j) + amp
        return StateVec(out)

    def __sub__(self, other: StateVec) -> StateVec:
        return self + other * -1.0

    def __mul__(self, scalar: Number) -> StateVec:
        return StateVec({o: a * scalar for o, a in self.amplitudes.items()})

    def __rmul__(self, scalar: Number) -> StateVec:
        return self * scalar

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __repr__(self) -> str:
        terms = " + ".join(f"({a:.6g}){o}" for o, a in self.amplitudes.items())
        return f"StateVec({terms or '0'})"


def inner(a: StateVec, b: StateVec) -> complex:
    """Hermitian inner product <a|b>, antilinear in a."""

    if len(a) > len(b):
        return complex(sum(np.conj(a.get(o)) * amp for o, amp in b.items()))
    return complex(sum(np.conj(amp) * b.get(o) for o, amp in a.items()))
