"""Quivers, their Euler-Ringel forms, and the loop-double construction."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .errors import DimensionMismatch

DimVector = tuple[int, ...]

__all__ = [
    "Quiver",
    "LoopDoubleQuiver",
    "DimVector",
    "euler_form",
    "skew_form",
    "loop_double",
    "cut_degree",
    "jordan",
    "kronecker",
    "load_quiver",
]


@dataclass(frozen=True)
class Quiver:
    """Vertices ``0..vertices-1``; multi-arrows are repeated ``(source, target)`` pairs."""

    vertices: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        for s, t in arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise ValueError(f"arrow {s}->{t} leaves the vertex range")
        object.__setattr__(self, "arrows", arrows)

    def check_dim(self, alpha: Sequence[int]) -> DimVector:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.vertices:
            raise DimensionMismatch(f"expected {self.vertices} entries, got {len(alpha)}")
        return alpha

    def arrow_counts(self) -> Counter:
        return Counter(self.arrows)

    def is_symmetric(self) -> bool:
        counts = self.arrow_counts()
        return all(counts[(s, t)] == counts[(t, s)] for s, t in counts)

    def rep_dimension(self, alpha: Sequence[int]) -> int:
        """``dim R(Q, alpha)``."""
        alpha = self.check_dim(alpha)
        return sum(alpha[s] * alpha[t] for s, t in self.arrows)

    def group_dimension(self, alpha: Sequence[int]) -> int:
        """``dim G_alpha``."""
        alpha = self.check_dim(alpha)
        return sum(a * a for a in alpha)

    def opposite(self) -> Quiver:
        return Quiver(self.vertices, tuple((t, s) for s, t in self.arrows))

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, obj: dict) -> Quiver:
        return cls(obj["vertices"], tuple(tuple(a) for a in obj["arrows"]))


def euler_form(Q: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    alpha, beta = Q.check_dim(alpha), Q.check_dim(beta)
    return sum(a * b for a, b in zip(alpha, beta)) - sum(alpha[s] * beta[t] for s, t in Q.arrows)


def skew_form(Q: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    return euler_form(Q, alpha, beta) - euler_form(Q, beta, alpha)


def skew_matrix(Q: Quiver) -> list[list[int]]:
    m = Q.vertices
    basis = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    return [[skew_form(Q, basis[i], basis[j]) for j in range(m)] for i in range(m)]


@dataclass(frozen=True)
class LoopDoubleQuiver:
    """Base quiver ``Q`` plus dual arrows ``a*`` and one loop per vertex.

    Arrow ``k`` of the base has dual ``k`` (reversed) and the loop at vertex
    ``i`` is loop ``i``.  The loops form the cut used for dimensional
    reduction; the duals form the second cut.
    """

    base: Quiver

    @property
    def vertices(self) -> int:
        return self.base.vertices

    @property
    def originals(self) -> tuple[tuple[int, int], ...]:
        return self.base.arrows

    @property
    def duals(self) -> tuple[tuple[int, int], ...]:
        return tuple((t, s) for s, t in self.base.arrows)

    @property
    def loops(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i) for i in range(self.base.vertices))

    @cached_property
    def quiver(self) -> Quiver:
        return Quiver(self.vertices, self.originals + self.duals + self.loops)

    def potential_terms(self) -> list[tuple[int, int, int, int]]:
        """Cycles of ``W = sum_a (a a* l_t(a) - a* a l_s(a))``.

        Each entry ``(k, s, t, sign)`` stands for ``sign * tr(M_a M_a* M_l)``
        at the base of the cycle: ``+1`` means ``a a* l_t`` (a cycle at
        ``t``), ``-1`` means ``a* a l_s`` (a cycle at ``s``).
        """
        out = []
        for k, (s, t) in enumerate(self.base.arrows):
            out.append((k, s, t, +1))
            out.append((k, s, t, -1))
        return out


def loop_double(Q: Quiver) -> LoopDoubleQuiver:
    return LoopDoubleQuiver(Q)


def cut_degree(Qhat: LoopDoubleQuiver, alpha: Sequence[int]) -> int:
    """``d_I(alpha)`` for the loop cut, i.e. ``sum_i alpha_i^2``."""
    alpha = Qhat.base.check_dim(alpha)
    return sum(alpha[s] * alpha[t] for s, t in Qhat.loops)


def jordan() -> Quiver:
    return Quiver(1, ((0, 0),))


def kronecker() -> Quiver:
    return Quiver(2, ((0, 1), (0, 1)))


def load_quiver(name: str) -> Quiver:
    """Resolve ``jordan``, ``kronecker``, ``affine:<TYPE>`` or a JSON file path."""
    if name == "jordan":
        return jordan()
    if name == "kronecker":
        return kronecker()
    if name.startswith("affine:"):
        from .roots import from_type

        return from_type(name.split(":", 1)[1]).quiver
    path = Path(name)
    if not path.exists():
        raise ValueError(f"unknown quiver {name!r}")
    return Quiver.from_json(json.loads(path.read_text()))
