"""Affine ADE root systems and the McKay dictionary.

Vertex 0 is always the extending vertex.  The finite positive roots are
generated by closing the simple roots of vertices ``1..l`` under simple
reflections, and every positive affine root with ``alpha_0 = n`` is written
``gamma + n * delta`` with ``gamma`` finite.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .errors import UnknownGroup, UnknownType
from .quiver import Quiver

__all__ = [
    "AffineRootSystem",
    "Root",
    "Mode",
    "from_type",
    "from_mckay_group",
    "positive_roots_up_to",
    "stability_select",
    "stability_vector",
    "irrep_dimensions",
]

Vector = tuple[int, ...]

# marks of the extended diagrams below, listed in vertex order
_EXCEPTIONAL = {
    6: ([(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], (1, 2, 3, 2, 1, 2, 1)),
    7: ([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)], (1, 2, 3, 4, 3, 2, 1, 2)),
    8: (
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)],
        (1, 2, 3, 4, 5, 6, 4, 2, 3),
    ),
}


def _diagram(family: str, l: int) -> tuple[list[tuple[int, int]], Vector]:
    if family == "A":
        if l == 1:
            return [(0, 1), (0, 1)], (1, 1)
        return [(i, i + 1) for i in range(l)] + [(0, l)], (1,) * (l + 1)
    if family == "D":
        # leaves 0, 1 hang off vertex 4; leaves 2, 3 hang off vertex l; chain 4..l
        edges = [(0, 4), (1, 4), (2, l), (3, l)] + [(i, i + 1) for i in range(4, l)]
        return edges, (1, 1, 1, 1) + (2,) * (l - 3)
    edges, marks = _EXCEPTIONAL[l]
    return list(edges), marks


class Mode(str, Enum):
    PT = "pt"
    DT = "dt"
    NCDT = "ncdt"


@dataclass(frozen=True, order=True)
class Root:
    """A positive affine root ``gamma + level * delta``.

    ``kind`` is ``"re0"`` (finite positive, level 0), ``"re+"`` / ``"re-"``
    (``gamma`` positive / negative finite root, level >= 1) or ``"im"``
    (``gamma = 0``).
    """

    level: int
    kind: str
    vector: Vector
    finite_part: Vector = field(compare=False)

    @property
    def is_real(self) -> bool:
        return self.kind != "im"

    @property
    def is_imaginary(self) -> bool:
        return self.kind == "im"


@dataclass(frozen=True)
class AffineRootSystem:
    family: str
    rank: int
    edges: tuple[tuple[int, int], ...]
    marks: Vector

    @property
    def tag(self) -> str:
        return f"{self.family}{self.rank}~"

    @property
    def vertices(self) -> int:
        return self.rank + 1

    @property
    def delta(self) -> Vector:
        return self.marks

    @property
    def r(self) -> int:
        """``|delta| - 1``, the rank of the nontrivial part of the tautological bundle."""
        return sum(self.marks) - 1

    @cached_property
    def quiver(self) -> Quiver:
        """Orientation with every edge pointing away from vertex 0 (BFS distance, ties by index)."""
        dist = {0: 0}
        adj: dict[int, list[int]] = {i: [] for i in range(self.vertices)}
        for s, t in self.edges:
            adj[s].append(t)
            adj[t].append(s)
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if j not in dist:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        arrows = []
        for s, t in self.edges:
            if (dist[s], s) > (dist[t], t):
                s, t = t, s
            arrows.append((s, t))
        return Quiver(self.vertices, tuple(arrows))

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Symmetrized Cartan pairing ``(a, b) = chi(a, b) + chi(b, a)``."""
        out = 2 * sum(x * y for x, y in zip(a, b))
        for s, t in self.edges:
            out -= a[s] * b[t] + a[t] * b[s]
        return out

    def null_vector(self) -> Vector:
        """Minimal positive integer kernel vector of the Cartan matrix, normalized at vertex 0."""
        n = self.vertices
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        rows = [[Fraction(self.pairing(basis[i], basis[j])) for j in range(n)] for i in range(n)]
        # eliminate on columns 1..n-1 and back-substitute with x_0 = 1
        pivots: list[tuple[int, int]] = []
        r = 0
        for c in range(1, n):
            p = next((k for k in range(r, n) if rows[k][c] != 0), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for k in range(n):
                if k != r and rows[k][c] != 0:
                    f = rows[k][c]
                    rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
            pivots.append((r, c))
            r += 1
        x = [Fraction(0)] * n
        x[0] = Fraction(1)
        for row, c in pivots:
            x[c] = -rows[row][0]
        return tuple(int(v) for v in x)

    @cached_property
    def finite_positive_roots(self) -> tuple[Vector, ...]:
        n = self.vertices
        simple = [tuple(int(i == j) for j in range(n)) for i in range(1, n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for a in simple:
                if beta == a:
                    continue
                k = self.pairing(beta, a)
                image = tuple(x - k * y for x, y in zip(beta, a))
                if all(x >= 0 for x in image) and image not in seen:
                    seen.add(image)
                    queue.append(image)
        return tuple(sorted(seen, key=lambda v: (sum(v), v)))

    @property
    def finite_roots(self) -> tuple[Vector, ...]:
        pos = self.finite_positive_roots
        return pos + tuple(tuple(-x for x in v) for v in pos)

    def to_sq(self, alpha: Sequence[int]) -> tuple[int, Vector]:
        """``y^alpha = s^n Q^beta`` with ``n = alpha_0`` and ``beta = n*delta - alpha`` (coordinates 1..l)."""
        n = alpha[0]
        beta = tuple(n * d - a for d, a in zip(self.marks, alpha))
        return n, beta[1:]

    def from_sq(self, n: int, beta: Sequence[int]) -> Vector:
        full = (0,) + tuple(beta)
        return tuple(n * d - b for d, b in zip(self.marks, full))

    def classify(self, alpha: Sequence[int]) -> Root | None:
        """The :class:`Root` with vector ``alpha``, or ``None`` when ``alpha`` is not a positive root."""
        alpha = tuple(alpha)
        n = alpha[0]
        if n < 0:
            return None
        gamma = tuple(a - n * d for a, d in zip(alpha, self.marks))
        if not any(gamma):
            return Root(n, "im", alpha, gamma) if n >= 1 else None
        pos = set(self.finite_positive_roots)
        if gamma in pos:
            return Root(n, "re0" if n == 0 else "re+", alpha, gamma)
        if n >= 1 and tuple(-x for x in gamma) in pos:
            return Root(n, "re-", alpha, gamma)
        return None


_KNOWN_COUNTS = {"E": {6: 36, 7: 63, 8: 120}}

_TAG = re.compile(r"^\s*([ADEade])_?(\d+)\s*(~|\^\(1\)|\^\{\(1\)\}|\(1\))?\s*$")


def from_type(tag: str) -> AffineRootSystem:
    """Build ``A_l~`` (l>=1), ``D_l~`` (l>=4) or ``E_6~, E_7~, E_8~`` from a tag such as ``"D4~"``."""
    m = _TAG.match(tag)
    if not m:
        raise UnknownType(f"unrecognized type {tag!r}")
    family, l = m.group(1).upper(), int(m.group(2))
    if (family == "A" and l < 1) or (family == "D" and l < 4) or (family == "E" and l not in (6, 7, 8)):
        raise UnknownType(f"no affine type {family}{l}")
    edges, marks = _diagram(family, l)
    R = AffineRootSystem(family, l, tuple(edges), marks)
    return R


def expected_finite_root_count(R: AffineRootSystem) -> int:
    l = R.rank
    if R.family == "A":
        return l * (l + 1) // 2
    if R.family == "D":
        return l * (l - 1)
    return _KNOWN_COUNTS["E"][l]


# ------------------------------------------------------------------- McKay
_GROUP = re.compile(r"^\s*(cyclic|bindihedral|bintet|binoct|binico)(?::(\d+))?\s*$")


def irrep_dimensions(descriptor: str) -> tuple[int, ...]:
    """Dimensions of the irreducible representations of a finite subgroup of SL_2."""
    m = _GROUP.match(descriptor)
    if not m:
        raise UnknownGroup(f"unrecognized group {descriptor!r}")
    kind, n = m.group(1), m.group(2)
    if kind in ("cyclic", "bindihedral"):
        if n is None:
            raise UnknownGroup(f"{kind} needs a parameter, e.g. {kind}:3")
        n = int(n)
        if n < 2:
            raise UnknownGroup(f"{kind}:{n} is not a valid parameter")
        if kind == "cyclic":
            return (1,) * n
        return (1, 1, 1, 1) + (2,) * (n - 1)
    if n is not None:
        raise UnknownGroup(f"{kind} takes no parameter")
    return {
        "bintet": (1, 1, 1, 2, 2, 2, 3),
        "binoct": (1, 1, 2, 2, 2, 3, 3, 4),
        "binico": (1, 2, 2, 3, 3, 4, 4, 5, 6),
    }[kind]


def from_mckay_group(descriptor: str) -> AffineRootSystem:
    """``cyclic:n`` -> A_{n-1}~, ``bindihedral:n`` -> D_{n+2}~, ``bintet/binoct/binico`` -> E_6~/E_7~/E_8~."""
    dims = irrep_dimensions(descriptor)
    kind = descriptor.split(":")[0].strip()
    l = len(dims) - 1
    family = {"cyclic": "A", "bindihedral": "D"}.get(kind, "E")
    R = from_type(f"{family}{l}~")
    if sorted(R.marks) != sorted(dims):
        raise AssertionError(f"marks {R.marks} do not match irreducible dimensions {dims}")
    return R


# ---------------------------------------------------------------- queries
def positive_roots_up_to(R: AffineRootSystem, N: int) -> list[Root]:
    """All positive roots with ``alpha_0 <= N``, classified."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = [Root(0, "re0", g, g) for g in R.finite_positive_roots]
    delta = R.marks
    for n in range(1, N + 1):
        nd = tuple(n * d for d in delta)
        for g in R.finite_positive_roots:
            out.append(Root(n, "re+", tuple(a + b for a, b in zip(g, nd)), g))
        for g in R.finite_positive_roots:
            neg = tuple(-x for x in g)
            out.append(Root(n, "re-", tuple(a + b for a, b in zip(neg, nd)), neg))
        out.append(Root(n, "im", nd, (0,) * len(delta)))
    return out


def stability_select(R: AffineRootSystem, mode: Mode | str) -> Callable[[Root], bool]:
    """Roots with ``zeta . alpha < 0`` for the PT, DT or NCDT chamber, decided from root tags."""
    mode = Mode(str(mode).lower() if not isinstance(mode, Mode) else mode)
    if mode is Mode.PT:
        return lambda root: root.kind == "re-"
    if mode is Mode.DT:
        return lambda root: root.kind in ("re-", "im")
    return lambda root: True


def stability_vector(R: AffineRootSystem, mode: Mode | str, eps: Fraction) -> tuple[Fraction, ...]:
    """Explicit rational stability parameter of the chamber (``zeta^+``, ``zeta^-`` or all ``-1``)."""
    mode = Mode(str(mode).lower() if not isinstance(mode, Mode) else mode)
    rest = (Fraction(1),) * R.rank
    if mode is Mode.PT:
        return (Fraction(-R.r) + eps,) + rest
    if mode is Mode.DT:
        return (Fraction(-R.r) - eps,) + rest
    return (Fraction(-1),) * R.vertices
