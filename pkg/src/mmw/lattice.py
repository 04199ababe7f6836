"""CMM collapse, the coordinate grid of K[[v,1]] and the assembled lattice.

A candidate minmatrix collapses under a substitution when intersecting
with its image strictly shrinks it; a CMM is immune to every level-0
substitution.  The invertible substitutions alone trim a candidate to
its complete prime orbits, and one critical substitution then enforces
the dependency rules between orbits (DR1-DR3), so the default collapse
set is the primes plus one critical substitution.  Exhaustive mode (all
n**n substitutions, v <= 2) exists as the validating oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .context import Context, context
from .minmatrix import Minmatrix
from .orbit import label_order, orbit_map
from .substitution import (Substitution, apply_minmatrix, critical_substitution,
                           enumerate_primes)

__all__ = [
    "STAR", "SystemCoord", "CMM", "InternalConsistencyError", "collapse",
    "cmm_from_coords", "enumerate_cmms", "coverage", "dependency_rules_hold",
    "build_hasse", "HasseDiagram", "map_to_star", "surviving_orbit_sums",
]

STAR = "*"


class InternalConsistencyError(RuntimeError):
    """A result that the theory rules out; indicates a bug, not bad input."""


@dataclass(frozen=True)
class SystemCoord:
    """Lattice position (plane, x, y); x counts Dc orbits, y counts Dw."""

    plane: str
    x: int | str
    y: int | str

    def __post_init__(self):
        if self.plane not in ("K", "D"):
            raise ValueError(f"plane must be K or D, not {self.plane!r}")
        for c in (self.x, self.y):
            if not (c == STAR or isinstance(c, int)):
                raise ValueError(f"coordinate {c!r} must be an integer or '*'")

    def resolve(self, n: int) -> tuple[int, int]:
        """Concrete (x, y) in a context with n sections; validates ranges."""
        x = n - 1 if self.x == STAR else self.x
        y = n - 1 if self.y == STAR else self.y
        if not 0 <= x <= n - 1:
            raise ValueError(f"x={self.x!r} out of range for n={n}")
        if not -1 <= y <= n - 1:
            raise ValueError(f"y={self.y!r} out of range for n={n}")
        if x > y + 1:
            raise ValueError(f"invalid coordinate ({self.x!r},{self.y!r}): x > y+1")
        return x, y

    def __str__(self) -> str:
        return f"S_{self.plane}({self.x},{self.y})"


@dataclass(frozen=True)
class CMM:
    """A characteristic minmatrix: coordinate, orbit labels, bit matrix."""

    coord: SystemCoord
    orbits: frozenset[str]
    matrix: Minmatrix


def _default_subs(v: int) -> list[Substitution]:
    subs = list(enumerate_primes(v))
    if v >= 1:
        subs.append(critical_substitution(v))
    return subs


def collapse(m: Minmatrix, subs=None) -> Minmatrix:
    """Greatest fixpoint of xi -> xi & (xi o sigma) over the substitutions.

    With ``subs=None`` the default set (primes plus one critical
    substitution) is used through a fast path: closure under the whole
    prime group keeps exactly the complete prime orbits inside xi, so
    rounds alternate an orbit trim with one critical-image intersection.
    """
    if subs is None:
        return _collapse_default(m)
    bits = m
    while True:
        prev = bits
        for s in subs:
            if not bits:
                return bits
            bits = bits & apply_minmatrix(bits, s)
        if bits == prev:
            return bits


def _collapse_default(m: Minmatrix) -> Minmatrix:
    ctx = m.ctx
    if ctx.v > 3:
        raise ValueError("collapse supports v <= 3")
    if ctx.d == 0:
        # One orbit: anything short of [1] collapses to [0].
        return m if m.is_theorem_K() else Minmatrix.empty(ctx)
    orbits = orbit_map(ctx)
    crit = critical_substitution(ctx.v) if ctx.v >= 1 else None
    bits = m
    while True:
        prev = bits
        trimmed = Minmatrix.empty(ctx)
        for orb in orbits.values():
            if orb <= bits:
                trimmed = trimmed | orb
        bits = trimmed
        if crit is not None and bits:
            bits = bits & apply_minmatrix(bits, crit)
        if bits == prev:
            return bits


def cmm_from_coords(coord: SystemCoord, v: int) -> CMM:
    """The CMM at a coordinate: Vv0 on the K plane, Dd0 plus the staircase."""
    ctx = context(v, 1)
    x, y = coord.resolve(ctx.n)
    labels: set[str] = set()
    if coord.plane == "K":
        labels.add("Vv0")
    if y >= 0:
        labels.add("Dd0")
        labels.update(f"Dw{k}" for k in range(1, y + 1))
    labels.update(f"Dc{k}" for k in range(1, x + 1))
    orbits = orbit_map(ctx)
    matrix = Minmatrix.empty(ctx)
    for lbl in labels:
        matrix = matrix | orbits[lbl]
    return CMM(coord, frozenset(labels), matrix)


def enumerate_cmms(v: int) -> list[CMM]:
    """All n(n+3) coordinate CMMs, K plane first, bottom (F/Ver side) up."""
    n = context(v, 1).n
    out = []
    for plane in ("K", "D"):
        for y in range(-1, n):
            for x in range(0, min(y + 1, n - 1) + 1):
                out.append(cmm_from_coords(SystemCoord(plane, x, y), v))
    return out


def coverage(ctx: Context, label_i: str, label_j: str, s: Substitution) -> str:
    """Orbit coverage under s: 'none', 'partial' or 'full'."""
    orbits = orbit_map(ctx)
    image = apply_minmatrix(orbits[label_i], s)
    inter = image & orbits[label_j]
    if not inter:
        return "none"
    return "full" if orbits[label_j] <= image else "partial"


def dependency_rules_hold(labels: frozenset[str] | set[str], n: int) -> bool:
    """DR1-DR3: the orbit sets that build a non-collapsing candidate.

    DR1: a non-empty set includes Vv0 or Dd0.  DR2: Dw_k needs Dd0 and
    every lower Dw.  DR3: Dc_k needs Dd0, every lower Dc, and every Dw
    below k.
    """
    if not labels:
        return True
    if "Vv0" not in labels and "Dd0" not in labels:
        return False
    for lbl in labels:
        if lbl in ("Vv0", "Dd0"):
            continue
        k = int(lbl[2:])
        if "Dd0" not in labels:
            return False
        if lbl.startswith("Dw"):
            if any(f"Dw{l}" not in labels for l in range(1, k)):
                return False
        else:
            if any(f"Dc{l}" not in labels for l in range(1, k)):
                return False
            if any(f"Dw{l}" not in labels for l in range(1, k)):
                return False
    return True


def surviving_orbit_sums(v: int, subs=None) -> list[frozenset[str]]:
    """Orbit-label sets whose union is a collapse fixpoint under ``subs``.

    The exhaustive census behind the lattice: of the 2**(2n) candidate
    orbit sums, exactly the coordinate CMMs survive.
    """
    ctx = context(v, 1)
    orbits = orbit_map(ctx)
    labels = label_order(ctx.n)
    survivors = []
    for r in range(len(labels) + 1):
        for combo in combinations(labels, r):
            m = Minmatrix.empty(ctx)
            for lbl in combo:
                m = m | orbits[lbl]
            if collapse(m, subs) == m:
                survivors.append(frozenset(combo))
    return survivors


def map_to_star(coord: SystemCoord, v: int) -> SystemCoord:
    """Embed a context coordinate into the assembled lattice Ksys[[*,1]]."""
    n = context(v, 1).n
    x, y = coord.resolve(n)
    if y == n - 1:
        if x == n - 1:
            return SystemCoord(coord.plane, STAR, STAR)
        return SystemCoord(coord.plane, x, STAR)
    return SystemCoord(coord.plane, x, y)


@dataclass(frozen=True)
class HasseDiagram:
    nodes: tuple[CMM, ...]
    edges: tuple[tuple[SystemCoord, SystemCoord, str], ...]

    def join(self, a: SystemCoord, b: SystemCoord) -> CMM:
        """Lattice join: the CMM whose matrix is the union (Theorem 1a)."""
        byset = {c.orbits: c for c in self.nodes}
        ca, cb = self._get(a), self._get(b)
        union = ca.orbits | cb.orbits
        if union not in byset:
            raise InternalConsistencyError(
                f"union of {a} and {b} is not a coordinate CMM")
        return byset[union]

    def meet(self, a: SystemCoord, b: SystemCoord) -> CMM:
        """Lattice meet: collapse of the intersection (equality at level 1)."""
        byset = {c.orbits: c for c in self.nodes}
        ca, cb = self._get(a), self._get(b)
        inter = ca.matrix & cb.matrix
        if collapse(inter) != inter:
            raise InternalConsistencyError("level-1 meet should not collapse")
        got = ca.orbits & cb.orbits
        if got not in byset:
            raise InternalConsistencyError(
                f"intersection of {a} and {b} is not a coordinate CMM")
        return byset[got]

    def _get(self, coord: SystemCoord) -> CMM:
        for c in self.nodes:
            if c.coord == coord:
                return c
        raise KeyError(str(coord))


def build_hasse(v: int) -> HasseDiagram:
    """Nodes are the coordinate CMMs; edges link sets one orbit apart."""
    nodes = enumerate_cmms(v)
    edges = []
    for a in nodes:
        for b in nodes:
            diff = b.orbits - a.orbits
            if len(diff) == 1 and a.orbits < b.orbits:
                edges.append((a.coord, b.coord, next(iter(diff))))
    return HasseDiagram(tuple(nodes), tuple(edges))
