"""Prime orbits of minterms under the invertible substitution group.

At d = 1 the orbits are fully determined by a two-part signature of each
minterm: the state of the modal factor matching its own section, and the
count of positive modal factors.  ``compute_orbits`` runs the worklist
sweep (apply every prime substitution to a seed minterm, collect, repeat
with the next unassigned minterm) while ``orbit_closed_form`` builds the
same orbits straight from the signatures; the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .context import Context, DegreeError, context
from .minmatrix import Minmatrix
from .substitution import prime_permutations

__all__ = [
    "PrimeOrbit", "orbit_of", "label_order", "compute_orbits",
    "orbit_closed_form", "orbit_masks", "orbit_map", "display_label",
]


@dataclass(frozen=True)
class PrimeOrbit:
    label: str
    matrix: Minmatrix

    @property
    def size(self) -> int:
        return self.matrix.count


def label_order(n: int) -> list[str]:
    """Canonical order: Vv0, Dd0, then Dc_k/Dw_k interleaved by k."""
    labels = ["Vv0", "Dd0"]
    for k in range(1, n):
        labels.append(f"Dc{k}")
        labels.append(f"Dw{k}")
    return labels


def display_label(label: str, v: int) -> str:
    """Context-specific name: V/Vv/Vvv/Vvvv by context, Dc1 at v=2 as Dcc1.

    The k index is dropped when the context has a single k (v = 1), as in
    the K[1,1] names Dc and Dw.
    """
    name = label[0] + label[1] * v
    if label in ("Vv0", "Dd0"):
        return name
    return name + (label[2:] if (1 << v) > 2 else "")


def orbit_of(ctx: Context, index: int) -> str:
    """Orbit label of a minterm, by its (self-state, count) signature."""
    if ctx.d != 1:
        raise DegreeError("prime-orbit signatures require d = 1")
    s, e = ctx.split(index)
    self_state = (e >> s) & 1
    k = e.bit_count()
    if self_state == 0:
        return "Vv0" if k == 0 else f"Dc{k}"
    return "Dd0" if k == 1 else f"Dw{k - 1}"


def orbit_closed_form(ctx: Context) -> list[PrimeOrbit]:
    """Orbits built directly from the signature rule, no substitutions."""
    if ctx.d != 1:
        raise DegreeError("prime orbits are computed for d = 1 contexts")
    buckets: dict[str, int] = {}
    for idx in range(ctx.universe_size):
        label = orbit_of(ctx, idx)
        buckets[label] = buckets.get(label, 0) | (1 << idx)
    return [PrimeOrbit(lbl, Minmatrix(ctx, buckets[lbl]))
            for lbl in label_order(ctx.n) if lbl in buckets]


def compute_orbits(ctx: Context) -> list[PrimeOrbit]:
    """Worklist sweep: seed an unassigned minterm, close under all primes."""
    if ctx.d == 0:
        # The primes permute the level-0 minterms transitively.
        return [PrimeOrbit("B0", Minmatrix.full(ctx))]
    if ctx.d != 1:
        raise DegreeError("prime orbits are computed for d <= 1 contexts")
    if ctx.v > 3:
        raise ValueError("prime enumeration supports v <= 3")
    n = ctx.n
    perms = np.array(prime_permutations(ctx.v), dtype=np.int64)
    assigned = 0
    orbits = []
    seed = 0
    while assigned != ctx.full:
        while (assigned >> seed) & 1:
            seed += 1
        s, e = ctx.split(seed)
        new_s = perms[:, s]
        new_e = np.zeros(len(perms), dtype=np.int64)
        for i in range(n):
            if (e >> i) & 1:
                new_e |= np.int64(1) << perms[:, i]
        members = np.unique((new_s << ctx.e_bits) | new_e)
        bits = 0
        for idx in members.tolist():
            bits |= 1 << idx
        orbits.append(PrimeOrbit(orbit_of(ctx, seed), Minmatrix(ctx, bits)))
        assigned |= bits
    order = {lbl: pos for pos, lbl in enumerate(label_order(n))}
    orbits.sort(key=lambda o: order[o.label])
    return orbits


@lru_cache(maxsize=None)
def _orbit_table(v: int) -> tuple[tuple[str, ...], tuple[int, ...]]:
    ctx = context(v, 1)
    orbs = orbit_closed_form(ctx)
    return tuple(o.label for o in orbs), tuple(o.matrix.bits for o in orbs)


def orbit_masks(ctx: Context) -> tuple[int, ...]:
    """Bit masks of the 2n prime orbits, in canonical label order."""
    if ctx.d != 1:
        raise DegreeError("prime orbits are computed for d = 1 contexts")
    return _orbit_table(ctx.v)[1]


def orbit_map(ctx: Context) -> dict[str, Minmatrix]:
    labels, masks = _orbit_table(ctx.v)
    return {lbl: Minmatrix(ctx, bits) for lbl, bits in zip(labels, masks)}


def expected_size(label: str, n: int) -> int:
    """n * C(n-1, k) members: k from the label, with the 0 conventions."""
    if label in ("Vv0", "Dd0"):
        return n
    return n * comb(n - 1, int(label[2:]))
