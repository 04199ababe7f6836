"""Finite Kripke frames, models, validity, and frame-condition checking.

The correspondence machinery exploits the shape of degree-1 formulas: at
a world w under a valuation, the level-0 minterm at w together with the
set of minterms seen at w's successors pick out a single level-1 minterm,
and a normalized formula holds at w exactly when that minterm is in its
minmatrix.  ``eval_model`` stays a direct recursion over the formula so
the two evaluation routes can check each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import formula as fm
from .context import context
from .lattice import STAR, SystemCoord, map_to_star
from .minmatrix import normalize

__all__ = [
    "Frame", "Model", "FrameCondition", "eval_model", "valid_on_frame",
    "frame_condition_holds", "correspondence_check", "find_countermodel",
    "iter_frames", "CorrespondenceReport",
]

DEFAULT_WORLD_CAP = 6


@dataclass(frozen=True)
class Frame:
    """Worlds 0..size-1 with an adjacency bit row per world."""

    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) < 1:
            raise ValueError("a frame needs at least one world")
        for r in self.rows:
            if not 0 <= r < (1 << self.size):
                raise ValueError("relation row out of range")

    @property
    def size(self) -> int:
        return len(self.rows)

    def sees(self, w: int, u: int) -> bool:
        return bool((self.rows[w] >> u) & 1)

    @staticmethod
    def from_relation(size: int, rel: int) -> "Frame":
        """Frame number ``rel``: bit w*size+u set means w sees u."""
        mask = (1 << size) - 1
        return Frame(tuple((rel >> (w * size)) & mask for w in range(size)))

    def relation_number(self) -> int:
        return sum(r << (w * self.size) for w, r in enumerate(self.rows))


@dataclass(frozen=True)
class Model:
    """A frame plus, per world, the level-0 minterm fixing all v variables."""

    frame: Frame
    v: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        n = 1 << self.v
        if len(self.assignment) != self.frame.size:
            raise ValueError("one minterm per world required")
        for a in self.assignment:
            if not 0 <= a < n:
                raise ValueError("assignment out of range")

    def var_true(self, w: int, k: int) -> bool:
        return bool((self.assignment[w] >> (self.v - 1 - k)) & 1)


def eval_model(m: Model, w: int, f: fm.Formula) -> bool:
    """Standard Kripke clauses, by direct recursion."""
    if isinstance(f, fm.Const0):
        return False
    if isinstance(f, fm.Const1):
        return True
    if isinstance(f, fm.Var):
        if f.index >= m.v:
            raise ValueError(f"variable p{f.index} not covered by the model")
        return m.var_true(w, f.index)
    if isinstance(f, fm.Not):
        return not eval_model(m, w, f.child)
    if isinstance(f, fm.And):
        return eval_model(m, w, f.left) and eval_model(m, w, f.right)
    if isinstance(f, fm.Or):
        return eval_model(m, w, f.left) or eval_model(m, w, f.right)
    if isinstance(f, fm.Implies):
        return (not eval_model(m, w, f.left)) or eval_model(m, w, f.right)
    if isinstance(f, fm.Iff):
        return eval_model(m, w, f.left) == eval_model(m, w, f.right)
    if isinstance(f, fm.Diamond):
        return any(eval_model(m, u, f.child) for u in _seen(m.frame, w))
    if isinstance(f, fm.Box):
        return all(eval_model(m, u, f.child) for u in _seen(m.frame, w))
    raise TypeError(f"unknown formula node {f!r}")


def _seen(frame: Frame, w: int):
    row = frame.rows[w]
    while row:
        low = row & -row
        yield low.bit_length() - 1
        row ^= low


def _world_minterm(frame: Frame, assignment, w: int, e_bits: int) -> int:
    """Index of the level-1 minterm realized at world w."""
    e = 0
    for u in _seen(frame, w):
        e |= 1 << assignment[u]
    return (assignment[w] << e_bits) | e


def valid_on_frame(fr: Frame, f: fm.Formula, v: int,
                   cap: int = DEFAULT_WORLD_CAP, method: str = "auto") -> bool:
    """True iff f holds at every world under every of the n**|W| valuations.

    ``method="semantic"`` normalizes once and tests minterm membership
    (degree <= 1 only); ``"direct"`` recurses with eval_model; ``"auto"``
    picks the semantic route when the degree allows.
    """
    if fr.size > cap:
        raise ValueError(f"frame has {fr.size} worlds, over the cap {cap}")
    n = 1 << v
    if method == "auto":
        method = "semantic" if fm.modal_degree(f) <= 1 else "direct"
    if method == "semantic":
        ctx = context(v, 1)
        bits = normalize(f, ctx).bits
        for assignment in product(range(n), repeat=fr.size):
            for w in range(fr.size):
                if not (bits >> _world_minterm(fr, assignment, w, ctx.e_bits)) & 1:
                    return False
        return True
    if method == "direct":
        for assignment in product(range(n), repeat=fr.size):
            model = Model(fr, v, assignment)
            for w in range(fr.size):
                if not eval_model(model, w, f):
                    return False
        return True
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class FrameCondition:
    """Per-world condition F(x,y): the C branch or the W branch.

    C requires an irreflexive world with a bounded number of seen others
    (the D plane adds "at least one"); W requires a reflexive world with
    a bounded number of seen others.  STAR removes the upper bound and
    y = -1 makes the W branch unsatisfiable.
    """

    plane: str
    x: int | str
    y: int | str

    def holds_at(self, fr: Frame, w: int) -> bool:
        row = fr.rows[w]
        self_loop = bool((row >> w) & 1)
        others = row.bit_count() - (1 if self_loop else 0)
        if self_loop:
            return self.y == STAR or (self.y >= 0 and others <= self.y)
        lower = 1 if self.plane == "D" else 0
        if self.x == STAR:
            return others >= lower
        return lower <= others <= self.x


def frame_condition_holds(fr: Frame, cond: FrameCondition) -> bool:
    return all(cond.holds_at(fr, w) for w in range(fr.size))


def iter_frames(size: int):
    for rel in range(1 << (size * size)):
        yield Frame.from_relation(size, rel)


@dataclass(frozen=True)
class CorrespondenceReport:
    coord: SystemCoord
    v: int
    max_worlds: int
    frames_checked: int
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def correspondence_check(v: int, coord: SystemCoord, max_worlds: int = 3,
                         sample: int | None = None,
                         seed: int = 0) -> CorrespondenceReport:
    """Frame-for-frame equivalence of axiom validity and frame condition.

    Checks every labeled digraph up to ``max_worlds`` worlds (or a random
    sample per size when ``sample`` is given): the coordinate's axiom is
    valid on the frame iff the star-mapped condition holds at all worlds.
    """
    from .axiom import alpha_for
    ctx = context(v, 1)
    axiom = alpha_for(coord, v)
    bits = normalize(axiom, ctx).bits
    star = map_to_star(coord, v)
    cond = FrameCondition(star.plane, star.x, star.y)
    n = ctx.n
    rng = random.Random(seed)
    checked = 0
    violations = []
    for size in range(1, max_worlds + 1):
        total = 1 << (size * size)
        if sample is not None and total > sample:
            rels = sorted(rng.sample(range(total), sample))
        else:
            rels = range(total)
        for rel in rels:
            fr = Frame.from_relation(size, rel)
            valid = True
            for assignment in product(range(n), repeat=size):
                for w in range(size):
                    if not (bits >> _world_minterm(fr, assignment, w, ctx.e_bits)) & 1:
                        valid = False
                        break
                if not valid:
                    break
            holds = frame_condition_holds(fr, cond)
            checked += 1
            if valid != holds:
                violations.append({"worlds": size, "relation": rel,
                                   "axiom_valid": valid, "condition_holds": holds})
    return CorrespondenceReport(coord, v, max_worlds, checked, tuple(violations))


def find_countermodel(f: fm.Formula, max_worlds: int = 3,
                      v: int | None = None):
    """Smallest (frame, model, world) falsifying f, or None within the cap.

    Frames are searched by world count, then relation number, then
    valuation in lexicographic order, so the witness is deterministic.
    """
    if v is None:
        v = max(fm.variables(f), 1)
    n = 1 << v
    for size in range(1, max_worlds + 1):
        for rel in range(1 << (size * size)):
            fr = Frame.from_relation(size, rel)
            for assignment in product(range(n), repeat=size):
                model = Model(fr, v, assignment)
                for w in range(size):
                    if not eval_model(model, w, f):
                        return fr, model, w
    return None
