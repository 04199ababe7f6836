"""Minmatrices: normalized formulas as bit vectors over a context's minterms.

``normalize`` evaluates a formula at every minterm of the context at once,
working with whole-universe masks: a minterm fixes the truth of each
variable (through its prefix) and of each modal atom ``<>mu_i`` (through
its epsilon bits), and a subformula ``<>psi`` is true at a minterm exactly
when some factor ``<>mu_i`` in state 1 has ``mu_i`` in the predecessor
normalization of ``psi`` (normality distributes ``<>`` over sums).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formula as fm
from .context import Context, DegreeError, context

__all__ = ["Minmatrix", "ContextMismatchError", "normalize", "is_theorem_K"]


class ContextMismatchError(ValueError):
    """Boolean operation applied to minmatrices from different contexts."""


@dataclass(frozen=True)
class Minmatrix:
    """A set of minterms of ``ctx``; bit i set means minterm i is present."""

    ctx: Context
    bits: int

    # -- construction ------------------------------------------------------

    @staticmethod
    def empty(ctx: Context) -> "Minmatrix":
        return Minmatrix(ctx, 0)

    @staticmethod
    def full(ctx: Context) -> "Minmatrix":
        return Minmatrix(ctx, ctx.full)

    @staticmethod
    def from_indices(ctx: Context, indices) -> "Minmatrix":
        bits = 0
        for i in indices:
            if not 0 <= i < ctx.universe_size:
                raise ValueError(f"minterm index {i} out of range for {ctx!r}")
            bits |= 1 << i
        return Minmatrix(ctx, bits)

    # -- set algebra ---------------------------------------------------------

    def _require_same(self, other: "Minmatrix") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx!r} vs {other.ctx!r}")

    def __and__(self, other: "Minmatrix") -> "Minmatrix":
        self._require_same(other)
        return Minmatrix(self.ctx, self.bits & other.bits)

    def __or__(self, other: "Minmatrix") -> "Minmatrix":
        self._require_same(other)
        return Minmatrix(self.ctx, self.bits | other.bits)

    def __invert__(self) -> "Minmatrix":
        return Minmatrix(self.ctx, self.ctx.full ^ self.bits)

    def __le__(self, other: "Minmatrix") -> bool:
        self._require_same(other)
        return self.bits & ~other.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def members(self) -> tuple[int, ...]:
        """Ascending minterm indices."""
        bits, out, i = self.bits, [], 0
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def is_theorem_K(self) -> bool:
        """Theoremhood in K: the minmatrix contains every minterm."""
        return self.bits == self.ctx.full

    # -- conversions -----------------------------------------------------

    def to_formula(self) -> fm.Formula:
        """Sum of minterm products, descending index order; [0] gives 0."""
        if self.bits == 0:
            return fm.Const0()
        node: fm.Formula | None = None
        for i in reversed(self.members()):
            term = self.ctx.minterm_formula(i)
            node = term if node is None else fm.Or(node, term)
        assert node is not None
        return node

    def promote_v(self) -> "Minmatrix":
        """The equiprovable minmatrix in the successor context K[v+1,d]."""
        target = context(self.ctx.v + 1, self.ctx.d)
        return normalize(self.to_formula(), target)

    def to_json(self, include_hex: bool = False) -> dict:
        doc: dict = {"v": self.ctx.v, "d": self.ctx.d,
                     "minterms": list(self.members())}
        if include_hex:
            nbytes = (self.ctx.universe_size + 7) // 8
            doc["hex"] = self.bits.to_bytes(nbytes, "little").hex()
        return doc

    @staticmethod
    def from_json(doc: dict) -> "Minmatrix":
        ctx = context(doc["v"], doc["d"])
        if "hex" in doc:
            m = Minmatrix(ctx, int.from_bytes(bytes.fromhex(doc["hex"]), "little"))
            if "minterms" in doc and list(m.members()) != list(doc["minterms"]):
                raise ValueError("hex mask and minterm list disagree")
            return m
        return Minmatrix.from_indices(ctx, doc["minterms"])

    # -- display ---------------------------------------------------------

    def render_matrix(self) -> str:
        """Paper-style 0/1 table: factor rows, minterm columns descending."""
        if self.ctx.d > 1:
            raise DegreeError("matrix rendering supports d <= 1 only")
        if self.bits == 0:
            return "[ ]"
        ctx = self.ctx
        cols = list(reversed(self.members()))
        labels = ctx.factor_labels()
        width = max(len(lbl) for lbl in labels) if labels else 0
        states = [ctx.factor_states(i) for i in cols]
        sections = None
        if ctx.d == 1 and ctx.v > 0:
            sections = [i >> ctx.e_bits for i in cols]
        lines = []
        for row, label in enumerate(labels):
            cells = []
            for c, st in enumerate(states):
                if sections is not None and c > 0 and sections[c] != sections[c - 1]:
                    cells.append(":")
                cells.append(str(st[row]))
            lines.append(f"{label:>{width}} | " + " ".join(cells))
            if ctx.d == 1 and row == ctx.v - 1:
                rule = "-" * width + "-+-" + "-" * (len(" ".join(cells)))
                lines.append(rule)
        return "\n".join(lines)


def normalize(f: fm.Formula, ctx: Context) -> Minmatrix:
    """The minmatrix of ``f`` in ``ctx`` (the set of minterms entailing f)."""
    if fm.modal_degree(f) > ctx.d:
        raise DegreeError(
            f"formula has degree {fm.modal_degree(f)}, context is {ctx!r}")
    if fm.variables(f) > ctx.v:
        raise ValueError(
            f"formula uses {fm.variables(f)} variables, context is {ctx!r}")
    return Minmatrix(ctx, _eval(f, ctx, {}))


def is_theorem_K(m: Minmatrix) -> bool:
    return m.is_theorem_K()


def _eval(f: fm.Formula, ctx: Context, memo: dict) -> int:
    key = (f, ctx)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(f, fm.Const0):
        bits = 0
    elif isinstance(f, fm.Const1):
        bits = ctx.full
    elif isinstance(f, fm.Var):
        bits = ctx.var_mask(f.index)
    elif isinstance(f, fm.Not):
        bits = ctx.full ^ _eval(f.child, ctx, memo)
    elif isinstance(f, fm.And):
        bits = _eval(f.left, ctx, memo) & _eval(f.right, ctx, memo)
    elif isinstance(f, fm.Or):
        bits = _eval(f.left, ctx, memo) | _eval(f.right, ctx, memo)
    elif isinstance(f, fm.Implies):
        bits = (ctx.full ^ _eval(f.left, ctx, memo)) | _eval(f.right, ctx, memo)
    elif isinstance(f, fm.Iff):
        bits = ctx.full ^ (_eval(f.left, ctx, memo) ^ _eval(f.right, ctx, memo))
    elif isinstance(f, fm.Diamond):
        bits = _diamond_mask(ctx, _eval(f.child, ctx.predecessor(), memo))
    elif isinstance(f, fm.Box):
        pred = ctx.predecessor()
        bits = ctx.full ^ _diamond_mask(ctx, pred.full ^ _eval(f.child, pred, memo))
    else:
        raise TypeError(f"unknown formula node {f!r}")
    memo[key] = bits
    return bits


def _diamond_mask(ctx: Context, pred_bits: int) -> int:
    """Minterms where some factor <>mu_i with mu_i in pred_bits is positive."""
    mask = 0
    bits = pred_bits
    while bits:
        low = bits & -bits
        mask |= ctx.factor_mask(low.bit_length() - 1)
        bits ^= low
    return mask
