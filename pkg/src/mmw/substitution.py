"""Level-0 uniform substitutions, their monoid, primes, and classification.

A substitution is stored as ``v`` truth tables over the ``n = 2**v``
level-0 minterms: ``tables[k]`` bit ``i`` is the truth of ``p_k`` after
substitution, evaluated at ``m_i``.  Equivalently a substitution is the
self-map ``g`` of ``[0, n)`` sending each level-0 minterm (as an
assignment) to its image assignment; the two views convert losslessly,
and there are ``n**n`` substitutions in all.

Applying a substitution to a level-``d`` minterm uses the preimage sets
``J_i = g^{-1}(i)``: the prefix ``m_s`` maps to the sections in ``J_s``
and each modal factor ``<>m_i`` maps to ``<>(sum of m_j, j in J_i)``,
which is positive exactly on minterms with some ``epsilon_j = 1``,
``j in J_i`` (empty ``J_i`` gives ``<>0``, i.e. nothing).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from . import formula as fm
from .context import Context, DegreeError, context
from .minmatrix import Minmatrix

__all__ = [
    "Substitution", "identity", "compose", "apply_formula", "apply_minterm",
    "apply_minmatrix", "is_prime", "enumerate_primes", "prime_permutations",
    "critical_substitution", "all_substitutions", "DependencyClass", "classify",
]


@dataclass(frozen=True)
class Substitution:
    v: int
    tables: tuple[int, ...]

    def __post_init__(self):
        if len(self.tables) != self.v:
            raise ValueError("need one truth table per variable")
        n = 1 << self.v
        for t in self.tables:
            if not 0 <= t < (1 << n):
                raise ValueError("table out of range")

    @property
    def n(self) -> int:
        return 1 << self.v

    def index_map(self) -> tuple[int, ...]:
        """g(i) = image assignment of assignment i."""
        v, n = self.v, self.n
        out = []
        for i in range(n):
            j = 0
            for k in range(v):
                if (self.tables[k] >> i) & 1:
                    j |= 1 << (v - 1 - k)
            out.append(j)
        return tuple(out)

    @staticmethod
    def from_index_map(v: int, g) -> "Substitution":
        tables = [0] * v
        for i, j in enumerate(g):
            for k in range(v):
                if (j >> (v - 1 - k)) & 1:
                    tables[k] |= 1 << i
        return Substitution(v, tuple(tables))

    def formula_for(self, k: int) -> fm.Formula:
        """sigma_k materialized as the DNF formula of its truth table."""
        return Minmatrix(context(self.v, 0), self.tables[k]).to_formula()

    def describe(self) -> str:
        parts = [fm.render(self.formula_for(k)) for k in range(self.v)]
        return "(" + ", ".join(parts) + ")"


def identity(v: int) -> Substitution:
    return Substitution.from_index_map(v, range(1 << v))


def compose(a: Substitution, b: Substitution) -> Substitution:
    """The substitution acting as ``a`` first, then ``b``.

    ``tables[k]`` of the result is the table of ``a``'s formula for p_k
    evaluated under ``b``'s tables, so phi o (ab) = (phi o a) o b.
    """
    if a.v != b.v:
        raise ValueError(f"arity mismatch: {a.v} vs {b.v}")
    ga, gb = a.index_map(), b.index_map()
    return Substitution.from_index_map(a.v, tuple(ga[gb[i]] for i in range(a.n)))


def apply_formula(f: fm.Formula, s: Substitution) -> fm.Formula:
    """Syntactic substitution: replace each variable by its DNF formula."""
    if fm.variables(f) > s.v:
        raise ValueError("formula uses more variables than the substitution")
    reps = {k: s.formula_for(k) for k in range(s.v)}

    def go(node: fm.Formula) -> fm.Formula:
        if isinstance(node, fm.Var):
            return reps[node.index]
        if isinstance(node, (fm.Const0, fm.Const1)):
            return node
        if isinstance(node, fm.Not):
            return fm.Not(go(node.child))
        if isinstance(node, fm.Box):
            return fm.Box(go(node.child))
        if isinstance(node, fm.Diamond):
            return fm.Diamond(go(node.child))
        return type(node)(go(node.left), go(node.right))

    return go(f)


@lru_cache(maxsize=64)
def _image_tables(ctx: Context, s: Substitution):
    """Per-factor masks for applying ``s`` to minterms of ``ctx`` (d=1).

    Returns (prefix_masks, pos_masks, neg_masks): for each level-0 index i,
    the mask of minterms whose section lies in J_i, the mask where some
    factor from J_i is positive, and its complement (so an empty J_i
    gives an empty positive mask and a full negative one).
    """
    g = s.index_map()
    n = ctx.n
    pre = [0] * n
    pos = [0] * n
    for j, i in enumerate(g):
        pre[i] |= ctx.section_mask(j)
        pos[i] |= ctx.factor_mask(j)
    neg = [ctx.full ^ m for m in pos]
    return tuple(pre), tuple(pos), tuple(neg)


def apply_minterm(ctx: Context, index: int, s: Substitution) -> Minmatrix:
    """The minmatrix of (minterm index) o s."""
    if s.v != ctx.v:
        raise ValueError("substitution arity does not match the context")
    if ctx.d == 0:
        g = s.index_map()
        bits = 0
        for j in range(ctx.n):
            if g[j] == index:
                bits |= 1 << j
        return Minmatrix(ctx, bits)
    if ctx.d > 1:
        raise DegreeError("substitution application supports d <= 1")
    pre, pos, neg = _image_tables(ctx, s)
    sec, e = ctx.split(index)
    acc = pre[sec]
    for i in range(ctx.n):
        if acc == 0:
            break
        acc &= pos[i] if (e >> i) & 1 else neg[i]
    return Minmatrix(ctx, acc)


@lru_cache(maxsize=8)
def _minterm_images(ctx: Context, s: Substitution) -> tuple[int, ...]:
    return tuple(apply_minterm(ctx, i, s).bits for i in range(ctx.universe_size))


def apply_minmatrix(m: Minmatrix, s: Substitution) -> Minmatrix:
    """Union of the member images; distributes over union."""
    ctx = m.ctx
    if ctx.d == 0:
        g = s.index_map()
        bits = 0
        for j in range(ctx.n):
            if (m.bits >> g[j]) & 1:
                bits |= 1 << j
        return Minmatrix(ctx, bits)
    images = _minterm_images(ctx, s)
    bits, rest = 0, m.bits
    while rest:
        low = rest & -rest
        bits |= images[low.bit_length() - 1]
        rest ^= low
    return Minmatrix(ctx, bits)


def is_prime(s: Substitution) -> bool:
    """True iff the substitution is invertible (maps minterms bijectively)."""
    return len(set(s.index_map())) == s.n


def prime_permutations(v: int):
    """All permutations pi of the level-0 minterms, in itertools order."""
    if v > 3:
        raise ValueError("prime enumeration supports v <= 3")
    return list(permutations(range(1 << v)))


def _prime_from_permutation(v: int, pi) -> Substitution:
    # sigma_k = sum of m_{pi(i)} over the i where p_k is true in m_i.
    tables = [0] * v
    for i in range(1 << v):
        for k in range(v):
            if (i >> (v - 1 - k)) & 1:
                tables[k] |= 1 << pi[i]
    return Substitution(v, tuple(tables))


@lru_cache(maxsize=None)
def enumerate_primes(v: int) -> tuple[Substitution, ...]:
    """The (2**v)! invertible substitutions, built from minterm permutations."""
    out = tuple(_prime_from_permutation(v, pi) for pi in prime_permutations(v))
    assert len(out) == factorial(1 << v)
    return out


def critical_substitution(v: int) -> Substitution:
    """A strongest-dependencies substitution: m_{n-1} maps to m_{n-2}.

    The induced self-map of level-0 minterms is the identity except that
    the top minterm goes to its neighbour, i.e. the variable that
    separates m_{n-1} from m_{n-2} acquires the factor !m_{n-1}.  For
    v = 1 this is p -> 0.
    """
    if v < 1:
        raise ValueError("critical substitution needs v >= 1")
    n = 1 << v
    g = list(range(n))
    g[n - 1] = n - 2
    return Substitution.from_index_map(v, tuple(g))


def all_substitutions(v: int):
    """Every level-0 substitution (n**n of them); v <= 2 only."""
    if v > 2:
        raise ValueError("exhaustive substitution enumeration supports v <= 2")
    n = 1 << v
    return [Substitution.from_index_map(v, g) for g in product(range(n), repeat=n)]


# -- classification -------------------------------------------------------


@dataclass(frozen=True)
class DependencyClass:
    """Substitutions sharing one orbit-coverage pattern."""

    key: tuple
    size: int
    representative: Substitution

    @property
    def key_digest(self) -> str:
        return hashlib.sha256(repr(self.key).encode()).hexdigest()[:16]


def coverage_key(s: Substitution) -> tuple:
    """The {none, partial, full} coverage matrix of s over the prime orbits."""
    from .orbit import orbit_masks
    ctx = context(s.v, 1)
    masks = orbit_masks(ctx)
    key = []
    for mi in masks:
        row = []
        image = apply_minmatrix(Minmatrix(ctx, mi), s).bits
        for mj in masks:
            inter = image & mj
            row.append(0 if inter == 0 else (2 if inter == mj else 1))
        key.append(tuple(row))
    return tuple(key)


def _fiber_partition(s: Substitution) -> tuple[int, ...]:
    g = s.index_map()
    sizes = [0] * s.n
    for j in g:
        sizes[j] += 1
    return tuple(sorted((c for c in sizes if c), reverse=True))


def _partition_count(lam: tuple[int, ...], n: int) -> int:
    """Number of self-maps of [0,n) whose fiber sizes are ``lam``."""
    k = len(lam)
    ways_blocks = factorial(n)
    for part in lam:
        ways_blocks //= factorial(part)
    mult: dict[int, int] = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    for m in mult.values():
        ways_blocks //= factorial(m)
    ways_values = factorial(n) // factorial(n - k)
    return ways_blocks * ways_values


def _partitions(total: int, largest: int | None = None):
    if total == 0:
        yield ()
        return
    if largest is None:
        largest = total
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def classify(v: int, mode: str = "exhaustive") -> list[DependencyClass]:
    """Partition all of S(v,0) by coverage key; report class sizes.

    ``exhaustive`` computes the key of every substitution (v <= 2).
    ``reduced`` relies on two-sided prime invariance: the key depends
    only on the multiset of preimage-fiber sizes, so one representative
    per fiber partition suffices and class sizes come from counting the
    self-maps with each fiber profile.  Both modes agree where both run.
    """
    n = 1 << v
    if mode == "exhaustive":
        if v > 2:
            raise ValueError("exhaustive classification supports v <= 2 "
                             "(use mode='reduced' for v = 3)")
        groups: dict[tuple, list[Substitution]] = {}
        for s in all_substitutions(v):
            groups.setdefault(coverage_key(s), []).append(s)
        classes = [DependencyClass(key, len(subs), subs[0])
                   for key, subs in groups.items()]
    elif mode == "reduced":
        if v > 3:
            raise ValueError("classification supports v <= 3")
        classes = []
        seen: dict[tuple, tuple[int, ...]] = {}
        for lam in _partitions(n):
            if len(lam) > n:
                continue
            g = []
            for value, part in enumerate(lam):
                g.extend([value] * part)
            rep = Substitution.from_index_map(v, tuple(g))
            key = coverage_key(rep)
            if key in seen:
                raise AssertionError(
                    f"fiber partitions {seen[key]} and {lam} share a coverage key")
            seen[key] = lam
            classes.append(DependencyClass(key, _partition_count(lam, n), rep))
        assert sum(c.size for c in classes) == n ** n
    else:
        raise ValueError(f"unknown mode {mode!r}")
    classes.sort(key=lambda c: (c.size, c.key_digest))
    return classes
