"""Moment-curve perturbation and enumeration of generic partitions.

The perturbation is symbolic: column i of a d x n base matrix is read as
``base^i + eps * (i, i^2, ..., i^d)`` for an infinitesimal eps > 0, but eps is
never instantiated. Every decision reduces to the sign of a determinant
polynomial in eps, which equals the sign of its first nonzero coefficient.
Coefficients are recovered exactly by evaluating the determinant at the
integer nodes eps = 0, 1, ..., d and solving the (always nonsingular)
Vandermonde system, so no tolerance is ever tuned.

Two-partitions come from separator triples: a sorted d-subset I spans an
oriented hyperplane of the perturbed configuration, splitting the remaining
columns by sign, and each two-sided split of I itself yields two associated
ordered 2-partitions. p-partitions are assembled from one 2-partition per
part pair, intersecting candidate blocks and keeping the assemblies whose
blocks cover the ground set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

from .errors import CapacityError, DimensionError
from .linalg import Matrix, determinant, solve_vandermonde
from .partitions import Partition, ordered_partition


@dataclass(frozen=True)
class EnumerationLimits:
    """Caps that abort enumeration with a CapacityError instead of running unbounded."""

    max_two_partitions: int = 100_000
    max_assembly_nodes: int = 5_000_000
    max_candidates: int = 100_000


DEFAULT_LIMITS = EnumerationLimits()


class SeparatorTriple(NamedTuple):
    """A sorted d-subset I plus a two-sided split of it (below ∪ above = I)."""

    subset: tuple[int, ...]
    below: tuple[int, ...]
    above: tuple[int, ...]


@dataclass(frozen=True)
class GenericPartitionSet:
    """Deduplicated, canonically ordered set of generic partitions."""

    partitions: tuple[Partition, ...]
    d: int
    n: int
    p: int

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.partitions)

    def __contains__(self, pi: Partition) -> bool:
        return pi in set(self.partitions)


class PerturbedMatrix:
    """A base matrix accessed only through generic-sign queries.

    The moment-curve dimension always equals the base row count, so a lifted
    matrix is perturbed in lifted space.
    """

    def __init__(self, base: Matrix):
        if base.nrows < 1:
            raise DimensionError("perturbation needs at least one row")
        self.base = base
        self.d = base.nrows
        self.n = base.ncols
        self._node_columns: dict[int, list[tuple[Fraction, ...]]] = {}

    def _columns_at_node(self, node: int) -> list[tuple[Fraction, ...]]:
        """Lifted perturbed columns (prepended 1) evaluated at eps = node."""
        cached = self._node_columns.get(node)
        if cached is not None:
            return cached
        cols = []
        for i in range(1, self.n + 1):
            moment = 1
            col = [Fraction(1)]
            for r in range(self.d):
                moment *= i
                col.append(self.base.entry(r, i - 1) + node * moment)
            cols.append(tuple(col))
        self._node_columns[node] = cols
        return cols


def generic_orientation(perturbed: PerturbedMatrix, column_indices: Sequence[int]) -> int:
    """Sign, for all sufficiently small eps > 0, of the lifted determinant
    whose columns are the perturbed columns listed (in the given order).

    The determinant is a polynomial of degree d in eps whose leading
    coefficient is a Vandermonde determinant at the distinct listed indices,
    hence nonzero; an all-zero coefficient vector is therefore impossible and
    raises AssertionError.
    """
    d, n = perturbed.d, perturbed.n
    cols = tuple(column_indices)
    if len(cols) != d + 1:
        raise DimensionError(f"need {d + 1} column indices, got {len(cols)}")
    if len(set(cols)) != len(cols):
        raise DimensionError(f"column indices must be distinct: {cols}")
    if any(not (1 <= c <= n) for c in cols):
        raise DimensionError(f"column index outside [1, {n}]: {cols}")
    values = []
    for node in range(d + 1):
        at_node = perturbed._columns_at_node(node)
        values.append(determinant(Matrix.from_columns([at_node[c - 1] for c in cols])))
    coefficients = solve_vandermonde(values)
    for c in coefficients:
        if c > 0:
            return 1
        if c < 0:
            return -1
    raise AssertionError(
        f"determinant polynomial vanished identically for columns {cols}; "
        "the Vandermonde leading coefficient makes this impossible"
    )


def generic_sign(perturbed: PerturbedMatrix, subset: Sequence[int], i: int) -> int:
    """Side of column i relative to the oriented hyperplane spanned by subset.

    subset is taken in increasing order (the fixed orientation convention);
    i must not belong to it.
    """
    ordered = tuple(sorted(subset))
    if len(ordered) != perturbed.d:
        raise DimensionError(f"subset must have {perturbed.d} indices, got {len(ordered)}")
    if i in ordered:
        raise DimensionError(f"index {i} lies on the separating subset {ordered}")
    return generic_orientation(perturbed, ordered + (i,))


def split_by_hyperplane(
    perturbed: PerturbedMatrix, subset: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Partition the columns outside subset by generic sign: (negative, positive)."""
    ordered = tuple(sorted(subset))
    below: list[int] = []
    above: list[int] = []
    for i in range(1, perturbed.n + 1):
        if i in ordered:
            continue
        if generic_sign(perturbed, ordered, i) < 0:
            below.append(i)
        else:
            above.append(i)
    return tuple(below), tuple(above)


def partitions_from_triple(
    perturbed: PerturbedMatrix, triple: SeparatorTriple
) -> tuple[Partition, Partition]:
    """The two ordered 2-partitions associated with a separator triple."""
    subset = tuple(sorted(triple.subset))
    j_below = tuple(sorted(triple.below))
    j_above = tuple(sorted(triple.above))
    if set(j_below) | set(j_above) != set(subset) or set(j_below) & set(j_above):
        raise DimensionError("below/above must split the subset")
    i_below, i_above = split_by_hyperplane(perturbed, subset)
    first = set(i_below) | set(j_below)
    second = set(i_above) | set(j_above)
    n = perturbed.n
    return (
        ordered_partition([first, second], n),
        ordered_partition([second, first], n),
    )


def _block_mask(block: Sequence[int]) -> int:
    mask = 0
    for i in block:
        mask |= 1 << (i - 1)
    return mask


def _mask_block(mask: int) -> tuple[int, ...]:
    block = []
    i = 1
    while mask:
        if mask & 1:
            block.append(i)
        mask >>= 1
        i += 1
    return tuple(block)


def _two_partition_masks(perturbed: PerturbedMatrix, limits: EnumerationLimits) -> list[int]:
    """Generic 2-partitions as first-block bitmasks, sorted and deduplicated.

    When n <= d the perturbed columns are affinely independent, so every
    2-partition qualifies. Otherwise each sorted d-subset is split once and
    all two-sided splits of it contribute both associated partitions.
    """
    d, n = perturbed.d, perturbed.n
    full = (1 << n) - 1
    if n <= d:
        count = 1 << n
        if count > limits.max_two_partitions:
            raise CapacityError("two-partitions", limits.max_two_partitions, count)
        return list(range(count))
    masks: set[int] = set()
    for subset in combinations(range(1, n + 1), d):
        i_below, i_above = split_by_hyperplane(perturbed, subset)
        below_mask = _block_mask(i_below)
        above_mask = _block_mask(i_above)
        members = list(subset)
        for choice in range(1 << d):
            j_below = 0
            for pos, element in enumerate(members):
                if choice >> pos & 1:
                    j_below |= 1 << (element - 1)
            first = below_mask | j_below
            masks.add(first)
            masks.add(full ^ first)
            if len(masks) > limits.max_two_partitions:
                raise CapacityError("two-partitions", limits.max_two_partitions)
    return sorted(masks)


def _mask_pair_to_partition(mask: int, n: int) -> Partition:
    full = (1 << n) - 1
    return Partition((_mask_block(mask), _mask_block(full ^ mask)), n)


def enumerate_generic_2partitions(
    perturbed: PerturbedMatrix, limits: EnumerationLimits = DEFAULT_LIMITS
) -> GenericPartitionSet:
    """All generic ordered 2-partitions of the perturbed configuration."""
    masks = _two_partition_masks(perturbed, limits)
    partitions = sorted(
        (_mask_pair_to_partition(m, perturbed.n) for m in masks),
        key=lambda pi: pi.blocks,
    )
    return GenericPartitionSet(tuple(partitions), perturbed.d, perturbed.n, 2)


def _part_pairs(p: int) -> list[tuple[int, int]]:
    return [(r, s) for r in range(1, p + 1) for s in range(r + 1, p + 1)]


def assemble(pair_partitions: Sequence[Partition], n: int, p: int) -> Partition | None:
    """Combine one ordered 2-partition per part pair into a p-tuple.

    The pair list is indexed by (r, s) with 1 <= r < s <= p in lexicographic
    order. Part r keeps the elements lying in the first block of every pair
    (r, s) and in the second block of every pair (q, r). The resulting blocks
    are disjoint by construction; None is returned when they fail to cover
    the ground set.
    """
    pairs = _part_pairs(p)
    if len(pair_partitions) != len(pairs):
        raise DimensionError(f"need {len(pairs)} pair partitions for p={p}, got {len(pair_partitions)}")
    full = (1 << n) - 1
    allowed = [full] * p
    for (r, s), pi in zip(pairs, pair_partitions):
        if pi.p != 2 or pi.n != n:
            raise DimensionError(f"pair entry for ({r},{s}) is not a 2-partition of [{n}]")
        first = _block_mask(pi.blocks[0])
        allowed[r - 1] &= first
        allowed[s - 1] &= full ^ first
    union = 0
    for mask in allowed:
        union |= mask
    if union != full:
        return None
    return Partition(tuple(_mask_block(mask) for mask in allowed), n)


def enumerate_generic_p_partitions(
    perturbed: PerturbedMatrix,
    p: int,
    limits: EnumerationLimits = DEFAULT_LIMITS,
    two_partition_masks: list[int] | None = None,
) -> GenericPartitionSet:
    """All generic p-partitions, assembled depth-first over part pairs.

    A branch dies as soon as some element is excluded from every candidate
    block, which prunes the list space without changing the result set (the
    dropped lists cannot cover the ground set). Explored (pair, choice) nodes
    are counted against limits.max_assembly_nodes.
    """
    d, n = perturbed.d, perturbed.n
    if p < 1:
        raise DimensionError(f"need p >= 1, got p={p}")
    if p == 1:
        whole = ordered_partition([range(1, n + 1)], n)
        return GenericPartitionSet((whole,), d, n, 1)

    masks = (
        two_partition_masks
        if two_partition_masks is not None
        else _two_partition_masks(perturbed, limits)
    )
    complements = [((1 << n) - 1) ^ m for m in masks]
    pairs = _part_pairs(p)
    full = (1 << n) - 1
    found: set[tuple[int, ...]] = set()
    nodes = 0

    def descend(level: int, allowed: tuple[int, ...]) -> None:
        nonlocal nodes
        if level == len(pairs):
            found.add(allowed)
            return
        r, s = pairs[level]
        rest = 0
        for t in range(p):
            if t != r - 1 and t != s - 1:
                rest |= allowed[t]
        allowed_r, allowed_s = allowed[r - 1], allowed[s - 1]
        for first, second in zip(masks, complements):
            nodes += 1
            if nodes > limits.max_assembly_nodes:
                raise CapacityError("assembly-nodes", limits.max_assembly_nodes)
            new_r = allowed_r & first
            new_s = allowed_s & second
            if rest | new_r | new_s != full:
                continue
            child = list(allowed)
            child[r - 1] = new_r
            child[s - 1] = new_s
            descend(level + 1, tuple(child))

    descend(0, (full,) * p)
    partitions = sorted(
        (Partition(tuple(_mask_block(m) for m in vec), n) for vec in found),
        key=lambda pi: pi.blocks,
    )
    return GenericPartitionSet(tuple(partitions), d, n, p)
