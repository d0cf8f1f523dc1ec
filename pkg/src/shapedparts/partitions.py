"""Ordered partitions, shapes, shape families, and part-sum matrices.

Element indices are 1-based everywhere a user can see them, matching the
ground set {1, ..., n}. A shape is a plain tuple of p nonnegative block sizes
summing to n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DimensionError
from .linalg import Matrix

Shape = tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """Ordered tuple of disjoint index blocks covering {1, ..., n}.

    Blocks may be empty. Each block is stored sorted, so equal partitions
    compare and hash equal, and tuples of partitions sort deterministically.
    """

    blocks: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        seen: set[int] = set()
        total = 0
        for block in self.blocks:
            if list(block) != sorted(block):
                raise DimensionError("partition blocks must be stored sorted")
            for i in block:
                if not (1 <= i <= self.n):
                    raise DimensionError(f"element {i} outside ground set [1, {self.n}]")
                seen.add(i)
            total += len(block)
        if total != self.n or len(seen) != self.n:
            raise DimensionError("blocks must be disjoint and cover the ground set")

    @property
    def p(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.blocks)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition({body})"


def ordered_partition(blocks: Iterable[Iterable[int]], n: int) -> Partition:
    """Build a Partition from any iterable of index iterables."""
    return Partition(tuple(tuple(sorted(b)) for b in blocks), n)


def shape_of(pi: Partition) -> Shape:
    """The tuple of block cardinalities."""
    return tuple(len(b) for b in pi.blocks)


def partition_matrix(a: Matrix, pi: Partition) -> Matrix:
    """Column-sum matrix of a partition: column j sums the a-columns of block j.

    Empty blocks contribute a zero column.
    """
    if pi.n != a.ncols:
        raise DimensionError(f"partition over [{pi.n}] does not match {a.ncols} columns")
    zero = Fraction(0)
    cols = []
    for block in pi.blocks:
        col = [zero] * a.nrows
        for i in block:
            for r in range(a.nrows):
                col[r] += a.entry(r, i - 1)
        cols.append(col)
    return Matrix.from_columns(cols, nrows=a.nrows)


def lift(a: Matrix) -> Matrix:
    """Append the index row (1, 2, ..., n), making all columns distinct."""
    index_row = [Fraction(i) for i in range(1, a.ncols + 1)]
    return Matrix(list(a.rows()) + [index_row], ncols=a.ncols)


def compositions(n: int, p: int) -> Iterator[Shape]:
    """All p-tuples of nonnegative integers summing to n, in lexicographic order."""
    if p == 0:
        if n == 0:
            yield ()
        return
    if p == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, p - 1):
            yield (first,) + rest


class ShapeFamily:
    """The admissible-shape set, queryable by membership.

    Four kinds: every shape ("all"), an explicit list ("list"), componentwise
    bounds ("bounds"), and an arbitrary membership predicate ("predicate") for
    callers that want the pure oracle model. Only the first three can appear
    in problem files. Families are validated nonempty at construction, except
    the predicate kind, which cannot be inspected.
    """

    def __init__(self, kind: str, n: int, p: int, *,
                 shapes: frozenset[Shape] | None = None,
                 lower: Shape | None = None,
                 upper: Shape | None = None,
                 predicate: Callable[[Shape], bool] | None = None):
        self.kind = kind
        self.n = n
        self.p = p
        self.shapes = shapes
        self.lower = lower
        self.upper = upper
        self.predicate = predicate

    @classmethod
    def all_shapes(cls, n: int, p: int) -> "ShapeFamily":
        _check_dims(n, p)
        return cls("all", n, p)

    @classmethod
    def explicit(cls, shapes: Iterable[Sequence[int]], n: int, p: int) -> "ShapeFamily":
        _check_dims(n, p)
        normalized = frozenset(tuple(int(x) for x in s) for s in shapes)
        if not normalized:
            raise DimensionError("an explicit shape family must be nonempty")
        for s in normalized:
            _check_shape(s, n, p)
        return cls("list", n, p, shapes=normalized)

    @classmethod
    def bounds(cls, lower: Sequence[int], upper: Sequence[int], n: int) -> "ShapeFamily":
        lo = tuple(int(x) for x in lower)
        hi = tuple(int(x) for x in upper)
        if len(lo) != len(hi):
            raise DimensionError("lower and upper bounds differ in arity")
        p = len(lo)
        _check_dims(n, p)
        if any(l < 0 for l in lo) or any(l > u for l, u in zip(lo, hi)):
            raise DimensionError("bounds must satisfy 0 <= lower <= upper")
        if sum(lo) > n or sum(hi) < n:
            raise DimensionError("bounds admit no shape: need sum(lower) <= n <= sum(upper)")
        return cls("bounds", n, p, lower=lo, upper=hi)

    @classmethod
    def from_predicate(cls, predicate: Callable[[Shape], bool], n: int, p: int) -> "ShapeFamily":
        _check_dims(n, p)
        return cls("predicate", n, p, predicate=predicate)

    def contains(self, shape: Sequence[int]) -> bool:
        """Membership verdict for a p-shape of n; wrong arity or total is an error."""
        s = tuple(int(x) for x in shape)
        _check_shape(s, self.n, self.p)
        if self.kind == "all":
            return True
        if self.kind == "list":
            return s in self.shapes
        if self.kind == "bounds":
            return all(l <= x <= u for l, x, u in zip(self.lower, s, self.upper))
        return bool(self.predicate(s))

    def enumerate(self) -> Iterator[Shape]:
        """Every member shape exactly once, in lexicographic order."""
        for s in compositions(self.n, self.p):
            if self.contains(s):
                yield s

    def __repr__(self) -> str:
        return f"ShapeFamily({self.kind}, n={self.n}, p={self.p})"


def _check_dims(n: int, p: int) -> None:
    if n < 0 or p < 1:
        raise DimensionError(f"need n >= 0 and p >= 1, got n={n}, p={p}")


def _check_shape(shape: Shape, n: int, p: int) -> None:
    if len(shape) != p:
        raise DimensionError(f"shape {shape} has {len(shape)} parts, expected {p}")
    if any(x < 0 for x in shape):
        raise DimensionError(f"shape {shape} has a negative entry")
    if sum(shape) != n:
        raise DimensionError(f"shape {shape} sums to {sum(shape)}, expected {n}")


def enumerate_shapes(family: ShapeFamily) -> Iterator[Shape]:
    """Module-level alias for ShapeFamily.enumerate."""
    return family.enumerate()
