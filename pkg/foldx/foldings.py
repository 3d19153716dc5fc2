import itertools
import logging
import math
import typing
from dataclasses import dataclass

from foldx.errors import DimensionError, MorphError, NotAFoldingError
from foldx.lattices import Lattice, Point, Shape, Tiling, integer_det, vadd

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Direction:
    """
    A nonzero ternary vector. δ and -δ give the same folded-row read backwards,
    so the canonical form has +1 as its first nonzero entry.
    """
    delta: Point

    def __post_init__(self) -> None:
        delta = tuple(int(v) for v in self.delta)
        object.__setattr__(self, 'delta', delta)
        if not delta or any(v not in (-1, 0, 1) for v in delta) or not any(delta):
            raise ValueError(f"{delta} is not a nonzero ternary vector!")

    @property
    def dim(self) -> int:
        return len(self.delta)

    @property
    def is_canonical(self) -> bool:
        return next(v for v in self.delta if v) == 1

    def __neg__(self) -> 'Direction':
        return Direction(tuple(-v for v in self.delta))

    def canonical(self) -> typing.Tuple['Direction', bool]:
        if self.is_canonical:
            return self, False
        return -self, True

    @classmethod
    def parse(cls, text: str) -> 'Direction':
        return cls(tuple(int(v) for v in text.split(',')))

    def __str__(self) -> str:
        return ','.join(map(str, self.delta))


def all_directions(dim: int) -> typing.List[Direction]:
    out = []
    for delta in itertools.product((1, 0, -1), repeat=dim):
        if any(delta) and next(v for v in delta if v) == 1:
            out.append(Direction(delta))
    return out


def trace_walk(tiling: Tiling, direction: Direction) -> typing.List[Point]:
    if direction.dim != tiling.dim:
        raise DimensionError("the direction and the lattice must have the same dimension!")
    origin = tiling.shape.origin
    cycle = [origin]
    p = tiling.reduce(direction.delta)
    while p != origin:
        cycle.append(p)
        p = tiling.reduce(vadd(p, direction.delta))
    return cycle


class FoldedRow:
    """
    The walk order of a folding together with its inverse map.

    `index` extends the inverse map to the whole grid and is a group homomorphism
    onto Z_n, n = |S|.
    """

    def __init__(self, tiling: Tiling, direction: Direction, order: typing.Sequence[Point]) -> None:
        self.tiling = tiling
        self.direction = direction
        self.order = tuple(order)
        self.index_of = {p: i for i, p in enumerate(self.order)}

    @classmethod
    def walk(cls, tiling: Tiling, direction: Direction) -> 'FoldedRow':
        cycle = trace_walk(tiling, direction)
        if len(cycle) != len(tiling):
            logger.debug("walk along %s closes after %d of %d cells", direction, len(cycle), len(tiling))
            raise NotAFoldingError(
                f"the walk along {direction} returns to the origin after {len(cycle)} of {len(tiling)} steps!",
                len(cycle))
        return cls(tiling, direction, cycle)

    @property
    def lattice(self) -> Lattice:
        return self.tiling.lattice

    @property
    def shape(self) -> Shape:
        return self.tiling.shape

    def __len__(self) -> int:
        return len(self.order)

    def index(self, p: typing.Sequence[int]) -> int:
        return self.index_of[self.tiling.reduce(p)]

    def stride(self, axis: int) -> int:
        unit = tuple(int(i == axis) for i in range(self.tiling.dim))
        return self.index(unit)

    def point(self, i: int) -> Point:
        return self.order[i % len(self.order)]

    def reversed(self) -> typing.Tuple[Point, ...]:
        return self.order[:1] + self.order[:0:-1]


def walk_folded_row(lattice: Lattice, shape: Shape, direction: Direction) -> FoldedRow:
    return FoldedRow.walk(Tiling(lattice, shape), direction)


def is_folding_2d(lattice: Lattice, direction: Direction) -> bool:
    if lattice.dim != 2 or direction.dim != 2:
        raise DimensionError("is_folding_2d needs a two-dimensional lattice and direction!")
    (v11, v12), (v21, v22) = lattice.basis
    delta, _ = direction.canonical()
    if delta.delta == (1, 1):
        g = math.gcd(v22 - v21, v11 - v12)
    elif delta.delta == (1, -1):
        g = math.gcd(v22 + v21, v11 + v12)
    elif delta.delta == (1, 0):
        g = math.gcd(v12, v22)
    else:
        g = math.gcd(v11, v21)
    return g == 1


def folding_minors(lattice: Lattice, direction: Direction) -> typing.List[int]:
    """
    The determinants det H_1, ..., det H_D whose gcd decides whether (Λ, δ) folds.

    Coordinates are stably reordered so the +1 entries of δ come first, then the -1
    entries, then the zeros; H has one row per coordinate after the first.
    """
    if lattice.dim != direction.dim:
        raise DimensionError("the direction and the lattice must have the same dimension!")
    delta, _ = direction.canonical()
    perm = [i for i, v in enumerate(delta.delta) if v == 1] + \
        [i for i, v in enumerate(delta.delta) if v == -1] + \
        [i for i, v in enumerate(delta.delta) if v == 0]
    plus = delta.delta.count(1)
    minus = delta.delta.count(-1)
    v = lattice.permuted(perm).basis
    n = lattice.dim
    h = []
    for r in range(1, n):
        if r < plus:
            h.append([v[j][r] - v[j][0] for j in range(n)])
        elif r < plus + minus:
            h.append([v[j][r] + v[j][0] for j in range(n)])
        else:
            h.append([v[j][r] for j in range(n)])
    return [integer_det([row[:i] + row[i + 1:] for row in h]) for i in range(n)]


def is_folding(lattice: Lattice, direction: Direction) -> bool:
    return math.gcd(*folding_minors(lattice, direction)) == 1


def morph_shape(lattice: Lattice, shape: Shape, direction: Direction, p: typing.Sequence[int]) -> Shape:
    tiling = Tiling(lattice, shape)
    FoldedRow.walk(tiling, direction)
    return _morph(tiling, direction, tuple(p))


def _morph(tiling: Tiling, direction: Direction, p: Point) -> Shape:
    shape = tiling.shape
    if p not in shape:
        raise MorphError(f"{p} is not a point of the shape!")
    q = vadd(p, direction.delta)
    if q in shape:
        raise MorphError(f"{q} is already in the shape!")
    removed = tiling.reduce(q)
    if removed == shape.origin:
        raise MorphError(f"adding {q} would remove the origin!")
    return Shape(tuple(q if s == removed else s for s in shape))


def morph_path(tiling: Tiling, direction: Direction, target: Shape) -> typing.List[Shape]:
    """
    Morph tiling.shape step by step into `target`, another tile of the same lattice.

    Each step adds a cell of the target adjacent (along δ) to the current shape. The
    removed cell is congruent to it, so it lies outside the target and the overlap grows
    by one. Returns the shapes after every step, the last one equal to target as a set.
    """
    Tiling(tiling.lattice, target)
    FoldedRow.walk(tiling, direction)
    goal = set(target)
    path = []
    current = tiling
    while set(current.shape) != goal:
        step = None
        for p in current.shape:
            q = vadd(p, direction.delta)
            if q in goal and q not in current.shape and current.reduce(q) != current.shape.origin:
                step = p
                break
        if step is None:
            raise MorphError("no morph step brings the shape closer to the target!")
        current = Tiling(current.lattice, _morph(current, direction, step))
        path.append(current.shape)
    logger.debug("morphed into the target in %d steps", len(path))
    return path


def count_distinct_folded_rows(lattice: Lattice, shape: Shape) -> int:
    """
    Count the canonical directions that fold (Λ, S) into pairwise different folded-rows.
    A folded-row and its reverse are the same row.
    """
    tiling = Tiling(lattice, shape)
    rows = set()
    for direction in all_directions(lattice.dim):
        try:
            row = FoldedRow.walk(tiling, direction)
        except NotAFoldingError:
            continue
        rows.add(min(row.order, row.reversed()))
    return len(rows)
