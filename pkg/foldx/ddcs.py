import logging
import math
import typing
from dataclasses import dataclass
from fractions import Fraction

import torch

from foldx.errors import SizeMismatchError
from foldx.foldings import Direction, FoldedRow, walk_folded_row
from foldx.lattices import Lattice, Point, Shape, vadd, vsub
from foldx.sidon import B2Sequence

logger = logging.getLogger(__name__)


def _points(points: typing.Sequence[Point], dim: int) -> torch.Tensor:
    return torch.tensor(list(points), dtype=torch.int64).reshape(len(points), dim)


def _best_offset(a: typing.Sequence[Point], b: typing.Sequence[Point], dim: int) -> typing.Tuple[int, Point]:
    """
    The offset t maximizing |a ∩ (b + t)|, lexicographically least among ties.
    """
    if not a or not b:
        return 0, (0,) * dim
    diff = (_points(a, dim).unsqueeze(1) - _points(b, dim).unsqueeze(0)).reshape(-1, dim)
    offsets, counts = torch.unique(diff, dim=0, return_counts=True)
    best = int(torch.argmax(counts))
    return int(counts[best]), tuple(offsets[best].tolist())


@dataclass(frozen=True)
class DotPattern:
    shape: Shape
    dots: typing.Tuple[Point, ...]

    def __post_init__(self) -> None:
        dots = tuple(tuple(int(v) for v in p) for p in self.dots)
        object.__setattr__(self, 'dots', dots)
        if len(set(dots)) != len(dots):
            raise ValueError("a dot pattern must not repeat a dot!")
        for p in dots:
            if p not in self.shape:
                raise ValueError(f"the dot {p} lies outside the shape!")

    def __len__(self) -> int:
        return len(self.dots)

    def dumps(self) -> str:
        lines = []
        if self.shape.dim == 2:
            (x0, y0), (x1, y1) = self.shape.bounds()
            dots = set(self.dots)
            for y in range(y1, y0 - 1, -1):
                row = ''
                for x in range(x0, x1 + 1):
                    if (x, y) in dots:
                        row += 'X'
                    elif (x, y) in self.shape:
                        row += '.'
                    else:
                        row += ' '
                lines.append(row.rstrip())
        lines += [' '.join(map(str, p)) for p in self.dots]
        return '\n'.join(lines) + '\n'


def verify_ddc(pattern: DotPattern) -> bool:
    m = len(pattern.dots)
    if m <= 2:
        return True
    d = _points(pattern.dots, pattern.shape.dim)
    diff = d.unsqueeze(1) - d.unsqueeze(0)
    off = ~torch.eye(m, dtype=torch.bool)
    return torch.unique(diff[off], dim=0).size(0) == m * (m - 1)


def fold_b2(lattice: Lattice, shape: Shape, direction: Direction, marks: B2Sequence) -> DotPattern:
    if marks.n != len(shape):
        raise SizeMismatchError(f"the B2 sequence is taken mod {marks.n} but the shape has {len(shape)} points!")
    folded = walk_folded_row(lattice, shape, direction)
    return DotPattern(shape, tuple(folded.order[e] for e in marks))


class InfiniteDDC:
    """
    The lattice-periodic extension of a folded B2 sequence. Every translate of the
    shape holds exactly m dots and they form a DDC.
    """

    def __init__(self, folded: FoldedRow, marks: B2Sequence) -> None:
        if marks.n != len(folded):
            raise SizeMismatchError(f"the B2 sequence is taken mod {marks.n} but the shape has {len(folded)} points!")
        self.folded = folded
        self.marks = marks
        self._marked = frozenset(marks)

    @classmethod
    def build(cls, lattice: Lattice, shape: Shape, direction: Direction, marks: B2Sequence) -> 'InfiniteDDC':
        if marks.n != len(shape):
            raise SizeMismatchError(f"the B2 sequence is taken mod {marks.n} but the shape has {len(shape)} points!")
        return cls(walk_folded_row(lattice, shape, direction), marks)

    @property
    def lattice(self) -> Lattice:
        return self.folded.lattice

    @property
    def shape(self) -> Shape:
        return self.folded.shape

    @property
    def m(self) -> int:
        return len(self.marks)

    def dotted(self, p: typing.Sequence[int]) -> bool:
        return self.folded.index(p) in self._marked

    def window(self, region: Shape, t: typing.Sequence[int]) -> DotPattern:
        t = tuple(t)
        return DotPattern(region, tuple(r for r in region if self.dotted(vadd(r, t))))


def dotted(pattern: InfiniteDDC, p: typing.Sequence[int]) -> bool:
    return pattern.dotted(p)


def max_intersection(shape: Shape, region: Shape) -> typing.Tuple[int, Point]:
    return _best_offset(shape.points, region.points, shape.dim)


def _rich_scan(pattern: InfiniteDDC, region: Shape) -> typing.Tuple[Point, typing.List[Point]]:
    # u runs over the shape points, one per residue class, so S + u covers a full period
    best_t, best_dots = None, None
    for u in pattern.shape:
        copy = [s for s in pattern.shape if pattern.dotted(vadd(s, u))]
        count, a = _best_offset(copy, region.points, region.dim)
        if best_dots is None or count > len(best_dots):
            best_t = vadd(u, a)
            best_dots = [vadd(s, u) for s in copy if vsub(s, a) in region]
    return best_t, best_dots


def find_rich_copy(pattern: InfiniteDDC, region: Shape) -> typing.Tuple[Point, int]:
    """
    A translate R + t holding at least ⌈m·Δ(S, R) / |S|⌉ dots, all from a single
    translate of S, so the dots counted form a DDC.
    """
    t, dots = _rich_scan(pattern, region)
    logger.debug("richest copy at %s holds %d dots", t, len(dots))
    return t, len(dots)


def rich_copy(pattern: InfiniteDDC, region: Shape) -> DotPattern:
    t, dots = _rich_scan(pattern, region)
    return DotPattern(region, tuple(vsub(p, t) for p in dots))


def rich_copy_floor(pattern: InfiniteDDC, region: Shape) -> int:
    delta, _ = max_intersection(pattern.shape, region)
    return -(-pattern.m * delta // len(pattern.shape))


def mediator_bound(m: int, shape: Shape, mediator: Shape, region: Shape) -> Fraction:
    d1, _ = max_intersection(shape, mediator)
    d2, _ = max_intersection(mediator, region)
    return Fraction(m * d1 * d2, len(shape) * len(mediator))


def find_mediated_copy(pattern: InfiniteDDC, mediator: Shape, region: Shape) -> typing.Tuple[Point, int, Fraction]:
    t, count = find_rich_copy(pattern, region)
    return t, count, mediator_bound(pattern.m, pattern.shape, mediator, region)


def sqrt_reference(shape: Shape) -> float:
    return math.sqrt(len(shape))
