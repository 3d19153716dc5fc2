import functools
import itertools
import typing
from dataclasses import dataclass

import sympy

from foldx.errors import DimensionError, EnvelopeError, NotATilingError

Point = typing.Tuple[int, ...]
Residue = typing.Tuple[int, ...]


def vadd(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def vsub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def xgcd(a: int, b: int) -> typing.Tuple[int, int, int]:
    # x * a + y * b == g, with g possibly negative
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def integer_det(rows: typing.Sequence[typing.Sequence[int]]) -> int:
    if len(rows) == 0:
        return 1
    return int(sympy.Matrix(rows).det(method='bareiss'))


def _parse_header(lines: typing.List[str]) -> int:
    if not lines or not lines[0].startswith('dim'):
        raise ValueError("the first line must be 'dim D'!")
    parts = lines[0].split()
    if len(parts) != 2:
        raise ValueError("the first line must be 'dim D'!")
    return int(parts[1])


def _content_lines(text: str) -> typing.List[str]:
    lines = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith('#'):
            lines.append(line)
    return lines


def _parse_ints(line: str, dim: int) -> Point:
    values = tuple(int(v) for v in line.split())
    if len(values) != dim:
        raise ValueError(f"expected {dim} integers, got: {line!r}")
    return values


@dataclass(frozen=True)
class Lattice:
    """
    A full-rank sublattice of Z^D given by a generator matrix whose rows are the basis vectors.
    """
    MAX_DIM = 8
    MAX_VOLUME = 2 ** 31

    basis: typing.Tuple[Point, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.basis)
        object.__setattr__(self, 'basis', rows)
        if not 1 <= len(rows) <= self.MAX_DIM:
            raise EnvelopeError(f"the dimension must be between 1 and {self.MAX_DIM}!")
        if any(len(row) != len(rows) for row in rows):
            raise DimensionError("the basis must be a square matrix!")
        if self.volume == 0:
            raise DimensionError("the basis rows must be linearly independent!")
        if self.volume > self.MAX_VOLUME:
            raise EnvelopeError(f"the volume must not exceed {self.MAX_VOLUME}!")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @functools.cached_property
    def volume(self) -> int:
        return abs(integer_det(self.basis))

    @functools.cached_property
    def hermite_form(self) -> typing.Tuple[Point, ...]:
        """
        Upper triangular basis of the same lattice: positive pivots, entries above
        each pivot reduced into [0, pivot). Built with unimodular row operations.
        """
        rows = [list(row) for row in self.basis]
        n = len(rows)
        for j in range(n):
            for i in range(j + 1, n):
                a, b = rows[j][j], rows[i][j]
                if b == 0:
                    continue
                x, y, g = xgcd(a, b)
                rj, ri = rows[j], rows[i]
                rows[j] = [x * u + y * v for u, v in zip(rj, ri)]
                rows[i] = [(-b // g) * u + (a // g) * v for u, v in zip(rj, ri)]
            if rows[j][j] < 0:
                rows[j] = [-u for u in rows[j]]
            for i in range(j):
                q = rows[i][j] // rows[j][j]
                rows[i] = [u - q * v for u, v in zip(rows[i], rows[j])]
        return tuple(tuple(row) for row in rows)

    @functools.cached_property
    def _inverse(self) -> sympy.Matrix:
        return sympy.Matrix(self.basis).inv()

    def _check_point(self, p: typing.Sequence[int]) -> Point:
        p = tuple(int(v) for v in p)
        if len(p) != self.dim:
            raise DimensionError(f"expected a point of dimension {self.dim}, got {len(p)}!")
        return p

    def residue(self, p: typing.Sequence[int]) -> Residue:
        p = list(self._check_point(p))
        for i, row in enumerate(self.hermite_form):
            q = p[i] // row[i]
            if q:
                for j in range(i, len(p)):
                    p[j] -= q * row[j]
        return tuple(p)

    def contains(self, v: typing.Sequence[int]) -> bool:
        return not any(self.residue(v))

    def coefficients(self, v: typing.Sequence[int]) -> Point:
        v = self._check_point(v)
        x = sympy.Matrix([list(v)]) * self._inverse
        if not all(c.is_integer for c in x):
            raise ValueError(f"{v} is not a lattice vector!")
        return tuple(int(c) for c in x)

    def permuted(self, perm: typing.Sequence[int]) -> 'Lattice':
        # column j of the result is column perm[j] of this basis
        return Lattice(tuple(tuple(row[k] for k in perm) for row in self.basis))

    @classmethod
    def loads(cls, text: str) -> 'Lattice':
        lines = _content_lines(text)
        dim = _parse_header(lines)
        rows = [_parse_ints(line, dim) for line in lines[1:]]
        if len(rows) != dim:
            raise ValueError(f"expected {dim} basis rows, got {len(rows)}!")
        return cls(tuple(rows))

    @classmethod
    def load(cls, path: str) -> 'Lattice':
        with open(path, 'r') as f:
            return cls.loads(f.read())

    @classmethod
    def parse(cls, spec: str) -> 'Lattice':
        # inline form "3,2;7,1"
        return cls(tuple(tuple(int(v) for v in row.split(',')) for row in spec.split(';')))

    def dumps(self) -> str:
        lines = [f"dim {self.dim}"] + [' '.join(map(str, row)) for row in self.basis]
        return '\n'.join(lines) + '\n'

    def dump(self, path: str) -> None:
        with open(path, 'w') as f:
            f.write(self.dumps())


@dataclass(frozen=True)
class Shape:
    """
    A finite set of grid points stored with its center at the origin.
    """
    points: typing.Tuple[Point, ...]

    def __post_init__(self) -> None:
        points = tuple(tuple(int(v) for v in p) for p in self.points)
        object.__setattr__(self, 'points', points)
        if not points:
            raise ValueError("a shape must contain at least the origin!")
        dim = len(points[0])
        if dim < 1 or any(len(p) != dim for p in points):
            raise DimensionError("all points of a shape must have the same dimension!")
        if len(set(points)) != len(points):
            raise ValueError("a shape must not contain duplicate points!")
        if (0,) * dim not in self._members:
            raise ValueError("the origin must be a point of the shape!")

    @functools.cached_property
    def _members(self) -> typing.FrozenSet[Point]:
        return frozenset(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def origin(self) -> Point:
        return (0,) * self.dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> typing.Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in self._members

    def bounds(self) -> typing.Tuple[Point, Point]:
        lo = tuple(min(p[i] for p in self.points) for i in range(self.dim))
        hi = tuple(max(p[i] for p in self.points) for i in range(self.dim))
        return lo, hi

    def translate(self, v: typing.Sequence[int]) -> 'Shape':
        return Shape(tuple(vadd(p, v) for p in self.points))

    @classmethod
    def centered(cls, points: typing.Iterable[typing.Sequence[int]], center: typing.Sequence[int]) -> 'Shape':
        center = tuple(center)
        return cls(tuple(vsub(tuple(p), center) for p in points))

    @classmethod
    def loads(cls, text: str) -> 'Shape':
        lines = _content_lines(text)
        dim = _parse_header(lines)
        center = (0,) * dim
        points = []
        for line in lines[1:]:
            if line.startswith('center'):
                center = _parse_ints(line[len('center'):], dim)
            else:
                points.append(_parse_ints(line, dim))
        return cls.centered(points, center)

    @classmethod
    def load(cls, path: str) -> 'Shape':
        with open(path, 'r') as f:
            return cls.loads(f.read())

    def dumps(self) -> str:
        lines = [f"dim {self.dim}"] + [' '.join(map(str, p)) for p in self.points]
        return '\n'.join(lines) + '\n'

    def dump(self, path: str) -> None:
        with open(path, 'w') as f:
            f.write(self.dumps())


class Tiling:
    """
    A lattice tiling (Λ, S): the lattice translates of S partition the grid.

    The residue -> shape point table is built once, so `reduce` and `center_of`
    are dictionary lookups after one Hermite reduction.
    """

    def __init__(self, lattice: Lattice, shape: Shape) -> None:
        if lattice.dim != shape.dim:
            raise DimensionError("the lattice and the shape must have the same dimension!")
        if len(shape) != lattice.volume:
            raise NotATilingError(
                f"the shape has {len(shape)} points but the lattice volume is {lattice.volume}!")
        table = {}
        for p in shape:
            r = lattice.residue(p)
            if r in table:
                raise NotATilingError(f"{table[r]} and {p} differ by a lattice vector!")
            table[r] = p
        self.lattice = lattice
        self.shape = shape
        self._table = table

    @classmethod
    def standard(cls, lattice: Lattice) -> 'Tiling':
        pivots = [row[i] for i, row in enumerate(lattice.hermite_form)]
        return cls(lattice, Shape(tuple(itertools.product(*map(range, pivots)))))

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def __len__(self) -> int:
        return len(self.shape)

    def reduce(self, p: typing.Sequence[int]) -> Point:
        return self._table[self.lattice.residue(p)]

    def center_of(self, p: typing.Sequence[int]) -> Point:
        p = tuple(p)
        return vsub(p, self.reduce(p))


def volume(lattice: Lattice) -> int:
    return lattice.volume


def residue(lattice: Lattice, p: typing.Sequence[int]) -> Residue:
    return lattice.residue(p)


def is_tiling(lattice: Lattice, shape: Shape) -> bool:
    try:
        Tiling(lattice, shape)
    except NotATilingError:
        return False
    return True


def center_of(lattice: Lattice, shape: Shape, p: typing.Sequence[int]) -> Point:
    return Tiling(lattice, shape).center_of(p)
