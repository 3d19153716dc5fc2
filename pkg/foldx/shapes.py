import itertools
import math
import typing
from dataclasses import dataclass
from fractions import Fraction

import sympy

from foldx.errors import NotATilingError
from foldx.lattices import Lattice, Point, Shape


def box(dims: typing.Sequence[int]) -> Shape:
    if not dims or any(n < 1 for n in dims):
        raise ValueError("the sides of a box must be positive!")
    return Shape(tuple(itertools.product(*map(range, dims))))


def segment(n: int) -> Shape:
    return box((n,))


@dataclass(frozen=True)
class RectanglePlan:
    alpha: int
    beta: int
    p: int
    gamma_target: Fraction
    gamma_achieved: Fraction

    @property
    def size(self) -> int:
        return self.alpha * self.beta

    def shape(self) -> Shape:
        return box((self.beta, self.alpha))

    def lattice(self) -> Lattice:
        return f2_lattice(self.alpha, self.beta)


def plan_rectangle(gamma: typing.Union[Fraction, float, int], p_max: int) -> RectanglePlan:
    """
    An alpha x beta rectangle with alpha * beta = p^2 - 1, alpha even and beta / alpha as close
    to gamma as the primes 3 .. p_max allow. Ties go to the smaller p, then the smaller alpha.
    """
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("the aspect ratio must be positive!")
    best = None
    for p in sympy.primerange(3, p_max + 1):
        n = p * p - 1
        for alpha in sympy.divisors(n):
            if alpha % 2:
                continue
            ratio = Fraction(n // alpha, alpha)
            key = (abs(ratio - gamma), p, alpha)
            if best is None or key < best[0]:
                best = (key, RectanglePlan(alpha, n // alpha, int(p), gamma, ratio))
    if best is None:
        raise ValueError(f"there is no odd prime below {p_max}!")
    return best[1]


def f1_lattice(n1: int, n2: int) -> Lattice:
    return Lattice(((n1, 0), (0, n2)))


def f2_lattice(alpha: int, beta: int) -> Lattice:
    return Lattice(((beta, 0), (-1, alpha)))


def _hexagon_shift(alpha: int) -> int:
    if alpha % 2:
        raise ValueError("alpha must be even!")
    return alpha // 2 + (1 if alpha % 4 == 0 else 2)


def hexagon_lattice(alpha: int, beta: int) -> Lattice:
    return Lattice(((beta, _hexagon_shift(alpha)), (0, alpha)))


def _hexagon_center(alpha: int, beta: int) -> Point:
    return (2 * beta // 3, alpha // 2)


def hexagon_shape(alpha: int, beta: int) -> Shape:
    """
    The quasi-regular hexagon with vertices (β/3, 0), (β, 0), (4β/3, α/2), (β, α), (β/3, α),
    (0, α/2), rasterized row by row.

    Row y covers [l_y, u_y): l_y follows the two left edges and u_y = β + l_{y-s}, where
    (β, s) is the slanted lattice vector. That makes each row end where the next copy
    starts, so the raster tiles the hexagon lattice with exactly αβ cells.
    """
    s = _hexagon_shift(alpha)
    if beta % 3:
        raise ValueError("beta must be divisible by 3!")
    left = [-(-beta * abs(2 * y - alpha) // (3 * alpha)) for y in range(alpha)]
    points = []
    for y in range(alpha):
        right = beta + left[(y - s) % alpha]
        points += [(x, y) for x in range(left[y], right)]
    shape = Shape.centered(points, _hexagon_center(alpha, beta))
    if len(shape) != alpha * beta:
        raise NotATilingError(f"the hexagon raster has {len(shape)} cells instead of {alpha * beta}!")
    return shape


def hexagon_rectangle(alpha: int, beta: int) -> Shape:
    return box((beta, alpha)).translate(tuple(-c for c in _hexagon_center(alpha, beta)))


def compact_tile(lattice: Lattice) -> Shape:
    """
    The tile made of the shortest representative of every residue class.
    """
    bound = max(sum(abs(row[j]) for row in lattice.basis) for j in range(lattice.dim))
    best = {}
    for p in itertools.product(range(-bound, bound + 1), repeat=lattice.dim):
        key = (sum(v * v for v in p), p)
        r = lattice.residue(p)
        if r not in best or key < best[r]:
            best[r] = key
    if len(best) != lattice.volume:
        raise NotATilingError("the search window misses a residue class!")
    return Shape(tuple(sorted(p for _, p in best.values())))


def raster_circle(radius: typing.Union[Fraction, float, int]) -> Shape:
    if radius <= 0:
        raise ValueError("the radius must be positive!")
    r2 = Fraction(radius) ** 2
    n = math.floor(radius)
    points = [(x, y) for x in range(-n, n + 1) for y in range(-n, n + 1)
              if (x * x + y * y) * r2.denominator < r2.numerator]
    return Shape(tuple(points))


def _vertices(n: int, radius: float, rotation: float) -> typing.List[typing.Tuple[Fraction, Fraction]]:
    out = []
    for i in range(n):
        angle = rotation + 2 * math.pi * i / n
        out.append((Fraction(radius * math.cos(angle)).limit_denominator(10 ** 9),
                    Fraction(radius * math.sin(angle)).limit_denominator(10 ** 9)))
    return out


def raster_polygon(n: int, radius: float, rotation: float = 0.0) -> Shape:
    """
    Grid points strictly inside the regular n-gon of circumradius `radius` centred at the origin.
    The vertices are snapped to rationals once; the inside tests are exact.
    """
    if n < 3:
        raise ValueError("a polygon needs at least 3 sides!")
    if radius <= 0:
        raise ValueError("the radius must be positive!")
    vs = _vertices(n, radius, rotation)
    edges = list(zip(vs, vs[1:] + vs[:1]))
    bound = math.ceil(radius)
    points = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if all((bx - ax) * (y - ay) - (by - ay) * (x - ax) > 0 for (ax, ay), (bx, by) in edges):
                points.append((x, y))
    if (0, 0) not in points:
        raise ValueError("the raster is empty!")
    return Shape(tuple(points))
