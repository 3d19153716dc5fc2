import math
import random
from fractions import Fraction
import pytest
from foldx import ddcs, shapes, sidon
from foldx.errors import SizeMismatchError
from foldx.foldings import Direction
from foldx.lattices import Lattice, Shape, vadd


def test_verify_ddc():
    square = shapes.box((2, 2))
    assert ddcs.verify_ddc(ddcs.DotPattern(square, ((0, 0), (0, 1), (1, 0))))
    assert not ddcs.verify_ddc(ddcs.DotPattern(shapes.box((1, 3)), ((0, 0), (0, 1), (0, 2))))
    assert ddcs.verify_ddc(ddcs.DotPattern(square, ((0, 0), (1, 1))))
    assert ddcs.verify_ddc(ddcs.DotPattern(square, ()))
    with pytest.raises(ValueError):
        ddcs.DotPattern(square, ((2, 2),))


def test_dumps():
    pattern = ddcs.DotPattern(shapes.box((2, 2)), ((0, 0), (0, 1), (1, 0)))
    assert pattern.dumps() == "X.\nXX\n0 0\n0 1\n1 0\n"
    cube = ddcs.DotPattern(shapes.box((2, 2, 2)), ((0, 0, 0), (1, 1, 0)))
    assert cube.dumps() == "0 0 0\n1 1 0\n"


def test_fold_b2(example1, row11):
    with pytest.raises(SizeMismatchError):
        ddcs.fold_b2(example1, row11, Direction((1, 0)), sidon.B2Sequence(8, (0, 1, 3)))
    pattern = ddcs.fold_b2(Lattice(((1, 0), (0, 8))), shapes.box((1, 8)), Direction((0, 1)),
                           sidon.B2Sequence(8, (0, 1, 3)))
    assert pattern.dots == ((0, 0), (0, 1), (0, 3))
    assert ddcs.verify_ddc(pattern)


def test_fold_bose5():
    pattern = ddcs.fold_b2(shapes.f2_lattice(6, 4), shapes.box((4, 6)), Direction((0, 1)), sidon.bose(5))
    assert len(pattern) == 5
    assert ddcs.verify_ddc(pattern)


def _tilings(q):
    n = q * q - 1
    yield shapes.f2_lattice(q + 1, q - 1), shapes.box((q - 1, q + 1)), Direction((0, 1))
    lattice = Lattice(((1, 1), (-1, n - 1)))
    yield lattice, shapes.compact_tile(lattice), Direction((1, 0))


@pytest.mark.parametrize('q', [2, 3, 4, 5, 7, 8, 9])
def test_bose_pipeline(q):
    marks = sidon.bose(q)
    rng = random.Random(q)
    for lattice, shape, d in _tilings(q):
        assert len(shape) == q * q - 1
        assert ddcs.verify_ddc(ddcs.fold_b2(lattice, shape, d, marks))
        infinite = ddcs.InfiniteDDC.build(lattice, shape, d, marks)
        for _ in range(100):
            t = (rng.randint(-50, 50), rng.randint(-50, 50))
            window = infinite.window(shape, t)
            assert len(window) == q
            assert ddcs.verify_ddc(window)


def test_infinite_ddc_periodic(example1, row11):
    marks = sidon.B2Sequence(11, (0, 1, 3))
    infinite = ddcs.InfiniteDDC.build(example1, row11, Direction((1, 0)), marks)
    for p in [(0, 0), (3, 4), (-2, 9), (5, -5)]:
        for row in example1.basis:
            assert ddcs.dotted(infinite, p) == infinite.dotted(vadd(p, row))
    assert infinite.dotted((0, 0))
    assert infinite.dotted((0, 3))
    for u in row11:
        assert len(infinite.window(row11, u)) == 3
    with pytest.raises(SizeMismatchError):
        ddcs.InfiniteDDC(infinite.folded, sidon.B2Sequence(8, (0, 1, 3)))


def test_max_intersection(box23):
    assert ddcs.max_intersection(box23, box23) == (6, (0, 0))
    delta, t = ddcs.max_intersection(box23, shapes.box((3, 2)))
    assert delta == 4
    assert ddcs.max_intersection(shapes.box((3, 2)), box23)[0] == 4
    cross = Shape(((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)))
    assert ddcs.max_intersection(cross, shapes.box((2, 2)))[0] == 3
    assert ddcs.max_intersection(shapes.box((2, 2)), cross)[0] == 3


@pytest.fixture
def hexagon_ddc():
    return ddcs.InfiniteDDC.build(shapes.hexagon_lattice(8, 6), shapes.hexagon_shape(8, 6),
                                  Direction((1, 0)), sidon.bose(7))


def test_hexagon_ddc():
    shape = shapes.hexagon_shape(8, 6)
    pattern = ddcs.fold_b2(shapes.hexagon_lattice(8, 6), shape, Direction((1, 0)), sidon.bose(7))
    assert len(pattern) == 7
    assert ddcs.verify_ddc(pattern)
    assert math.isclose(ddcs.sqrt_reference(shape), 6.928, abs_tol=1e-3)


def test_find_rich_copy(hexagon_ddc):
    t, count = ddcs.find_rich_copy(hexagon_ddc, hexagon_ddc.shape)
    assert count == 7
    region = shapes.box((5, 5))
    delta, _ = ddcs.max_intersection(hexagon_ddc.shape, region)
    assert delta == 25
    t, count = ddcs.find_rich_copy(hexagon_ddc, region)
    assert count >= math.ceil(7 * delta / 48)
    assert count >= ddcs.rich_copy_floor(hexagon_ddc, region) == 4
    copy = ddcs.rich_copy(hexagon_ddc, region)
    assert len(copy) == count
    assert ddcs.verify_ddc(copy)
    for p in copy.dots:
        assert hexagon_ddc.dotted(vadd(p, t))


def test_subshape_copy(hexagon_ddc):
    region = Shape(tuple(p for p in hexagon_ddc.shape if abs(p[0]) + abs(p[1]) <= 3))
    _, count = ddcs.find_rich_copy(hexagon_ddc, region)
    assert count >= math.ceil(7 * len(region) / 48)


def test_mediated_copy():
    marks = sidon.bose(7)
    infinite = ddcs.InfiniteDDC.build(shapes.f2_lattice(8, 6), shapes.box((6, 8)), Direction((0, 1)), marks)
    mediator, region = shapes.box((4, 5)), shapes.box((3, 3))
    bound = ddcs.mediator_bound(7, infinite.shape, mediator, region)
    assert bound == ddcs.mediator_bound(7, shapes.box((6, 8)), shapes.box((4, 5)), shapes.box((3, 3)))
    assert bound == Fraction(63, 48)
    t, count, floor = ddcs.find_mediated_copy(infinite, mediator, region)
    assert floor == bound
    assert count >= math.ceil(bound)


@pytest.mark.parametrize('region', [shapes.raster_circle(3), shapes.raster_circle(2.5),
                                    shapes.raster_polygon(6, 3.5), shapes.raster_polygon(4, 4, math.pi / 4)])
def test_raster_copy(hexagon_ddc, region):
    delta, _ = ddcs.max_intersection(hexagon_ddc.shape, region)
    assert 0 < delta <= len(region)
    floor = ddcs.rich_copy_floor(hexagon_ddc, region)
    assert floor == math.ceil(7 * delta / 48)
    t, count = ddcs.find_rich_copy(hexagon_ddc, region)
    assert count >= floor
    copy = ddcs.rich_copy(hexagon_ddc, region)
    assert len(copy) == count
    assert ddcs.verify_ddc(copy)
    assert ddcs.sqrt_reference(region) == math.sqrt(len(region))
