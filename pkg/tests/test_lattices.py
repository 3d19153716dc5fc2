import os.path
import pytest
from hypothesis import assume, given, settings, strategies as st
from foldx import lattices, shapes
from foldx.errors import DimensionError, EnvelopeError, NotATilingError
from foldx.lattices import Lattice, Shape, Tiling


def test_volume(example1):
    assert lattices.volume(example1) == 11
    assert lattices.volume(Lattice(((1, 0), (0, 1)))) == 1
    assert lattices.volume(Lattice(((2, 0), (0, 3)))) == 6
    assert Lattice(((0, 1), (1, 0))).volume == 1


def test_hermite_form(example1, f2_23):
    assert example1.hermite_form == ((1, 8), (0, 11))
    assert f2_23.hermite_form == ((1, 3), (0, 6))
    assert Lattice(((2, 0), (0, 3))).hermite_form == ((2, 0), (0, 3))
    h = Lattice(((2, 1, 0), (0, 3, 1), (1, 0, 2))).hermite_form
    assert all(h[i][j] == 0 for i in range(3) for j in range(i))
    assert h[0][0] * h[1][1] * h[2][2] == 13


def test_residue(example1, row11, diag23):
    assert lattices.residue(diag23, (5, 7)) == lattices.residue(diag23, (1, 1))
    assert lattices.residue(example1, (0, 11)) == lattices.residue(example1, (0, 0))
    assert len({example1.residue(p) for p in row11}) == 11
    assert all(v >= 0 for v in example1.residue((-7, -100)))
    with pytest.raises(DimensionError):
        example1.residue((1, 2, 3))


def test_contains_and_coefficients(example1):
    assert example1.contains((0, 11))
    assert example1.contains((1, -3))
    assert not example1.contains((1, 0))
    assert example1.coefficients((1, -3)) == (-2, 1)
    assert example1.coefficients((0, 11)) == (7, -3)
    with pytest.raises(ValueError):
        example1.coefficients((1, 0))


def test_is_tiling(example1, row11, diag23, box23):
    assert lattices.is_tiling(diag23, box23)
    assert lattices.is_tiling(example1, row11)
    assert not lattices.is_tiling(diag23, shapes.box((2, 2)))
    assert lattices.is_tiling(example1, shapes.box((11, 1)))
    assert not lattices.is_tiling(example1, Shape(tuple((0, j) for j in range(10)) + ((1, -3),)))
    with pytest.raises(DimensionError):
        lattices.is_tiling(diag23, shapes.segment(6))


def test_not_a_tiling(diag23):
    with pytest.raises(NotATilingError):
        Tiling(diag23, shapes.box((1, 6)))
    with pytest.raises(RuntimeError):
        Tiling(diag23, shapes.box((3, 3)))


def test_center_of(example1, row11, diag23, box23):
    assert lattices.center_of(example1, row11, (1, 0)) == (1, -3)
    assert lattices.center_of(diag23, box23, (2, 4)) == (2, 3)
    for p in row11:
        assert lattices.center_of(example1, row11, p) == (0, 0)


def test_standard_tiling(example1):
    tiling = Tiling.standard(example1)
    assert len(tiling) == 11
    assert set(tiling.shape) == {(0, j) for j in range(11)}


def test_envelope():
    with pytest.raises(EnvelopeError):
        Lattice(tuple(tuple(int(i == j) for j in range(9)) for i in range(9)))
    with pytest.raises(EnvelopeError):
        Lattice(((2 ** 16, 0), (0, 2 ** 16)))
    with pytest.raises(DimensionError):
        Lattice(((1, 2), (2, 4)))
    with pytest.raises(DimensionError):
        Lattice(((1, 2, 3), (0, 1, 0)))


def test_shape_invariants():
    with pytest.raises(ValueError):
        Shape(((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        Shape(((0, 0), (0, 1), (0, 1)))
    with pytest.raises(DimensionError):
        Shape(((0, 0), (1,)))
    s = Shape(((0, 0), (1, 0), (-1, 2)))
    assert (1, 0) in s and (2, 2) not in s
    assert s.bounds() == ((-1, 0), (1, 2))
    assert len(s) == 3 and s.dim == 2


def test_text_formats(datadir, example1):
    assert example1 == Lattice(((3, 2), (7, 1)))
    assert Lattice.loads(example1.dumps()) == example1
    assert Lattice.parse("3,2;7,1") == example1

    text = "dim 2\n# a 2x2 box centred at (1, 1)\ncenter 1 1\n0 0\n0 1\n1 0\n1 1\n"
    s = Shape.loads(text)
    assert set(s) == {(-1, -1), (-1, 0), (0, -1), (0, 0)}
    assert Shape.loads(s.dumps()) == s

    with pytest.raises(ValueError):
        Lattice.loads("dim 2\n1 0\n")
    with pytest.raises(ValueError):
        Shape.loads("2\n0 0\n")
    with pytest.raises(ValueError):
        Shape.loads("dim 2\n0 0 0\n")


def test_data_files(datadir, box23):
    assert Shape.load(os.path.join(datadir, 'box23.shp')) == box23
    assert Lattice.load(os.path.join(datadir, 'hexagon86.lat')) == shapes.hexagon_lattice(8, 6)


def test_dump_load(tmp_path, example1, box23):
    lat = os.path.join(tmp_path, 'a.lat')
    shp = os.path.join(tmp_path, 'a.shp')
    example1.dump(lat)
    box23.dump(shp)
    assert Lattice.load(lat) == example1
    assert Shape.load(shp) == box23


basis2d = st.lists(st.integers(-5, 5), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(basis2d, st.integers(-20, 20), st.integers(-20, 20))
def test_center_translation(entries, x, y):
    rows = ((entries[0], entries[1]), (entries[2], entries[3]))
    assume(1 <= abs(entries[0] * entries[3] - entries[1] * entries[2]) <= 40)
    tiling = Tiling.standard(Lattice(rows))
    p = (x, y)
    c = tiling.center_of(p)
    assert lattices.vsub(p, c) in tiling.shape
    assert tiling.lattice.contains(c)
    for row in rows:
        assert tiling.center_of(lattices.vadd(p, row)) == lattices.vadd(c, row)


@settings(max_examples=60, deadline=None)
@given(basis2d, st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_residue_is_coset_label(entries, p, q):
    rows = ((entries[0], entries[1]), (entries[2], entries[3]))
    assume(entries[0] * entries[3] - entries[1] * entries[2] != 0)
    lattice = Lattice(rows)
    same = lattice.residue(p) == lattice.residue(q)
    try:
        lattice.coefficients(lattices.vsub(p, q))
        solvable = True
    except ValueError:
        solvable = False
    assert same == solvable
