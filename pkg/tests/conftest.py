import os.path
import pytest
from foldx import lattices, shapes


@pytest.fixture
def datadir():
    return os.path.join(os.path.dirname(__file__), '../foldx/data')


@pytest.fixture
def example1(datadir):
    return lattices.Lattice.load(os.path.join(datadir, 'example1.lat'))


@pytest.fixture
def row11(datadir):
    return lattices.Shape.load(os.path.join(datadir, 'row11.shp'))


@pytest.fixture
def box23():
    return shapes.box((2, 3))


@pytest.fixture
def diag23():
    return lattices.Lattice(((2, 0), (0, 3)))


@pytest.fixture
def f2_23(datadir):
    return lattices.Lattice.load(os.path.join(datadir, 'f2_box23.lat'))
