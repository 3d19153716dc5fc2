import itertools
import logging
import random
import typing
from dataclasses import dataclass

from foldx.errors import NotAFoldingError
from foldx.foldings import Direction, FoldedRow, all_directions, count_distinct_folded_rows, is_folding, is_folding_2d
from foldx.lattices import Lattice, Tiling, integer_det

logger = logging.getLogger(__name__)


@dataclass
class CorpusConfig:
    dim: int
    count: int
    max_volume: int
    max_entry: int = 6
    seed: int = 0


class Corpus:
    Planar = CorpusConfig(
        dim=2,
        count=500,
        max_volume=40,
        max_entry=7
    )

    Spatial = CorpusConfig(
        dim=3,
        count=100,
        max_volume=30,
        max_entry=2
    )


def hermite_lattices(dim: int, max_volume: int) -> typing.Iterator[Lattice]:
    """
    Every lattice of volume at most max_volume, once each, by its Hermite form.
    """
    for volume in range(1, max_volume + 1):
        for pivots in _factorizations(volume, dim):
            slots = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
            for values in itertools.product(*(range(pivots[j]) for _, j in slots)):
                rows = [[0] * dim for _ in range(dim)]
                for i in range(dim):
                    rows[i][i] = pivots[i]
                for (i, j), v in zip(slots, values):
                    rows[i][j] = v
                yield Lattice(tuple(map(tuple, rows)))


def _factorizations(n: int, parts: int) -> typing.Iterator[typing.Tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for d in range(1, n + 1):
        if n % d == 0:
            for rest in _factorizations(n // d, parts - 1):
                yield (d,) + rest


def random_lattices(conf: CorpusConfig) -> typing.List[Lattice]:
    rng = random.Random(conf.seed)
    out = []
    while len(out) < conf.count:
        rows = [[rng.randint(-conf.max_entry, conf.max_entry) for _ in range(conf.dim)] for _ in range(conf.dim)]
        if 1 <= abs(integer_det(rows)) <= conf.max_volume:
            out.append(Lattice(tuple(map(tuple, rows))))
    return out


@dataclass
class CorpusReport:
    lattices: int
    checks: int
    mismatches: typing.List[typing.Tuple[Lattice, str]]

    def __str__(self) -> str:
        return f"{self.lattices} lattices, {self.checks} checks, {len(self.mismatches)} mismatches"


def walk_succeeds(tiling: Tiling, direction: Direction) -> bool:
    try:
        FoldedRow.walk(tiling, direction)
    except NotAFoldingError:
        return False
    return True


def predicate_corpus(conf: CorpusConfig) -> CorpusReport:
    """
    Compare the gcd criterion with the walk on every lattice of a random corpus and
    every canonical direction.
    """
    lattices = random_lattices(conf)
    directions = all_directions(conf.dim)
    checks = 0
    mismatches = []
    for lattice in lattices:
        tiling = Tiling.standard(lattice)
        for direction in directions:
            walked = walk_succeeds(tiling, direction)
            predicted = [is_folding(lattice, direction)]
            if conf.dim == 2:
                predicted.append(is_folding_2d(lattice, direction))
            checks += 1
            if any(p != walked for p in predicted):
                mismatches.append((lattice, str(direction)))
    report = CorpusReport(len(lattices), checks, mismatches)
    logger.info("%s", report)
    return report


def distinct_row_search(dim: int, max_volume: int) -> typing.List[Lattice]:
    """
    Lattices in Hermite form of volume at most max_volume whose (3^D - 1) / 2 canonical
    directions all fold into pairwise different folded-rows.
    """
    target = (3 ** dim - 1) // 2
    found = []
    for lattice in hermite_lattices(dim, max_volume):
        if count_distinct_folded_rows(lattice, Tiling.standard(lattice).shape) == target:
            found.append(lattice)
    logger.info("%d lattices of dimension %d and volume <= %d reach %d folded-rows",
                len(found), dim, max_volume, target)
    return found


def best_row_count(dim: int, max_volume: int) -> typing.Tuple[int, typing.Optional[Lattice]]:
    best, witness = 0, None
    for lattice in hermite_lattices(dim, max_volume):
        count = count_distinct_folded_rows(lattice, Tiling.standard(lattice).shape)
        if count > best:
            best, witness = count, lattice
    return best, witness


def minimal_volume(dim: int, max_volume: int) -> typing.Optional[int]:
    for lattice in hermite_lattices(dim, max_volume):
        if count_distinct_folded_rows(lattice, Tiling.standard(lattice).shape) == (3 ** dim - 1) // 2:
            return lattice.volume
    return None
