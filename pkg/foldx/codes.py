import enum
import itertools
import logging
import math
import typing
from dataclasses import dataclass

import torch

from foldx.errors import SizeMismatchError, VerificationError
from foldx.fields import Field, make_field
from foldx.foldings import FoldedRow
from foldx.lattices import Point, vadd

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoxGeometry:
    dims: typing.Tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(n) for n in self.dims)
        object.__setattr__(self, 'dims', dims)
        if not dims or any(n < 1 for n in dims):
            raise ValueError("the sides of a box must be positive!")

    @property
    def dim(self) -> int:
        return len(self.dims)

    @property
    def positions(self) -> typing.List[Point]:
        return list(itertools.product(*map(range, self.dims)))

    def __contains__(self, p: object) -> bool:
        return all(0 <= v < n for v, n in zip(p, self.dims))

    def index(self, p: Point) -> int:
        i = 0
        for v, n in zip(p, self.dims):
            i = i * n + v
        return i

    def stride(self, axis: int) -> int:
        return math.prod(self.dims[axis + 1:])


@dataclass(frozen=True)
class FoldedGeometry:
    folded: FoldedRow

    @property
    def dim(self) -> int:
        return self.folded.tiling.dim

    @property
    def positions(self) -> typing.List[Point]:
        return list(self.folded.order)

    def __contains__(self, p: object) -> bool:
        return p in self.folded.shape

    def index(self, p: Point) -> int:
        return self.folded.index_of[p]

    def stride(self, axis: int) -> int:
        return self.folded.stride(axis)


Geometry = typing.Union[BoxGeometry, FoldedGeometry]


class ErrorKind(enum.Enum):
    NONE = 'none'
    SINGLE = 'single'
    BURST2 = 'burst2'
    UNCORRECTABLE = 'uncorrectable'


@dataclass(frozen=True)
class ErrorReport:
    kind: ErrorKind
    positions: typing.Tuple[Point, ...] = ()
    axis: typing.Optional[int] = None

    def __str__(self) -> str:
        if self.kind == ErrorKind.BURST2:
            return f"burst2 {self.positions[0]} {self.positions[1]} axis {self.axis}"
        if self.kind == ErrorKind.SINGLE:
            return f"single {self.positions[0]}"
        return self.kind.value


def _gf2_rref(h: torch.Tensor) -> typing.Tuple[torch.Tensor, typing.List[int]]:
    r = h.clone()
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = torch.nonzero(r[row:, col]).flatten()
        if nz.numel() == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        mask = r[:, col].clone()
        mask[row] = 0
        r = (r + mask.unsqueeze(1) * r[row]) % 2
        pivots.append(col)
        row += 1
    return r[:row], pivots


class BurstCode:
    """
    A binary code correcting one error or two errors adjacent along an axis.

    Column i of the parity-check matrix is [1; A·p mod 2; α^index(p)] where p is the
    position, A has the binary expansions of 0 .. D-1 as columns and α is the primitive
    element of GF(2^m). Positions are numbered in index order: row-major for boxes,
    folded-row order for foldings.
    """

    def __init__(self, geometry: Geometry, m: int) -> None:
        self.geometry = geometry
        self.m = m
        self.field: Field = make_field(2, m)
        self.positions = geometry.positions
        n = self.field.order
        if isinstance(geometry, FoldedGeometry):
            if len(self.positions) != n:
                raise SizeMismatchError(f"a folded geometry needs exactly {n} positions, got {len(self.positions)}!")
        elif len(self.positions) > n:
            raise SizeMismatchError(f"GF(2^{m}) supports at most {n} positions, got {len(self.positions)}!")
        self.dim = geometry.dim
        self.d = (self.dim - 1).bit_length()
        self.A = torch.tensor([[(j >> b) & 1 for j in range(self.dim)] for b in range(self.d)],
                              dtype=torch.int64).reshape(self.d, self.dim)
        self.H = torch.stack([self._column(p) for p in self.positions], dim=1)
        self._rref, self.pivots = _gf2_rref(self.H)
        pivots = set(self.pivots)
        self.free = [i for i in range(len(self.positions)) if i not in pivots]
        logger.debug("built a %dx%d parity-check matrix of rank %d", self.redundancy, len(self.positions), self.rank)

    def _column(self, p: Point) -> torch.Tensor:
        a = (self.A * torch.tensor(p, dtype=torch.int64)).sum(1) % 2
        f = self.field.coeffs(self.field.exp(self.geometry.index(p)))
        return torch.cat([torch.ones(1, dtype=torch.int64), a, torch.tensor(f, dtype=torch.int64)])

    @property
    def length(self) -> int:
        return len(self.positions)

    @property
    def redundancy(self) -> int:
        return self.m + self.d + 1

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def info_length(self) -> int:
        return self.length - self.rank

    def index(self, p: Point) -> int:
        return self.geometry.index(tuple(p))

    def syndrome(self, word: torch.Tensor) -> torch.Tensor:
        word = torch.as_tensor(word, dtype=torch.int64).flatten()
        if word.numel() != self.length:
            raise SizeMismatchError(f"expected a word of {self.length} bits, got {word.numel()}!")
        return (self.H * word).sum(1) % 2

    def error_word(self, positions: typing.Iterable[Point]) -> torch.Tensor:
        word = torch.zeros(self.length, dtype=torch.int64)
        for p in positions:
            word[self.index(p)] ^= 1
        return word

    def encode(self, info: torch.Tensor) -> torch.Tensor:
        info = torch.as_tensor(info, dtype=torch.int64).flatten()
        if info.numel() != self.info_length:
            raise SizeMismatchError(f"expected {self.info_length} information bits, got {info.numel()}!")
        word = torch.zeros(self.length, dtype=torch.int64)
        word[self.free] = info
        if self.pivots:
            word[self.pivots] = (self._rref[:, self.free] * info).sum(1) % 2
        return word

    def decode(self, received: torch.Tensor) -> ErrorReport:
        s = self.syndrome(torch.as_tensor(received))
        if not s.any():
            return ErrorReport(ErrorKind.NONE)
        f = self.field
        sa = s[1:1 + self.d].tolist()
        sf = f.element(s[1 + self.d:].tolist())
        if sf == 0:
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        if s[0] == 1:
            i = f.dlog(sf)
            if i < self.length and torch.equal(self.H[:, i], s):
                return ErrorReport(ErrorKind.SINGLE, (self.positions[i],))
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        axis = sum(bit << b for b, bit in enumerate(sa))
        if axis >= self.dim:
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        t = f.add(1, f.exp(self.geometry.stride(axis)))
        if t == 0:
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        i = (f.dlog(sf) - f.dlog(t)) % f.order
        if i >= self.length:
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        p = self.positions[i]
        q = vadd(p, tuple(int(k == axis) for k in range(self.dim)))
        if q not in self.geometry:
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        if not torch.equal((self.H[:, i] + self.H[:, self.index(q)]) % 2, s):
            return ErrorReport(ErrorKind.UNCORRECTABLE)
        return ErrorReport(ErrorKind.BURST2, (p, q), axis)


def build_code(geometry: Geometry, m: int) -> BurstCode:
    return BurstCode(geometry, m)


def correctable_patterns(code: BurstCode) -> typing.Iterator[ErrorReport]:
    yield ErrorReport(ErrorKind.NONE)
    for p in code.positions:
        yield ErrorReport(ErrorKind.SINGLE, (p,))
    for axis in range(code.dim):
        unit = tuple(int(k == axis) for k in range(code.dim))
        for p in code.positions:
            q = vadd(p, unit)
            if q in code.geometry:
                yield ErrorReport(ErrorKind.BURST2, (p, q), axis)


@dataclass
class VerificationReport:
    patterns: int
    distinct_syndromes: int
    decode_ok: bool

    def __str__(self) -> str:
        status = 'OK' if self.decode_ok else 'FAILED'
        return f"{self.patterns} patterns, {self.distinct_syndromes} distinct syndromes, decode {status}"


def verify_code(code: BurstCode, seed: int = 0) -> VerificationReport:
    """
    Decode every correctable pattern, alone and on top of a random codeword, and count
    the distinct syndromes they produce.
    """
    g = torch.Generator().manual_seed(seed)
    patterns = list(correctable_patterns(code))
    syndromes = []
    decode_ok = True
    for expected in patterns:
        error = code.error_word(expected.positions)
        syndromes.append(code.syndrome(error))
        info = torch.randint(0, 2, (code.info_length,), generator=g)
        for word in (error, (code.encode(info) + error) % 2):
            if code.decode(word) != expected:
                logger.debug("decoding %s gave %s", expected, code.decode(word))
                decode_ok = False
    distinct = torch.unique(torch.stack(syndromes), dim=0).size(0)
    report = VerificationReport(len(patterns), distinct, decode_ok)
    logger.info("%s", report)
    return report


def redundancy_report(code: BurstCode) -> typing.Tuple[int, int]:
    count = sum(1 for _ in correctable_patterns(code))
    trivial = (count - 1).bit_length()
    if code.redundancy > trivial + 1:
        logger.error("redundancy %d exceeds the trivial bound %d by more than one", code.redundancy, trivial)
        raise VerificationError(f"redundancy {code.redundancy} exceeds the trivial bound {trivial} plus one!")
    return code.redundancy, trivial
