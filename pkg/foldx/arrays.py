import logging
import math
import typing
from dataclasses import dataclass

import torch

from foldx.errors import DimensionError, EnvelopeError, NotATilingError, SizeMismatchError
from foldx.fields import primitive_polynomial
from foldx.foldings import Direction, FoldedRow, walk_folded_row
from foldx.lattices import Lattice, Shape, is_tiling
from foldx.shapes import box, f1_lattice

logger = logging.getLogger(__name__)


def _windows_distinct(codes: torch.Tensor, size: int) -> bool:
    # every nonzero window exactly once, the zero window never
    return codes.numel() == 2 ** size - 1 and bool(codes.ne(0).all()) and torch.unique(codes).numel() == codes.numel()


@dataclass(frozen=True)
class MSequence:
    MAX_DEGREE = 20

    k: int
    feedback: typing.Tuple[int, ...]
    bits: typing.Tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def windows_ok(self) -> bool:
        n = self.period
        bits = torch.tensor(self.bits, dtype=torch.int64)
        idx = (torch.arange(n).unsqueeze(1) + torch.arange(self.k)) % n
        codes = (bits[idx] << torch.arange(self.k)).sum(1)
        return _windows_distinct(codes, self.k)

    def __str__(self) -> str:
        return ''.join(map(str, self.bits))


def m_sequence(k: int) -> MSequence:
    """
    One period of the LFSR sequence s_{t+k} = sum c_i s_{t+i} over the least primitive
    polynomial x^k + c_{k-1} x^{k-1} + ... + c_0, started from the all-ones state.
    """
    if k < 1:
        raise ValueError("the register length must be positive!")
    if k > MSequence.MAX_DEGREE:
        raise EnvelopeError(f"the register length must not exceed {MSequence.MAX_DEGREE}!")
    poly = primitive_polynomial(2, k)
    taps = [i for i in range(k) if poly[i]]
    n = 2 ** k - 1
    bits = [1] * k
    for t in range(n - k):
        bits.append(sum(bits[t + i] for i in taps) % 2)
    return MSequence(k, poly, tuple(bits[:n]))


class BinaryPattern:
    """
    A sequence folded into a shape; bit(p) is defined on the whole grid through the
    folding index.
    """

    def __init__(self, folded: FoldedRow, bits: typing.Sequence[int]) -> None:
        if len(bits) != len(folded):
            raise SizeMismatchError(f"the sequence has {len(bits)} bits but the shape has {len(folded)} points!")
        self.folded = folded
        self.bits = tuple(int(b) for b in bits)

    @property
    def dim(self) -> int:
        return self.folded.tiling.dim

    def bit(self, p: typing.Sequence[int]) -> int:
        return self.bits[self.folded.index(p)]

    def read_row(self) -> typing.Tuple[int, ...]:
        return tuple(self.bit(p) for p in self.folded.order)

    def dumps(self) -> str:
        shape = self.folded.shape
        if shape.dim != 2:
            return '\n'.join(' '.join(map(str, p)) + f" {self.bit(p)}" for p in shape) + '\n'
        (x0, y0), (x1, y1) = shape.bounds()
        lines = []
        for y in range(y1, y0 - 1, -1):
            row = ''.join(str(self.bit((x, y))) if (x, y) in shape else ' ' for x in range(x0, x1 + 1))
            lines.append(row.rstrip())
        return '\n'.join(lines) + '\n'


def fold_sequence(lattice: Lattice, shape: Shape, direction: Direction, seq: typing.Sequence[int]) -> BinaryPattern:
    if len(seq) != len(shape):
        raise SizeMismatchError(f"the sequence has {len(seq)} bits but the shape has {len(shape)} points!")
    return BinaryPattern(walk_folded_row(lattice, shape, direction), seq)


def check_window_property(pattern: BinaryPattern, k1: int, k2: int) -> bool:
    """
    Slide a k1 x k2 window (k1 along the first axis) over one period of translates and
    check that every nonzero binary k1 x k2 matrix shows up exactly once.
    """
    if pattern.dim != 2:
        raise DimensionError("the window property is defined for two-dimensional patterns!")
    folded = pattern.folded
    n = len(folded)
    strides = torch.tensor([folded.stride(0), folded.stride(1)], dtype=torch.int64)
    origins = torch.tensor(folded.order, dtype=torch.int64)
    offsets = torch.tensor([(a, b) for a in range(k1) for b in range(k2)], dtype=torch.int64)
    idx = ((origins.unsqueeze(1) + offsets.unsqueeze(0)) * strides).sum(-1) % n
    bits = torch.tensor(pattern.bits, dtype=torch.int64)
    codes = (bits[idx] << torch.arange(k1 * k2)).sum(1)
    return _windows_distinct(codes, k1 * k2)


def array_sides(k1: int, k2: int) -> typing.Tuple[int, int]:
    n1 = 2 ** k1 - 1
    n2 = (2 ** (k1 * k2) - 1) // n1
    if n1 < 2 or n2 < 2 or math.gcd(n1, n2) != 1:
        raise ValueError(f"a {k1}x{k2} window needs coprime array sides above 1, got {n1} and {n2}!")
    return n1, n2


def pseudo_random_array(k1: int, k2: int) -> BinaryPattern:
    n1, n2 = array_sides(k1, k2)
    seq = m_sequence(k1 * k2)
    return fold_sequence(f1_lattice(n1, n2), box((n1, n2)), Direction((1, 1)), seq.bits)


def window_equivalence_experiment(lattice: Lattice, shape: Shape, direction: Direction,
                                  k1: int, k2: int) -> typing.Tuple[bool, bool]:
    """
    Fold the same m-sequence into `shape` and into the n1 x n2 array tiled by the same
    lattice, and report both window checks. The two always agree.
    """
    n1, n2 = array_sides(k1, k2)
    array = box((n1, n2))
    if not is_tiling(lattice, array):
        raise NotATilingError(f"the lattice does not tile the {n1}x{n2} array!")
    seq = m_sequence(k1 * k2).bits
    shape_ok = check_window_property(fold_sequence(lattice, shape, direction, seq), k1, k2)
    array_ok = check_window_property(fold_sequence(lattice, array, direction, seq), k1, k2)
    if shape_ok != array_ok:
        logger.error("window checks disagree: shape %s, array %s", shape_ok, array_ok)
    return shape_ok, array_ok
