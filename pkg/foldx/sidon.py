import typing
from dataclasses import dataclass

import sympy
import torch

from foldx.errors import FieldError
from foldx.fields import make_field


def _check(n: int, elements: typing.Sequence[int]) -> torch.Tensor:
    if n < 1:
        raise ValueError("the modulus must be positive!")
    if len(set(elements)) != len(elements):
        raise ValueError("the elements must be distinct!")
    if any(not 0 <= e < n for e in elements):
        raise ValueError(f"the elements must lie in [0, {n})!")
    return torch.tensor(list(elements), dtype=torch.int64)


def verify_b2(n: int, elements: typing.Sequence[int]) -> bool:
    e = _check(n, elements)
    m = len(elements)
    diff = (e.unsqueeze(1) - e.unsqueeze(0)) % n
    off = ~torch.eye(m, dtype=torch.bool)
    return torch.unique(diff[off]).numel() == m * (m - 1)


def verify_b2_sums(n: int, elements: typing.Sequence[int]) -> bool:
    e = _check(n, elements)
    m = len(elements)
    i, j = torch.triu_indices(m, m)
    sums = (e[i] + e[j]) % n
    return torch.unique(sums).numel() == sums.numel()


@dataclass(frozen=True)
class B2Sequence:
    n: int
    elements: typing.Tuple[int, ...]

    def __post_init__(self) -> None:
        elements = tuple(sorted(int(e) for e in self.elements))
        object.__setattr__(self, 'elements', elements)
        if not verify_b2(self.n, elements):
            raise ValueError(f"{list(elements)} is not a B2 sequence mod {self.n}!")

    @property
    def m(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> typing.Iterator[int]:
        return iter(self.elements)

    def __contains__(self, e: object) -> bool:
        return e in self.elements

    def shift(self, c: int) -> 'B2Sequence':
        return B2Sequence(self.n, tuple((e + c) % self.n for e in self.elements))

    def normalized(self) -> 'B2Sequence':
        return self.shift(-self.elements[0])


def prime_power(q: int) -> typing.Tuple[int, int]:
    if sympy.isprime(q):
        return q, 1
    pp = sympy.perfect_power(q)
    if not pp or not sympy.isprime(pp[0]):
        raise FieldError(f"{q} is not a prime power!")
    return int(pp[0]), int(pp[1])


def bose(q: int) -> B2Sequence:
    """
    q elements of Z_{q^2-1} with distinct pairwise differences: the logarithms of θ + a
    over the subfield GF(q) of GF(q^2), θ the primitive element of GF(q^2).
    θ + a is never zero because θ lies outside the subfield.
    """
    p, k = prime_power(q)
    field = make_field(p, 2 * k)
    theta = field.g
    elements = [field.dlog(field.add(theta, a)) for a in field.subfield(k)]
    return B2Sequence(q * q - 1, tuple(elements))
