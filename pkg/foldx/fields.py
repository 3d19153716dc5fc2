import functools
import logging
import typing

import sympy

from foldx.errors import EnvelopeError, FieldError

logger = logging.getLogger(__name__)

Poly = typing.List[int]


def _digits(n: int, p: int, k: int) -> Poly:
    out = []
    for _ in range(k):
        n, c = divmod(n, p)
        out.append(c)
    return out


def _undigits(coeffs: typing.Sequence[int], p: int) -> int:
    n = 0
    for c in reversed(coeffs):
        n = n * p + c % p
    return n


def poly_rem(a: Poly, b: Poly, p: int) -> Poly:
    """
    Remainder of a modulo a monic b over GF(p). Coefficients are stored low to high.
    """
    a = [c % p for c in a]
    n = len(b) - 1
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * b[j]) % p
    return a[:n] + [0] * (n - len(a[:n]))


def poly_mulmod(a: Poly, b: Poly, mod: Poly, p: int) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return poly_rem(out, mod, p)


def poly_powmod(a: Poly, e: int, mod: Poly, p: int) -> Poly:
    result = poly_rem([1], mod, p)
    base = poly_rem(a, mod, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod, p)
        base = poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(modulus: Poly, p: int) -> bool:
    # trial division by every monic polynomial of degree 1 .. k // 2
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for n in range(p ** d):
            if not any(poly_rem(modulus, _digits(n, p, d) + [1], p)):
                return False
    return True


def is_primitive(modulus: Poly, p: int) -> bool:
    k = len(modulus) - 1
    order = p ** k - 1
    one = poly_rem([1], modulus, p)
    x = [0, 1]
    if poly_powmod(x, order, modulus, p) != one:
        return False
    return all(poly_powmod(x, order // r, modulus, p) != one for r in sympy.factorint(order))


@functools.lru_cache(maxsize=None)
def primitive_polynomial(p: int, k: int) -> typing.Tuple[int, ...]:
    """
    The least monic primitive polynomial of degree k over GF(p), coefficients low to high.

    Candidates are ordered by the integer whose base-p digits are the non-leading
    coefficients, so for p = 2 this is the usual ordering of feedback masks.
    """
    if not sympy.isprime(p):
        raise FieldError(f"{p} is not a prime!")
    if k < 1:
        raise ValueError("the degree must be positive!")
    for n in range(1, p ** k):
        coeffs = _digits(n, p, k) + [1]
        if coeffs[0] and is_primitive(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no primitive polynomial of degree {k} over GF({p})!")


class Field:
    """
    GF(p^k) in polynomial representation modulo the least primitive polynomial.

    Elements are ints whose base-p digits are the polynomial coefficients, low to high,
    so 0 and 1 are the field's zero and one and the class of x is the generator g.
    For k = 1 that makes g the root of the least primitive linear polynomial x - g,
    not necessarily the least primitive element: GF(5) gets g = 3 from x + 2.
    """
    MAX_SIZE = 2 ** 20

    def __init__(self, p: int, k: int) -> None:
        if not sympy.isprime(p):
            raise FieldError(f"{p} is not a prime!")
        if k < 1:
            raise ValueError("the degree must be positive!")
        if p ** k > self.MAX_SIZE:
            raise EnvelopeError(f"the field size must not exceed {self.MAX_SIZE}!")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = primitive_polynomial(p, k)
        if not is_irreducible(list(self.modulus), p):
            raise FieldError(f"the modulus {list(self.modulus)} is reducible!")
        self._exp, self._log = self._build_tables()
        logger.debug("built %s", self)

    def _times_x(self, a: int) -> int:
        if self.p == 2:
            a <<= 1
            if a >> self.k:
                a ^= _undigits(self.modulus, 2)
            return a
        coeffs = [0] + _digits(a, self.p, self.k)
        top = coeffs[-1]
        if top:
            coeffs = [(c - top * m) % self.p for c, m in zip(coeffs, self.modulus)]
        return _undigits(coeffs[:self.k], self.p)

    def _build_tables(self) -> typing.Tuple[typing.List[int], typing.List[int]]:
        exp = [0] * (self.q - 1)
        log = [-1] * self.q
        a = 1
        for i in range(self.q - 1):
            exp[i] = a
            log[a] = i
            a = self._times_x(a)
        return exp, log

    @property
    def order(self) -> int:
        return self.q - 1

    @property
    def g(self) -> int:
        return self._exp[1 % self.order]

    def element(self, coeffs: typing.Sequence[int]) -> int:
        if len(coeffs) > self.k:
            raise ValueError(f"an element of GF({self.p}^{self.k}) has at most {self.k} coefficients!")
        return _undigits(coeffs, self.p)

    def coeffs(self, a: int) -> Poly:
        return _digits(a, self.p, self.k)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return _undigits([u + v for u, v in zip(self.coeffs(a), self.coeffs(b))], self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _undigits([-u for u in self.coeffs(a)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse!")
        return self._exp[-self._log[a] % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse!")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % self.order]

    def exp(self, i: int) -> int:
        return self._exp[i % self.order]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no discrete logarithm!")
        if not 0 < a < self.q:
            raise ValueError(f"{a} is not an element of GF({self.p}^{self.k})!")
        return self._log[a]

    def subfield(self, k: int) -> typing.List[int]:
        if self.k % k:
            raise FieldError(f"GF({self.p}^{k}) is not a subfield of GF({self.p}^{self.k})!")
        size = self.p ** k
        return [a for a in range(self.q) if self.pow(a, size) == a]

    def __iter__(self) -> typing.Iterator[int]:
        return iter(range(self.q))

    def __len__(self) -> int:
        return self.q

    def __str__(self) -> str:
        return f"GF({self.p}^{self.k}), modulus={list(self.modulus)}, g={self.coeffs(self.g)}"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int) -> Field:
    return Field(p, k)


def dlog(field: Field, a: int) -> int:
    return field.dlog(a)
