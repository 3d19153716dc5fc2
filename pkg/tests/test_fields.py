import pytest
from hypothesis import given, settings, strategies as st
from foldx import fields
from foldx.errors import EnvelopeError, FieldError


def test_primitive_polynomial():
    assert fields.primitive_polynomial(2, 4) == (1, 1, 0, 0, 1)
    assert fields.primitive_polynomial(2, 1) == (1, 1)
    assert fields.primitive_polynomial(3, 2) == (2, 1, 1)
    assert fields.primitive_polynomial(5, 1) == (2, 1)
    with pytest.raises(FieldError):
        fields.primitive_polynomial(6, 1)


def test_irreducible():
    assert fields.is_irreducible([1, 0, 1], 3)
    assert not fields.is_irreducible([2, 0, 1], 3)
    assert fields.is_irreducible([1, 1, 0, 0, 1], 2)
    assert not fields.is_irreducible([1, 0, 0, 0, 1], 2)
    assert not fields.is_primitive([1, 0, 1], 3)


def test_make_field():
    f16 = fields.make_field(2, 4)
    assert f16.q == 16
    assert f16.modulus == (1, 1, 0, 0, 1)
    f9 = fields.make_field(3, 2)
    assert f9.q == 9
    assert f9.modulus == (2, 1, 1)
    assert str(f9) == "GF(3^2), modulus=[2, 1, 1], g=[0, 1]"
    f2 = fields.make_field(2, 1)
    assert f2.g == 1
    assert f2.dlog(1) == 0
    assert fields.make_field(5, 1).g == 3
    assert fields.make_field(2, 4) is f16


def test_field_errors():
    with pytest.raises(FieldError):
        fields.Field(4, 1)
    with pytest.raises(EnvelopeError):
        fields.Field(2, 21)
    with pytest.raises(ValueError):
        fields.Field(2, 0)
    f = fields.make_field(2, 4)
    with pytest.raises(FieldError):
        f.dlog(0)
    with pytest.raises(ValueError):
        f.dlog(16)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_dlog():
    f16 = fields.make_field(2, 4)
    assert fields.dlog(f16, 1) == 0
    assert fields.dlog(f16, f16.g) == 1
    f9 = fields.make_field(3, 2)
    assert f9.dlog(f9.element([1, 1])) == 7
    assert [f9.coeffs(f9.exp(i)) for i in range(4)] == [[1, 0], [0, 1], [1, 2], [2, 2]]


@pytest.mark.parametrize('p,k', [(2, 1), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 1)])
def test_exp_log_inverse(p, k):
    f = fields.make_field(p, k)
    powers = [f.exp(i) for i in range(f.order)]
    assert sorted(powers) == list(range(1, f.q))
    for a in range(1, f.q):
        assert f.exp(f.dlog(a)) == a
        assert f.mul(a, f.inv(a)) == 1


def test_arithmetic():
    f9 = fields.make_field(3, 2)
    assert f9.add(f9.element([2, 1]), f9.element([2, 2])) == 1
    assert f9.sub(5, 5) == 0
    assert f9.add(4, f9.neg(4)) == 0
    assert f9.pow(0, 0) == 1 and f9.pow(0, 3) == 0
    assert f9.div(f9.mul(4, 7), 7) == 4
    f16 = fields.make_field(2, 4)
    assert f16.add(0b1010, 0b0110) == 0b1100
    assert f16.mul(f16.g, f16.exp(14)) == 1


def test_subfield():
    f16 = fields.make_field(2, 4)
    assert len(f16.subfield(2)) == 4
    assert f16.subfield(1) == [0, 1]
    assert len(f16.subfield(4)) == 16
    with pytest.raises(FieldError):
        f16.subfield(3)
    assert fields.make_field(3, 2).subfield(1) == [0, 1, 2]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 4), (3, 3), (5, 2)]), st.data())
def test_field_axioms(pk, data):
    f = fields.make_field(*pk)
    a, b, c = (data.draw(st.integers(0, f.q - 1)) for _ in range(3))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.pow(f.add(a, b), f.p) == f.add(f.pow(a, f.p), f.pow(b, f.p))
