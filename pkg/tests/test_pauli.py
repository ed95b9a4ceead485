from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import kron_pauli
from stabloc.errors import ResourceError, ValidationError
from stabloc.pauli import PauliOperator, PauliSum, commutes, multiply, pauli_decompose, sum_to_dense

labels = st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.sampled_from("+-"), st.text("IXYZ", min_size=n, max_size=n))
).map(lambda t: t[0] + t[1])


def pair_of_labels():
    return st.integers(1, 5).flatmap(
        lambda n: st.tuples(
            *[st.tuples(st.sampled_from("+-"), st.text("IXYZ", min_size=n, max_size=n)).map("".join)] * 2
        )
    )


@settings(max_examples=200, deadline=None)
@given(labels)
def test_dense_matches_kron(label):
    op = PauliOperator.from_label(label)
    assert np.allclose(op.to_dense(), kron_pauli(label))
    assert op.label == label


@settings(max_examples=200, deadline=None)
@given(pair_of_labels())
def test_product_and_commutation_match_dense(pair):
    a, b = (PauliOperator.from_label(s) for s in pair)
    A, B = kron_pauli(pair[0]), kron_pauli(pair[1])
    assert np.allclose((a * b).to_dense(), A @ B)
    assert np.allclose(multiply(a, b).to_dense(), A @ B)
    assert commutes(a, b) == np.allclose(A @ B, B @ A)


def test_known_products():
    X, Z = PauliOperator.from_label("X"), PauliOperator.from_label("Z")
    Y = PauliOperator.from_label("Y")
    # phases count powers of i on top of X^x Z^z, and Y = iXZ
    assert Y.phase == 1
    assert (X * Z) == PauliOperator(1, 1, 1, 0)
    assert (Z * X) == PauliOperator(1, 1, 1, 2)
    assert (X * Y).unsigned() == Z.unsigned() and (X * Y).phase == 1  # XY = iZ
    assert (Y * Y).is_identity()


def test_weight_support_and_labels():
    op = PauliOperator.from_label("-XIYZ")
    assert op.weight == 3
    assert op.support == frozenset({0, 2, 3})
    assert op.sign == -1
    assert op.x_bits.tolist() == [1, 0, 1, 0]
    assert op.z_bits.tolist() == [0, 0, 1, 1]
    assert PauliOperator.from_check_row(op.check_row, 4, -1) == op
    assert PauliOperator.from_label("+iXZ").phase % 2 == 1


def test_non_hermitian_sign_raises():
    op = PauliOperator.from_label("+iX")
    assert not op.is_hermitian
    with pytest.raises(ValidationError):
        op.sign
    with pytest.raises(ValidationError):
        PauliOperator.from_label("+XQ")


def test_xiz_izx_anticommute():
    # the two three-qubit tensors meet as Z against X on qubit 3
    a, b = PauliOperator.from_label("XIZ"), PauliOperator.from_label("IZX")
    assert not a.commutes(b)
    A, B = a.to_dense(), b.to_dense()
    assert np.allclose(A @ B + B @ A, 0)


def test_dense_cap():
    with pytest.raises(ResourceError):
        PauliOperator.identity(13).to_dense()
    assert PauliOperator.identity(3).to_dense(cap=3).shape == (8, 8)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_decompose_round_trip(n, seed):
    rng = np.random.default_rng(seed)
    terms = {}
    for _ in range(int(rng.integers(0, 12))):
        x, z = int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n))
        terms[(x, z)] = float(rng.uniform(-1, 1))
    h = PauliSum(n, terms)
    back = pauli_decompose(sum_to_dense(h))
    keys = set(h.coefficients) | set(back.coefficients)
    for key in keys:
        assert abs(h.coefficients.get(key, 0.0) - back.coefficients.get(key, 0.0)) <= 1e-10


def test_sum_to_dense_matches_kron():
    h = PauliSum.from_terms(2, [(0.5, PauliOperator.from_label("XY")), (-2.0, PauliOperator.from_label("-ZI"))])
    expected = 0.5 * kron_pauli("XY") + 2.0 * kron_pauli("ZI")
    assert np.allclose(sum_to_dense(h), expected)
    assert h.locality == 2 and h.is_traceless()


def test_decompose_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        pauli_decompose(np.array([[0, 1], [0, 0]], dtype=complex))


def test_pauli_sum_arithmetic():
    a = PauliSum.from_terms(1, [(1.0, PauliOperator.from_label("Z"))])
    b = PauliSum.from_terms(1, [(2.0, PauliOperator.from_label("X")), (-1.0, PauliOperator.from_label("Z"))])
    c = a + b
    assert c.coefficients == {(1, 0): 2.0}
    assert (-c).coefficient(PauliOperator.from_label("X")) == -2.0
    assert len(PauliSum.zero(3)) == 0
