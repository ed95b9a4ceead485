from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabloc.codes import HAMMING_7, bell, ghz3, product_plus, steane, xiz_ixz, xiz_izx
from stabloc.errors import BudgetExceeded, PreconditionError, ValidationError
from stabloc.gf2 import BitMatrix, rank, zero_columns
from stabloc.locality import css_locality, css_split, delta, delta_oracle, eta, eta_oracle
from stabloc.pauli import PauliOperator
from stabloc.stabilizer import StabilizerGroup, random_stabilizer_group, random_xz_split_group


def P(s):
    return PauliOperator.from_label(s)


def test_delta_on_anticommuting_example(backend):
    r = delta(xiz_izx(), backend=backend)
    assert r.value == 2
    assert r.subset == (0, 2)
    assert r.witness == P("+XIZ")
    assert r.method == "algorithm"


def test_delta_weight_one():
    assert delta(StabilizerGroup([P("+ZII")])).value == 1


def test_delta_steane(backend):
    G = steane()
    r = delta(G, backend=backend)
    assert r.value == delta_oracle(G).value == 4
    assert r.witness in G and r.witness.weight == 4


def test_delta_trivial_group_raises():
    G = StabilizerGroup([], n=3)
    with pytest.raises(PreconditionError):
        delta(G)
    with pytest.raises(PreconditionError):
        delta_oracle(G)
    assert eta(G).value == 0 and eta_oracle(G).value == 0


def test_eta_product_state_is_one():
    G = product_plus(5)
    assert eta(G).value == 1
    assert P("+XXXXX") in G


@pytest.mark.parametrize(
    "G, d, e",
    [(ghz3(), 2, 3), (bell(), 2, 2), (xiz_ixz(), 2, 2), (steane(), 4, 4), (product_plus(3), 1, 1)],
    ids=["ghz", "bell", "xiz-ixz", "steane", "plus"],
)
def test_frozen_values(G, d, e, backend):
    assert delta(G, backend=backend).value == d == delta_oracle(G).value
    assert eta(G, backend=backend).value == e == eta_oracle(G).value


def test_eta_requires_stabilizer_group():
    with pytest.raises(ValidationError):
        eta(xiz_izx())
    with pytest.raises(ValidationError):
        eta_oracle(xiz_izx())


def test_eta_witness_generates_group(backend):
    G = ghz3()
    r = eta(G, backend=backend)
    assert all(g.weight <= r.value for g in r.witness)
    assert StabilizerGroup(r.witness, n=3).same_group(G)


def test_budget_exceeded_carries_bounds():
    G = steane()
    with pytest.raises(BudgetExceeded) as info:
        delta(G, budget=10)
    exc = info.value
    assert exc.lower == 2 and exc.upper == 4 and exc.examined == 10
    with pytest.raises(BudgetExceeded) as info:
        eta(G, budget=3)
    assert info.value.lower == 1


def _random_groups(count, nmax=7, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, nmax + 1))
        m = int(rng.integers(1, n + 1))
        yield random_stabilizer_group(n, m, rng=rng)


def test_oracle_equivalence_random(backend):
    for G in _random_groups(220, seed=5):
        d = delta(G, backend=backend)
        assert d.value == delta_oracle(G).value
        assert d.witness in G or -d.witness in G
        assert d.witness.weight == d.value
        e = eta(G, backend=backend)
        assert e.value == eta_oracle(G).value
        assert d.value <= e.value


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_rank_is_full_below_delta(n, seed):
    G = random_stabilizer_group(n, max(1, n - 1), seed)
    d = delta(G).value
    A = G.check_matrix
    for k in range(1, d):
        for S in itertools.combinations(range(n), k):
            assert rank(zero_columns(A, S)) == rank(A)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_dropping_generators_cannot_lower_delta(n, seed):
    G = random_stabilizer_group(n, n, seed)
    H = StabilizerGroup(G.generators[: n // 2 + 1], n=n)
    assert delta(H).value >= delta(G).value
    assert delta(H).value == delta_oracle(H).value


def test_css_split_steane():
    split = css_split(steane())
    assert split.is_split
    assert split.reordering == (0, 1, 2, 3, 4, 5)
    assert rank(BitMatrix(np.vstack([split.Gx.check_matrix.data[:, :7], HAMMING_7]))) == 3
    assert rank(BitMatrix(np.vstack([split.Gz.check_matrix.data[:, 7:], HAMMING_7]))) == 3


def test_css_split_negative_and_trivial():
    split = css_split(xiz_ixz())
    assert not split.is_split
    assert split.Gx.m == 1 and split.Gz.m == 0  # only XXI is pure
    one = css_split(StabilizerGroup([P("+XII")]))
    assert one.is_split and one.Gz.m == 0


def test_css_locality_examples():
    c = css_locality(steane())
    assert (c.delta_x, c.delta_z, c.eta_x, c.eta_z, c.delta, c.eta) == (4, 4, 4, 4, 4, 4)
    c = css_locality(StabilizerGroup([P("+XXI"), P("+IIZ")]))
    assert (c.delta_x, c.delta_z, c.delta, c.eta) == (2, 1, 1, 2)
    with pytest.raises(PreconditionError):
        css_locality(xiz_ixz())


def test_css_identities_on_random_split_groups():
    rng = np.random.default_rng(9)
    for _ in range(30):
        n = int(rng.integers(2, 8))
        mx = int(rng.integers(0, n // 2 + 1))
        mz = int(rng.integers(0 if mx else 1, n - mx + 1))
        G = random_xz_split_group(n, mx, mz, rng=rng)
        c = css_locality(G)  # raises on violation
        assert c.delta == delta_oracle(G).value
        assert c.eta == eta_oracle(G).value


def test_report_dict_uses_one_based_subsets():
    d = delta(xiz_izx()).as_dict()
    assert d["subset"] == [1, 3] and d["witness"] == "+XIZ"
