from __future__ import annotations

import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import kron_pauli
from stabloc.codes import bell, ghz3, steane, xiz_ixz
from stabloc.errors import CommutativityError, DimensionError, PreconditionError, TrivialCodespaceError, ValidationError
from stabloc.pauli import PauliOperator
from stabloc.stabilizer import (
    GeneratorSet,
    Membership,
    StabilizerGroup,
    extend,
    extension,
    ordered_generators,
    projector,
    random_stabilizer_group,
    random_xz_split_group,
    subgroup_nu,
    validate,
)


def P(s):
    return PauliOperator.from_label(s)


def product_projector(G) -> np.ndarray:
    dim = 1 << G.n
    return reduce(lambda acc, g: acc @ (np.eye(dim) + kron_pauli(g.label)) / 2, G.generators, np.eye(dim))


def test_validate_reports_anticommuting_pair():
    with pytest.raises(CommutativityError) as info:
        validate([P("+XIZ"), P("+IZX")])
    assert info.value.pair == (0, 1)
    assert "1" in str(info.value) and "2" in str(info.value)


def test_validate_reports_minus_identity():
    with pytest.raises(TrivialCodespaceError) as info:
        validate([P("+ZZ"), P("+XX"), P("+YY")])  # ZZ.XX = -YY, so +YY forces -I
    assert info.value.certificate == (0, 1, 2)
    with pytest.raises(TrivialCodespaceError):
        validate([P("+Z"), P("-Z")])


def test_dependent_generators_are_dropped():
    G = validate([P("+ZZI"), P("+IZZ"), P("+ZIZ")])
    assert G.m == 2 and G.removed == (2,)
    assert G.codespace_dim == 2
    assert G.order == 4


def test_non_hermitian_generator_rejected():
    with pytest.raises(ValidationError):
        StabilizerGroup([P("+iX")])
    with pytest.raises(DimensionError):
        StabilizerGroup([P("+X"), P("+XX")])


def test_ghz_membership_and_elements():
    G = ghz3()
    assert G.membership(P("-XYY")) is Membership.IN_GROUP
    assert G.membership(P("+XYY")) is Membership.NEGATION_IN_GROUP
    assert G.membership(P("+XII")) is Membership.NEITHER
    assert P("+ZIZ") in G
    labels = sorted(g.label for g in G.elements())
    assert labels == sorted(["+III", "+ZZI", "+ZIZ", "+IZZ", "-XYY", "-YXY", "-YYX", "+XXX"])


@pytest.mark.parametrize("G", [bell(), ghz3(), xiz_ixz(), steane()], ids=["bell", "ghz", "xiz-ixz", "steane"])
def test_projector_matches_product_formula(G):
    Pi = projector(G)
    assert np.allclose(Pi, product_projector(G), atol=1e-12)
    assert np.abs(Pi @ Pi - Pi).max() <= 1e-10
    assert abs(np.trace(Pi).real - 2 ** (G.n - G.m)) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(0, 10**6))))
def test_random_groups_are_valid(args):
    n, m, seed = args
    G = random_stabilizer_group(n, m, seed)
    assert G.m == m
    for a, b in itertools.combinations(G.generators, 2):
        assert a.commutes(b)
    els = list(G.elements())
    assert len({(g.x, g.z) for g in els}) == 2**m
    assert all(g.is_hermitian for g in els)
    assert not any(g.is_identity() and g.sign == -1 for g in els)
    for g in els:
        assert G.membership(g) is Membership.IN_GROUP
        if not g.is_identity():
            assert G.membership(-g) is Membership.NEGATION_IN_GROUP


def test_random_groups_are_deterministic():
    a = random_stabilizer_group(5, 3, seed=11)
    b = random_stabilizer_group(5, 3, seed=11)
    assert a.generators == b.generators


def test_subgroup_nu_ghz():
    G = ghz3()
    G2 = subgroup_nu(G, 2)
    # weight-2 elements sorted by check vector: ZIZ comes before ZZI
    assert [g.label for g in G2.generators] == ["+ZIZ", "+ZZI"]
    assert G2.m == 2
    assert subgroup_nu(G, 1).m == 0
    assert subgroup_nu(G, 3).same_group(G)


def test_extension_flips_only_high_weight_generators():
    G = bell()
    ordered, s = ordered_generators(G, 1)
    assert s == 0 and len(ordered) == 2
    Gb = extend(G, 1, [0, 1])
    assert Gb.membership(ordered[0]) is Membership.IN_GROUP
    assert Gb.membership(ordered[1]) is Membership.NEGATION_IN_GROUP
    assert extend(G, 1, [0, 0]).same_group(G)


def test_extension_errors():
    G = bell()
    with pytest.raises(DimensionError):
        extension(G, 1, [1])
    with pytest.raises(PreconditionError):
        extension(G, 2, [])


def test_ghz_extension_keeps_local_part():
    G = ghz3()
    Gb = extend(G, 2, [1])
    assert Gb.membership(P("+XXX")) is Membership.NEGATION_IN_GROUP
    assert P("+ZZI") in Gb and P("+IZZ") in Gb


def test_restrict_and_supported_in():
    G = steane()
    xs = G.restrict(((1 << 7) - 1) << 7)
    assert xs.m == 3 and all(g.z == 0 for g in xs.generators)
    assert ghz3().supported_in([0, 1]).same_group(StabilizerGroup([P("+ZZI")]))


def test_generator_set_tolerates_anticommuting():
    G = GeneratorSet([P("+XIZ"), P("+IZX")])
    assert G.m == 2 and not G.commuting
    assert G.product(0b11) == P("+XIZ") * P("+IZX")


def test_xz_split_generator():
    G = random_xz_split_group(6, 2, 3, seed=4)
    assert G.m == 5
    assert all(g.x == 0 or g.z == 0 for g in G.generators)
