"""Small named stabilizer groups used throughout the tests and the CLI."""

from __future__ import annotations

import numpy as np

from .pauli import PauliOperator
from .stabilizer import GeneratorSet, StabilizerGroup, css_group

HAMMING_7 = np.array(
    [
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ],
    dtype=np.uint8,
)


def _group(*labels: str) -> StabilizerGroup:
    return StabilizerGroup([PauliOperator.from_label(s) for s in labels])


def steane() -> StabilizerGroup:
    """[[7,1,3]] code: X and Z checks from the Hamming parity-check matrix."""
    return css_group(HAMMING_7, HAMMING_7)


def bell() -> StabilizerGroup:
    return _group("+ZZ", "+XX")


def ghz3() -> StabilizerGroup:
    return _group("+ZZI", "+IZZ", "+XXX")


def product_plus(n: int) -> StabilizerGroup:
    """``<X_1, ..., X_n>``: the n-fold ``|+>`` state."""
    return StabilizerGroup([PauliOperator.single(n, q, "X") for q in range(n)])


def xiz_izx() -> GeneratorSet:
    """``<XIZ, IZX>`` as a check-matrix-level generator set.

    The two tensors anticommute (qubit 3 pairs Z with X), so this is not a
    stabilizer group; ``delta`` still applies to it.
    """
    return GeneratorSet([PauliOperator.from_label("+XIZ"), PauliOperator.from_label("+IZX")])


def xiz_ixz() -> StabilizerGroup:
    """``<XIZ, IXZ>``: a commuting 3-qubit group with delta = eta = 2 and q = 2."""
    return _group("+XIZ", "+IXZ")


NAMED = {
    "steane": steane,
    "bell": bell,
    "ghz3": ghz3,
    "xiz-izx": xiz_izx,
    "xiz-ixz": xiz_ixz,
}
