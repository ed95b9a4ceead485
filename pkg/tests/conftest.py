from __future__ import annotations

import numpy as np
import pytest

from stabloc import _kernels

BACKEND_NAMES = sorted(_kernels.BACKENDS)


@pytest.fixture(params=BACKEND_NAMES)
def backend(request):
    return request.param


def kron_pauli(label: str) -> np.ndarray:
    """Dense matrix of a signed label built with ``np.kron``, qubit 1 leftmost."""
    mats = {
        "I": np.eye(2, dtype=complex),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    sign = 1.0
    if label[0] in "+-":
        sign = -1.0 if label[0] == "-" else 1.0
        label = label[1:]
    out = np.array([[sign]], dtype=complex)
    for ch in label:
        out = np.kron(out, mats[ch])
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        passed, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
