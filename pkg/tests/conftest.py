import os

import numpy as np
import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ASBQ_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended run; set ASBQ_EXTENDED=1 to enable")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def band_limited(grid, n_modes=10, amp=0.1, seed=0):
    """Random real field with spectral support well below Nyquist."""
    rng = np.random.default_rng(seed)
    shape = grid.shape
    m = min(n_modes, min(shape) // 2 - 1)
    coeffs = np.zeros(shape, dtype=complex)
    if grid.dims == 1:
        coeffs[1:m] = amp * (rng.standard_normal(m - 1) + 1j * rng.standard_normal(m - 1))
        coeffs[-m + 1:] = np.conj(coeffs[1:m][::-1])
        return np.fft.ifft(coeffs * shape[0]).real
    block = amp * (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)))
    coeffs[:m, :m] = block
    return np.fft.ifftn(coeffs * np.prod(shape)).real


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
