"""FFT entry points with a process-wide worker cap.

The environment variable ASBQ_THREADS limits transform parallelism; unset or
nonpositive means "one worker per CPU".  torch's CPU FFT is used when
available (its inverse real transforms are several times faster than
scipy's at the grid sizes used here); scipy.fft is the fallback and the
reference for correctness.
"""

import os
import warnings

import numpy as np
import scipy.fft as _sfft

try:
    import torch as _torch
    _torch_ok = True
except ImportError:  # pragma: no cover - exercised only without torch
    _torch = None
    _torch_ok = False


def fft_workers() -> int:
    raw = os.environ.get("ASBQ_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


if _torch_ok:
    _torch.set_num_threads(fft_workers())

    def _as_tensor(a):
        a = np.ascontiguousarray(a)
        if not a.flags.writeable:
            # transforms only read their input, so wrapping an immutable
            # array is safe; silence torch's writability warning
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                return _torch.from_numpy(a)
        return _torch.from_numpy(a)

    def fftn(a, norm="backward"):
        return _torch.fft.fftn(_as_tensor(a), norm=norm).numpy()

    def ifftn(a, norm="backward"):
        return _torch.fft.ifftn(_as_tensor(a), norm=norm).numpy()

    def rfftn(a):
        return _torch.fft.rfftn(_as_tensor(a)).numpy()

    def irfftn(a, s):
        return _torch.fft.irfftn(_as_tensor(a), s=s).numpy()

    def rfft(a):
        return _torch.fft.rfft(_as_tensor(a)).numpy()

    def irfft(a, n):
        return _torch.fft.irfft(_as_tensor(a), n=n).numpy()

else:  # pragma: no cover - exercised only without torch
    def fftn(a, norm="backward"):
        return _sfft.fftn(a, norm=norm, workers=fft_workers())

    def ifftn(a, norm="backward"):
        return _sfft.ifftn(a, norm=norm, workers=fft_workers())

    def rfftn(a):
        return _sfft.rfftn(a, workers=fft_workers())

    def irfftn(a, s):
        return _sfft.irfftn(a, s=s, workers=fft_workers())

    def rfft(a):
        return _sfft.rfft(a, workers=fft_workers())

    def irfft(a, n):
        return _sfft.irfft(a, n=n, workers=fft_workers())
