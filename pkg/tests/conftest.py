import numpy as np
import pytest

from tauharm import _kernels


@pytest.fixture(params=_kernels.available_backends())
def kernel_backend(request):
    """Run a test under every built kernel backend, restoring the default."""
    previous = _kernels.backend_name()
    _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
