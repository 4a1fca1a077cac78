import numpy as np
import pytest

from coherentinfo import _jacobi_py

try:
    from coherentinfo._jacobi import jacobi_eigh as compiled_kernel
except ImportError:  # extension not built
    compiled_kernel = None

KERNELS = [pytest.param(_jacobi_py.jacobi_eigh, id="python")]
if compiled_kernel is not None:
    KERNELS.append(pytest.param(compiled_kernel, id="compiled"))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=KERNELS)
def kernel(request):
    return request.param


def random_hermitian(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2
