"""Time the Hermitian eigensolver kernels against each other and numpy.

    python benchmarks/bench_jacobi.py [--sizes 2 4 8 16] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from coherentinfo import _jacobi_py

try:
    from coherentinfo._jacobi import jacobi_eigh as compiled
except ImportError:
    compiled = None


def random_hermitian(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 6, 8, 12, 16])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    kernels = {"python": lambda a: _jacobi_py.jacobi_eigh(a, 1e-12, 100)}
    if compiled is not None:
        kernels["compiled"] = lambda a: compiled(a, 1e-12, 100)
    kernels["numpy.eigh"] = np.linalg.eigh

    print(f"{'n':>4} " + " ".join(f"{name:>14}" for name in kernels) + "   (microseconds per call)")
    for n in args.sizes:
        a = random_hermitian(n, rng)
        ref = np.linalg.eigvalsh(a)
        cells = []
        for name, fn in kernels.items():
            w = np.sort(np.asarray(fn(a)[0]).real)
            assert np.allclose(w, ref, atol=1e-10), name
            timer = timeit.Timer(lambda: fn(a))
            number, _ = timer.autorange()
            best = min(timer.repeat(args.repeat, number)) / number
            cells.append(f"{best * 1e6:14.1f}")
        print(f"{n:>4} " + " ".join(cells))
    if compiled is None:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
