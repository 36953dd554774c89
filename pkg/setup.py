"""Build script: compiles the optional fast-kernel extension.

The package works without the extension (a pure-Python twin of every kernel
ships in ``peakfn._kernels.pure``); the extension only makes the certificate
sweeps and quadrature faster.  ``-ffp-contract=off`` keeps the compiled
arithmetic bit-identical to the interpreted arithmetic: no FMA contraction,
same libm calls in the same order.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "peakfn._kernels._corekernels",
                ["src/peakfn/_kernels/_corekernels.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
