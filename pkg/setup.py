"""Build script: compiles the optional kernel extension when Cython is available.

The package is fully functional without the extension; tauharm._kernels
falls back to the NumPy reference implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "tauharm._kernels._core",
                ["src/tauharm/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=extensions)
