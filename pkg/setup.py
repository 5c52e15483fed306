import os

from setuptools import Extension, setup

# The compiled kernels are optional: set PACCODES_NO_EXT=1 (or build without
# Cython) to get a pure-numpy install. paccodes.kernels falls back at import.
ext_modules = []
if not os.environ.get("PACCODES_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "paccodes._ckernels",
                    ["src/paccodes/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
