"""Build script for the optional compiled kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time); set ``QTWC_NO_EXT=1`` to skip compiling it entirely.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("QTWC_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "qtwc._core",
        sources=["src/qtwc/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )


setup(ext_modules=extensions())
