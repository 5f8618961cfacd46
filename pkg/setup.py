"""Build script: compiles the union-find kernel when Cython is available.

The package works without the extension (a pure-Python kernel is selected
at import time), so the build degrades gracefully on machines without a
compiler toolchain.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("percolab._ufcore", ["src/percolab/_ufcore.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
