"""Build script: compiles the optional Cython kernel core.

Set NKCP3_NO_EXT=1 to skip the extension; the package then runs on the
pure-numpy kernel twin selected at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("NKCP3_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("nkcp3._kernels_cy", ["src/nkcp3/_kernels_cy.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
