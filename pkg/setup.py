"""Build hook: compiles the optional Cython kernel extension.

The extension is a pure speedup; if Cython (or a C compiler) is missing,
or MOBIUSTREE_NO_EXT=1 is set, the package installs without it and the
pure-Python kernels are used instead.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("MOBIUSTREE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/mobiustree/_ckernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
