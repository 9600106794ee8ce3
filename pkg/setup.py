"""Build script.

The arc-scan kernel is compiled with Cython when available; the package
falls back to a pure-numpy implementation otherwise, so the extension is
strictly optional.  Set CRWEDGE_NO_EXT=1 to skip the compiled kernel.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CRWEDGE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("crwedge._arcscan", ["src/crwedge/_arcscan.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
