"""Build hooks for the optional compiled kernel.

The package is pure Python except for kgring/_sturm_cy.pyx (Sturm-sequence
pivot counting). If Cython or a C compiler is unavailable, or
KGRING_NO_EXTENSION is set, the build falls through to the pure-Python
mirror and everything still works, just slower.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("KGRING_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("kgring._sturm_cy", ["src/kgring/_sturm_cy.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
