"""Build script.

The finite-field kernel has a Cython implementation (galcert._fqcore) used
when it compiles, and a pure-Python fallback (galcert._fqpure) used when it
does not.  Set GALCERT_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("GALCERT_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("galcert._fqcore", ["src/galcert/_fqcore.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
