"""Builds the optional compiled rewriting kernel.

Without Cython (or with TRIPLEGROUPS_PURE=1 at build time) the package
installs pure Python and picks the fallback kernel at import.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("TRIPLEGROUPS_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("triplegroups.rewriting._kernel", ["src/triplegroups/rewriting/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
