"""Build script: compiles the optional speedup extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so a failed compile only costs speed.
"""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rankone2d._speedups",
                sources=["src/rankone2d/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"skipping compiled extension ({exc}); using the numpy fallback",
          file=sys.stderr)

setup(ext_modules=ext_modules)
