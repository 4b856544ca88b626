"""Build script.

The package is pure Python plus one optional accelerator extension,
certreal._kernels_c, compiled from Cython when a compiler is available.
If the extension cannot be built the package still works: certreal.kernels
falls back to the pure-Python twin at import time.
"""

import sys

from setuptools import setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("certreal: Cython not available, building without the "
              "accelerator extension", file=sys.stderr)
        return []
    try:
        return cythonize(
            ["src/certreal/_kernels_c.pyx"],
            compiler_directives={"language_level": 3},
        )
    except Exception as exc:
        print(f"certreal: skipping accelerator extension ({exc})",
              file=sys.stderr)
        return []


setup(ext_modules=_extensions())
