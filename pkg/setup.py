"""Build script: compiles the optional Cython row-reduction kernel.

If Cython or a C compiler is unavailable the build silently degrades to a
pure-Python install; boreldouble.linalg falls back to its pure twin at import.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "boreldouble.linalg._rowred",
                ["src/boreldouble/linalg/_rowred.pyx"],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
