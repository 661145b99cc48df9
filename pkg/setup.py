"""Build script for the optional compiled core.

The extension is marked optional: if no compiler or Cython is available the
install still succeeds and the package falls back to the pure-Python engine.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "cksim._ckcore",
                ["src/cksim/_ckcore.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
