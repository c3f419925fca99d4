"""Build script for the optional compiled kernels.

The package works without the extension (a NumPy-based fallback is selected
at import time); building it just makes the hot loops fast.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "isoperim._fastkernels",
                ["src/isoperim/_fastkernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
