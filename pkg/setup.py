from setuptools import setup, Extension

import numpy

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "knuthovals._kernels._scan",
                ["src/knuthovals/_kernels/_scan.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still installs; the numpy fallback
    # kernels are selected at import time.
    extensions = []

setup(ext_modules=extensions)
