"""Build the optional compiled kernels.

The package is pure Python with a compiled twin for the hot loops; if
Cython or a C compiler is unavailable the build falls back silently and
the pure kernels are used at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("qloop._kernels", ["src/qloop/_kernels.pyx"],
                   extra_compile_args=["-O2"])],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
