"""Builds the optional compiled kernel; the package works without it."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("radix._kernels", ["src/radix/_kernels.pyx"], include_dirs=[numpy.get_include()], extra_compile_args=["-O3"])],
        language_level=3,
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
