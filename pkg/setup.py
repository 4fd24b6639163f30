"""Builds the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("quasirand._core", ["src/quasirand/_core.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
