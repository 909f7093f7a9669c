"""Builds the optional compiled kernel; the package works without it."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    pass
else:
    ext_modules = cythonize(["src/vcat/_kernel.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
