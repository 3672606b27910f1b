import warnings

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    warnings.warn("Cython not available; installing with the pure-Python search kernel only.")
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        ["src/wpdcert/_ffbrute.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )

setup(ext_modules=ext_modules)
