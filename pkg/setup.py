import os

from setuptools import setup

ext_modules = []
if os.environ.get("COSETKIT_NO_EXT", "0") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/cosetkit/_kernels.pyx"],
            compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
