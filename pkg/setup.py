"""Build hook for the compiled engine.

The package works without the extension (a numpy fallback is selected at
import time); the Cython core is what makes the Monte Carlo engines fast.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cylsle/_engine/_core.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
    for ext in ext_modules:
        ext.extra_compile_args = ["-O3"]
except ImportError:
    pass

setup(ext_modules=ext_modules)
