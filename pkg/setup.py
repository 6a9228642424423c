"""Build the optional GMP-backed simplex kernel.

The package works without it; ``edcs_lp.simplex`` falls back to the pure
Python implementation when ``_kernel`` cannot be imported.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("edcs_lp.simplex._kernel",
                   ["src/edcs_lp/simplex/_kernel.pyx"],
                   libraries=["gmp"],
                   extra_compile_args=["-O3"],
                   optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
