import os

from setuptools import setup

# The compiled kernels are an optimization, not a requirement: if Cython is
# missing (or OVOID_NO_EXTENSION=1), the package installs without them and
# falls back to the numpy kernels at import time.
ext_modules = []
if os.environ.get("OVOID_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ovoidcodes._kernels_cy",
                    ["src/ovoidcodes/_kernels_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
