import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: if Cython (or a C compiler)
# is unavailable, the package falls back to the numpy implementations in
# paramine._pykernels at import time.
ext_modules = []
if not os.environ.get("PARAMINE_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "paramine._ckernels",
                    ["src/paramine/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
