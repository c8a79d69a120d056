import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SYMKIT_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "symkit._kernels._speedups",
                    sources=["src/symkit/_kernels/_speedups.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level="3",
        )
    except ImportError:
        # Cython or numpy missing at build time: install pure-Python only.
        ext_modules = []

setup(ext_modules=ext_modules)
