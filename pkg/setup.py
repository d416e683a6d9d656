"""Build script: compiles the optional fast core.

The package works without the extension (a numpy implementation of the same
kernels is selected at import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hierbgk._core_c",
                ["src/hierbgk/_core_c.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    import sys

    print(f"hierbgk: skipping compiled core ({exc}); numpy fallback will be used", file=sys.stderr)

setup(ext_modules=ext_modules)
