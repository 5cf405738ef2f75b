"""Build script for the optional compiled kernels.

The package is pure Python plus one Cython extension holding the hot loops
(blockage-history survival products and the self-blockage grid count).  When
Cython or a C compiler is unavailable the extension is skipped and the numpy
fallback in ``hbblock._kernels._fallback`` is used instead.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hbblock._kernels._native",
                ["src/hbblock/_kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
