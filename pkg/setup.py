import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Allow installation without Cython: the package falls back to the
    # pure-NumPy kernels at import time.
    def cythonize(extensions, **kwargs):
        return []


setup(
    ext_modules=cythonize(
        [
            Extension(
                "eigroots.kernels._core",
                ["src/eigroots/kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
)
