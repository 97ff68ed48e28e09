import os

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are an optional speedup; the package falls back to the
# numpy implementation when the extension is absent (see hsisteg/kernels.py).
# -ffp-contract=off keeps the C arithmetic bit-identical to the fallback lane.
if cythonize is not None and not os.environ.get("HSISTEG_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "hsisteg._kernels_c",
                ["src/hsisteg/_kernels_c.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
