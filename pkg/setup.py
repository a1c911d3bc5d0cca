"""Build script for the optional compiled rate kernels.

The package is fully functional without the extension (a pure-NumPy
fallback is selected at import time), so a failed compile only costs
speed.  Build in place for local testing with:

    python3 setup.py build_ext --inplace
"""

from setuptools import Extension, find_packages, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "sdoflab.kernels._native",
                sources=["src/sdoflab/kernels/_native.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

# The src layout is stated here as well as in pyproject.toml: setuptools
# older than the PEP 621 support would otherwise misplace the built
# extension when copying it into the tree.
setup(
    ext_modules=ext_modules,
    packages=find_packages("src"),
    package_dir={"": "src"},
)
