"""Build script for the compiled stencil kernel.

The package works without the extension (a NumPy fallback is selected at
import time); building it just makes Hamiltonian application faster.
"""

import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "tunnelgrid._stencil",
        ["src/tunnelgrid/_stencil.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
)
