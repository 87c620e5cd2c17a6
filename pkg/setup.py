import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext_modules = [
    Extension(
        "hybfs._native",
        sources=["src/hybfs/_native.pyx"],
        depends=["src/hybfs/bu_probe.h"],
        include_dirs=[np.get_include(), "src/hybfs"],
        extra_compile_args=["-O3", "-march=native"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(ext_modules, language_level=3))
