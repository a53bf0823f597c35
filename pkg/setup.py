import os

from setuptools import setup

ext_modules = []
if os.environ.get("HYPERCYCLIC_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("hypercyclic._kernels", ["src/hypercyclic/_kernels.pyx"],
                       include_dirs=[np.get_include()],
                       extra_compile_args=["-O3", "-fcx-limited-range"])],
            compiler_directives={"language_level": 3, "embedsignature": True},
        )

setup(ext_modules=ext_modules)
