import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SZERO_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("szero._kernels", ["src/szero/_kernels.pyx"])],
            compiler_directives={"language_level": 3},
            quiet=True,
        )

setup(ext_modules=ext_modules)
