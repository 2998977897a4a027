import os

from setuptools import setup

# The compiled visibility kernel is optional: the package falls back to the
# pure-Python implementation when the extension is absent.  Set
# CUBEVIS_NO_EXT=1 to skip the build entirely.
ext_modules = []
if os.environ.get("CUBEVIS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "cubevis._kernels._visibility_c",
                    ["src/cubevis/_kernels/_visibility_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
