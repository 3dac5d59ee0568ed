import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("EJAFA_PURE_BUILD") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ejafa._kernels_c", ["src/ejafa/_kernels_c.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
