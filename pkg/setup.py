from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure Python kernels are used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("principal_boundary._ckernels",
                   ["src/principal_boundary/_ckernels.pyx"],
                   extra_compile_args=["-O2"],
                   optional=True)],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
