from setuptools import Extension, setup

# The MLZO1 kernels are the only hot loop in the project; they get a compiled
# extension. The build is optional: if Cython or a C compiler is missing the
# package installs anyway and minigrid.codec falls back to the pure-Python
# twin at import time (see minigrid/codec/mlzo1.py).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "minigrid.codec._mlzo1",
                ["src/minigrid/codec/_mlzo1.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
