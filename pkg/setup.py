"""Build script: compiles the optional coset-enumeration extension.

The package works without it (a pure-Python kernel is selected at import
time); the extension only makes enumeration fast.  Build in place with

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "nugroup._tc_c",
                ["src/nugroup/_tc_c.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
