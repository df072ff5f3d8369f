"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-numpy fallback is selected at
import time), so any failure here downgrades to a warning instead of aborting
the install.  Set HYPERDET_PURE=1 to skip compilation entirely.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel {ext.name}: {exc}")


ext_modules = []
cmdclass = {}
if os.environ.get("HYPERDET_PURE") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "hyperdet._kernelcore",
                    ["src/hyperdet/_kernelcore.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level="3",
        )
        cmdclass = {"build_ext": OptionalBuildExt}
    except ImportError as exc:
        warnings.warn(f"Cython/numpy unavailable, building pure-python only: {exc}")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
