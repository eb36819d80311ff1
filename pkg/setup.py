"""Build script: compiles the accelerator extension when a toolchain is available.

The package works without the extension (pure-Python kernels are selected at
import time), so a failed compile only costs speed, not functionality.
Set SPONTRAD_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError

_BUILD_ERRORS = (CCompilerError, ExecError, PlatformError, FileNotFoundError)


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except _BUILD_ERRORS as exc:
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except _BUILD_ERRORS as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: building the spontrad._kernels extension failed ({exc}); "
              "falling back to the pure-Python kernels")


def ext_modules():
    if os.environ.get("SPONTRAD_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "spontrad._kernels",
        ["src/spontrad/_kernels.pyx"],
        # -ffp-contract=off keeps the compiled kernels bit-identical to the
        # pure-Python twin (no FMA contraction).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=ext_modules(), cmdclass={"build_ext": OptionalBuildExt})
