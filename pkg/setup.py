"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile only costs speed.  Set VARLP_NO_EXT=1 to
skip the extension entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Best-effort build: a broken toolchain falls back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: compiled kernels skipped ({exc}); "
                  "pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: building {ext.name} failed ({exc}); "
                  "pure-Python fallback will be used")


ext_modules = []
if not os.environ.get("VARLP_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "varlp._kernels._core",
                    ["src/varlp/_kernels/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:  # pragma: no cover - Cython missing
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
