"""Build script: compiles the optional fast kernels.

The compiled extension is a performance feature, not a hard requirement: if
the toolchain or Cython is unavailable the install proceeds and the package
falls back to the pure-Python kernels at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to the pure-Python fallback on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building algoweb._core failed ({exc!r}); "
            "installing with the pure-Python kernels only.",
            file=sys.stderr,
        )


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print(
            "WARNING: Cython not available; skipping compiled kernels.",
            file=sys.stderr,
        )
        return []
    ext = Extension(
        "algoweb._core",
        sources=["src/algoweb/_core.pyx"],
        # -ffp-contract=off keeps float arithmetic bit-identical with the
        # pure-Python kernels (no fused multiply-add contraction).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level="3")


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
