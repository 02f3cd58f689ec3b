"""Build script: compiles the optional Cython kernel extension.

The extension is an accelerator, not a requirement.  If Cython or a C
compiler is missing the build falls back to a pure-Python install and
the package selects the numpy reference backend at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "zetalab._kernels._fastcore",
        ["src/zetalab/_kernels/_fastcore.pyx"],
    )
    return cythonize([ext], language_level=3)


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure install instead of failing."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:
            self._warn(exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        sys.stderr.write(
            "warning: compiled kernels skipped (%s); "
            "using the pure-Python backend\n" % exc
        )


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
