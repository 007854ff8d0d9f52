import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the compiled kernels if possible; the package works without them."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(f"warning: compiled kernels skipped ({exc}); "
                  "the pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "the pure-Python fallback will be used")


extensions = []
if not os.environ.get("BKTELE_NO_EXTENSION"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "bktele._corekern",
                    ["src/bktele/_corekern.pyx"],
                    include_dirs=[np.get_include()],
                )
            ],
            language_level="3",
        )
    except ImportError as exc:
        print(f"warning: Cython/numpy unavailable at build time ({exc}); "
              "the pure-Python fallback will be used")

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
