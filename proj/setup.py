# SPDX-License-Identifier: Apache-2.0
"""Builds the _subsetx extension through the project's CMake tree.

Install with `pip install -e . --no-build-isolation` so the preinstalled
pybind11 is picked up.
"""
import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        out_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        out_path.parent.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        jobs = str(os.cpu_count() or 1)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_subsetx", "-j", jobs],
            check=True,
        )
        built = next(build_dir.glob("_subsetx*.so"))
        self.copy_file(str(built), str(out_path))


setup(
    ext_modules=[CMakeExtension("subsetx._subsetx")],
    cmdclass={"build_ext": CMakeBuild},
)
