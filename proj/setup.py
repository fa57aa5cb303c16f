"""Builds the _core extension through the project's CMake configuration."""

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
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        package_dir = ext_path.parent
        package_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_dir),
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={package_dir}",
            "-DCMAKE_BUILD_TYPE=Release",
            "-DRCAMON_BUILD_TESTS=OFF",
            "-DRCAMON_BUILD_CLI=OFF",
            "-DRCAMON_BUILD_PYTHON=ON",
        ]
        if os.environ.get("CMAKE_GENERATOR") is None and _have_ninja():
            configure += ["-G", "Ninja"]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )


def _have_ninja():
    from shutil import which

    return which("ninja") is not None


setup(
    ext_modules=[CMakeExtension("rcamon._core")],
    cmdclass={"build_ext": CMakeBuild},
)
