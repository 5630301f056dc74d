"""Builds the Rust extension with cargo (no setuptools-rust dependency).

The compiled cdylib is copied into the package as `ctmhd/_native.so`, which
also makes editable installs work without extra machinery.
"""

import shutil
import subprocess
from pathlib import Path

from setuptools import setup
from setuptools.command.build_py import build_py

HERE = Path(__file__).resolve().parent
WORKSPACE = HERE.parent


def build_native() -> None:
    subprocess.run(
        [
            "cargo",
            "build",
            "--release",
            "-p",
            "ctmhd-py",
            "--features",
            "extension-module",
        ],
        cwd=WORKSPACE,
        check=True,
    )
    lib = WORKSPACE / "target" / "release" / "libctmhd_py.so"
    shutil.copy2(lib, HERE / "ctmhd" / "_native.so")


class CargoBuildPy(build_py):
    def run(self):
        build_native()
        super().run()


setup(cmdclass={"build_py": CargoBuildPy})
