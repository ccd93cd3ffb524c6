import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).parent.resolve()
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp) / ext.name
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S", str(source_dir),
            "-B", str(build_dir),
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DCONFINING_BUILD_PYTHON=ON",
            "-DCONFINING_BUILD_CLI=OFF",
            "-DCONFINING_BUILD_TESTS=OFF",
            "-DCMAKE_BUILD_TYPE=Release",
        ]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "confining_pymodule",
             "--parallel"],
            check=True,
        )

        built = build_dir / "python" / "confining"
        module = next(built.glob("_core*"))
        out_dir.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(module), str(out_dir / module.name))


setup(
    ext_modules=[CMakeExtension("confining._core")],
    cmdclass={"build_ext": CMakeBuild},
)
