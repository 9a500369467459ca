from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "d2dee._core",
    sources=[
        "python/bindings.cpp",
        "src/net_model.cpp",
        "src/ee_solver.cpp",
        "src/se_solver.cpp",
        "src/game.cpp",
        "src/analysis.cpp",
        "src/harness.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
