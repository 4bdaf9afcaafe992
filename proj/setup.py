import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

vendor = "vendor" if os.path.exists("vendor/json.hpp") else "/opt/vendor"

ext = Pybind11Extension(
    "twoq._twoq",
    sources=[
        "bindings/twoq_py.cpp",
        "src/linalg.cpp",
        "src/rng.cpp",
        "src/states.cpp",
        "src/measures.cpp",
        "src/frontier.cpp",
        "src/tomo.cpp",
        "src/cli.cpp",
    ],
    include_dirs=["include", vendor],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
