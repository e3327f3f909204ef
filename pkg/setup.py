import os

from setuptools import Extension, setup

PYX = "src/hopf_moduli/_kernels/_fast.pyx"

ext_modules = []
if os.environ.get("HOPF_MODULI_NO_EXT") != "1" and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize([Extension("hopf_moduli._kernels._fast", [PYX])])
    except ImportError:
        # pure-Python fallback kernels are used when the extension is absent
        ext_modules = []

setup(ext_modules=ext_modules)
