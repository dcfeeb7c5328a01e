"""Build script for the optional compiled correlation kernels.

The package works without the extension: ``qccs.correlation`` falls back to
the pure-numpy kernels in ``qccs._corr_py`` when ``qccs._corrkernel`` is not
importable.  Set ``QCCS_NO_EXT=1`` in the environment to skip the extension
build entirely (useful on hosts without a C compiler).
"""

import os

from setuptools import Extension, setup

if os.environ.get("QCCS_NO_EXT") == "1":
    ext_modules = []
else:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("qccs._corrkernel", ["src/qccs/_corrkernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
