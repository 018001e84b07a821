from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # numpy fallback in lclkit._kernels_py is used when the extension is absent
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("lclkit._oracle_kernel", ["src/lclkit/_oracle_kernel.pyx"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
