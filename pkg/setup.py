from setuptools import Extension, setup

# The edit-distance kernel is compiled when Cython is available; the package
# falls back to the pure-Python implementation otherwise (selected at import).
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "jpbib.similarity._speedups",
                ["src/jpbib/similarity/_speedups.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
