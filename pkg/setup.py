"""
Setup script for egcore
"""
from setuptools import setup, find_packages
import re, os, io

LONG_DESCRIPTION = ""


def _read_version():
    here = os.path.abspath(os.path.dirname(__file__))
    with io.open(os.path.join(here, 'src', 'egcore', 'version.py'), encoding='utf-8') as f:
        match = re.search(r"^version = ['\"]([^'\"]*)['\"]", f.read(), re.M)
    if match is None:
        raise RuntimeError("Unable to find version string.")
    return match.group(1)


setup(
    name='egcore',
    version=_read_version(),

    description='Exact equilibrium analysis of the police/drivers enforcement game',
    #long_description=LONG_DESCRIPTION,
    #long_description_content_type='text/markdown',
    keywords=' '.join([
        'game-theory',
        'repeated-games',
        'subgame-perfect-equilibrium',
        ]),
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3',
        ],

    author='The egcore developers',

    python_requires='>=3.7, <4',
    install_requires=[
        'numpy>=1.17',
        # Exact rational linear algebra and limits.
        'sympy',
        'toml>=0.10',
        ],

    extras_require={
        'dev': ['pytest', 'sphinx'],
        },


    package_dir={'': 'src'},
    packages=find_packages(where='src'),
    entry_points={
        "console_scripts": [
            "egcore = egcore.egcore:run",
        ]
    },

    zip_safe=False,
    )
