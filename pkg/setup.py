"""
Setup script for the quatforms package.
"""

from setuptools import setup, find_packages

setup(
    name="quatforms",
    version="0.1.0",
    description="Quaternionic automorphic forms for the Hurwitz order: Hecke operators, integer charpolys and p-adic slopes",
    author="quatforms contributors",
    packages=find_packages(include=["quatforms", "quatforms.*", "cli", "cli.*"]),
    install_requires=[
        "numpy>=1.24.0",
        "sympy>=1.12",
        "typer>=0.9.0",
        "rich>=14.0.0",
        "pydantic>=2.0.0",
        "tqdm>=4.67.1",
        "python-dotenv>=1.0.0",
    ],
    extras_require={
        "test": ["pytest>=7.4.0"],
    },
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "quatforms=cli.main:app",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
