#!/usr/bin/env python3
"""
Setup script for Rotmerge package.
"""

from setuptools import setup, find_packages

# Read the README file
def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()

# Read requirements, stopping at the development section
def read_requirements():
    requirements = []
    with open("requirements.txt", "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# Development"):
                break
            if line and not line.startswith("#"):
                requirements.append(line)
    return requirements

setup(
    name="rotmerge",
    version="1.0.0",
    author="Rotmerge Team",
    author_email="team@rotmerge.dev",
    description="Rotation merging for Clifford+RZ quantum circuits",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    url="https://github.com/rotmerge/rotmerge",
    packages=find_packages(include=["rotmerge", "rotmerge.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Software Development :: Compilers",
    ],
    python_requires=">=3.10",
    install_requires=read_requirements(),
    entry_points={
        "console_scripts": [
            "rotmerge=rotmerge.cli:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
    keywords="quantum circuit-optimization t-count clifford pauli-rotation",
    project_urls={
        "Bug Reports": "https://github.com/rotmerge/rotmerge/issues",
        "Source": "https://github.com/rotmerge/rotmerge",
        "Documentation": "https://github.com/rotmerge/rotmerge#readme",
    },
)
