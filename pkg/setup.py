from setuptools import setup, find_packages

setup(
    name="discoloc",
    version="0.1.0",
    packages=find_packages(include=["discoloc", "discoloc.*"]),
    python_requires=">=3.9",
    entry_points={"console_scripts": ["discoloc=discoloc.cli:main"]},
)
