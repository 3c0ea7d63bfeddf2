from setuptools import setup, find_packages

from ginigap import __version__ as version


with open("requirements.txt", "r") as file:
    install_requires = [x.strip() for x in file.readlines() if x.strip()]

setup(
    name="ginigap",
    version=version,
    packages=find_packages(exclude=["examples", "examples.*"]),
    include_package_data=True,
    license="MIT",
    description=(
        "Gap probabilities of products of complex Ginibre matrices by"
        " Fredholm determinants, Hamiltonian dynamics and Monte Carlo."),
    keywords=[
        "random-matrices", "ginibre", "fredholm-determinant", "painleve",
        "gap-probability"],
    entry_points={
        "console_scripts": [
            "ginigap = ginigap.core.cli.cli:main",
        ],
    },
    install_requires=install_requires,
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",

        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",

        "License :: OSI Approved :: MIT License",

        "Programming Language :: Python :: 3.10",
    ],
)
