from setuptools import setup
from pathlib import Path
import re


with open(str(Path(__file__).parents[0] / "salttrack" / "__init__.py")) as f:
    init_file = f.read()
    metadata = dict(re.findall(r"^__([a-z_]+)__\s*=\s*\"(.*)\"$", init_file,
                               re.MULTILINE))


setup(
    name='SaltTrack',
    version=metadata["version"],
    packages=["salttrack", "salttrack.boundary", "salttrack.cli", "salttrack.tensor",
              "salttrack.tracking"],
    license='MIT',
    author=metadata["author"],
    description="Salt-dome boundary tracking across seismic sections with texture tensor subspaces",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    include_package_data=True,
    python_requires=">=3.7",
    install_requires=[
        "numpy>=1.17",
        "scipy>=1.4",
        "scikit-image>=0.19",
        "matplotlib>=3.5",
        "termcolor"
    ],
    entry_points={
        "console_scripts": [
            "salttrack = salttrack.cli.entry:main"
        ]
    },
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Image Recognition",
    ]
)
