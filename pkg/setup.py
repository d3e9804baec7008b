from setuptools import setup, find_packages

setup(
    name="systolic_atlas",
    version="1.0.0",
    author=" ",
    description="Census of cubic multigraphs, Whitehead move graphs and systole certificates for hyperbolic surfaces of large genus.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Programming Language :: Python :: 3.10",
    ],
    python_requires=">=3.9",
    install_requires=[
        "pandas",
        "numpy",
        "ray",
        "scikit-learn",
        "scipy",
        "plotly",
        "pyyaml",
        "networkx",
    ],
    extras_require={
        "test": [
            "pytest",
            "flaky",
            "hypothesis",
        ],
    },
    include_package_data=True,
    package_data={
        "": [
            "settings.yaml",
        ]
    },
    entry_points={
        "console_scripts": [
            "systolic-atlas=systolic_atlas.cli:main",
        ]
    },
)
