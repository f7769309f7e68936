from setuptools import setup, find_packages

setup(
    name="berry-esseen-depgraph",
    version="0.1.0",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "pandas>=1.4",
        "matplotlib>=3.5",
        "PyYAML>=6.0",
    ],
    extras_require={
        "dev": [
            "pytest",
            "pytest-mock",
            "pytest-cov",
            "pylint",
            "black",
        ],
    },
    entry_points={
        "console_scripts": [
            "berry-esseen=berry_esseen.cli:main",
        ],
    },
)
