from setuptools import setup, find_packages

INSTALL_REQUIRES = [
    "numpy>=1.24.4",
]

setup(
    packages=find_packages(exclude=["tests", "benchmark"], include=["linkless*"]),
    package_data={"linkless": ["data/*"]},
    install_requires=INSTALL_REQUIRES,
)
