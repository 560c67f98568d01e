from setuptools import setup, find_packages

setup(
    name="froglab",
    version="1.2.1",
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    install_requires=[
        'click>=8.1.7',
        'python-dotenv>=1.0.0',
        'pydantic>=2.5.0',
        'rich>=13.7.0',
        'numpy>=1.26.0',
        'networkx>=3.2',
    ],
    entry_points={
        'console_scripts': [
            'froglab=froglab.cli.interface:cli',
        ],
    },
    description="FrogLab - first-passage experiments for the frog model on Z^d",
    long_description=open('README.md').read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.10',
)
