import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="Decohering-Clock",
    version="1.0.0",
    url="",
    description="Ramsey spectroscopy of a decohering two-level clock and conditional-probability clock models",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT',
    python_requires='>=3.8',
    packages=setuptools.find_packages(exclude=['tests*']),
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.6',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': [
            'dclock=dclock.cli:exec_cli'
        ]
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    keywords='ramsey-spectroscopy atomic-clock lindblad decoherence quantum-clock',
)
