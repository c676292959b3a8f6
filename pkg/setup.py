import re
from setuptools import setup
from os import path

current_directory = path.abspath(path.dirname(__file__))
with open(path.join(current_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

# Read the metadata without importing jjal, whose imports need numpy and scipy.
with open(path.join(current_directory, 'jjal', '__init__.py'), encoding='utf-8') as f:
    metadata = dict(re.findall(r"^__(\w+)__ = '([^']*)'", f.read(), re.MULTILINE))

setup(
    name='jjal',
    version=metadata['version'],
    packages=['jjal', 'jjal.circuit', 'jjal.modes', 'jjal.kerr', 'jjal.scattering', 'jjal.fitting',
              'jjal.calibration', 'jjal.io', 'jjal.tools'],
    package_data={'jjal': ['samples/*.toml']},
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.7',
        'tomli>=1.1; python_version < "3.11"',
    ],
    entry_points = {
        'console_scripts': [
            'jjal = jjal.tools.cli:main',
        ],
    },
    keywords=['josephson', 'parametric amplifier', 'superconducting circuits', 'cqed'],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Topic :: Scientific/Engineering :: Physics',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11'
    ],
    license='MIT',
    author=metadata['author'],
    description=metadata['description'],
    long_description=long_description,
    long_description_content_type='text/markdown'
)
