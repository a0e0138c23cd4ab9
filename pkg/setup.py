from os.path import join, dirname

from setuptools import setup, find_packages

setup(
    name='toric_cst',
    version=0.1,
    long_description=open(join(dirname(__file__), 'README.md')).read(),
    include_package_data=True,
    packages=find_packages(),
    url='',
    install_requires=[
        'numpy',
        'scipy',
        'dateparser'
    ],
    entry_points={
        'console_scripts': [
            'toric-cst=toric_cst.cli:main'
        ]
    }
)
