import sys
from setuptools import setup

if sys.version_info < (3, 8):
    raise RuntimeError('Your Python version {0} is not supported, please install '
                       'Python 3.8+'.format('.'.join(map(str, sys.version_info[:3]))))
requirements = ["numpy>=1.22", "scipy>=1.8", "ujson>=5.8.0", "environs>=9.5.0,<12"]
setup(
    name='coollab',
    version='0.3.0',
    description='Numerical checks of the no-cooling theorem for random-unitary quantum channels',
    long_description_content_type="text/markdown",
    license="MIT",
    packages=['coollab', 'coollab/channels', 'coollab/models', 'coollab/experiments', 'coollab/utils'],
    install_requires=requirements,
    extras_require={'test': ["pytest>=7.0", "pytest-asyncio>=0.21"]},
    entry_points={'console_scripts': ['coollab = coollab.cli:main']},
    classifiers=[
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Framework :: AsyncIO',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Physics',

    ],
    python_requires='>=3.8'
)
