# encoding: utf-8
from setuptools import setup, find_packages


setup(
    name='ransomgame',
    version='1.0.0',
    author='ransomgame developers',
    description='Bayesian ransomware games: best responses, equilibrium '
                'ransoms and Monte Carlo checks.',
    long_description='\n\n'.join(
        open(f, 'rb').read().decode('utf-8')
        for f in ['README.txt', 'CHANGES.txt', 'AUTHORS.txt']),
    license='MIT License',
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
        'simpy>=4.0',
    ],
    packages=find_packages(where='src'),
    package_dir={'': 'src'},
    include_package_data=True,
    entry_points={
        'console_scripts': ['ransomgame = ransomgame.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering',
        'Topic :: Security',
    ],
)
