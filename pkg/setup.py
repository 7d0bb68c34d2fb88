from setuptools import find_packages, setup

setup(name='bin_design',
      version='0.0.1',
      description='Optimal design of nested bin types for e-commerce orders',
      packages=find_packages(include=['bin_design', 'bin_design.*']),
      python_requires='>=3.8',
      install_requires=['gym>=0.26', 'numpy>=1.22,<2', 'matplotlib'],
      extras_require={'tests': ['pytest']},
      entry_points={'console_scripts': ['bin-design=bin_design.cli:main']}
      )
