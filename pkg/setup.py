# pidispatch/setup.py
from setuptools import setup

with open("README.md", "r") as f:
    long_description = f.read()

setup(
  name = 'pi-cnn-dispatch',
  packages = ['pidispatch'],
  version = '0.1.0',
  license='MIT',
  description = 'Microgrid economic dispatch with a numerical oracle and physics-informed CNN surrogates.',
  long_description = long_description,
  long_description_content_type = 'text/markdown',
  author = 'Yoshio Hasegawa',
  author_email = 'yoshio.seisuke.hasegawa@gmail.com',
  keywords = ['Microgrid', 'Economic Dispatch', 'CNN', 'Physics-Informed'],
  install_requires=[
          'numpy',
          'pandas',
          'pytest'
      ],
  entry_points={
    'console_scripts': ['pidispatch = pidispatch.cli:main'],
  },
  classifiers=[
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Science/Research',
    'Topic :: Scientific/Engineering',
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Programming Language :: Python :: 3.11',
  ],
)
