# pidispatch/__init__.py

__author__ = 'Yoshio Hasegawa'
__version__ = '0.1.0'

from .client import Microgrid
