from ._version import __version__
from .base import *
from .grid import *
from .operators import *
from .spectral import *
from .hft import *
from .algebra import *
from .timeop import main
