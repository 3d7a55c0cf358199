import sys

from .base import BaseLab, Settings
from .exceptions import (ConfigError, CoolLabError, DimensionMismatch, InvalidInput, InvalidState, ParseError,
                         RejectedChannel, ReportError)
from .lab import CoolLab
from .spectral import (TOLERANCES, DensityMatrix, RngSeed, SortedSpectrum, TemperatureSpec, Tolerances,
                       effective_temperature, sorted_spectrum, temperature_monotonicity_check, temperature_slack)

if sys.version_info < (3, 8):
    raise RuntimeError('Your Python version {0} is not supported, please install '
                       'Python 3.8+'.format('.'.join(map(str, sys.version_info[:3]))))

__version__ = '0.3.0'
