from .errors import ConfigError, NumericError, OutputError, RevivalError
from .packets import CoefficientSet, GaussianPacketSpec, expand_packet
from .evolution import SpectralPropagator
from .information import FisherPair, NonclassicalityPoint
from .revivals import RevivalLabel, TimeSeries, revival_report
