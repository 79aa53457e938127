from .base import EnergySpectrum, Eigenbasis, eigenfunction_table, momentum_eigenfunction_table
from .well import InfiniteWell, well_eigenfunction, well_energy, well_momentum_eigenfunction
from .bouncer import QuantumBouncer, bouncer_eigenfunction, bouncer_normalization
from .timescales import (
    TimeScales,
    bouncer_closed_form_timescales,
    spectrum_timescales,
    well_closed_form_timescales,
)
