from .grid import (
    Grid1D,
    SampledDensity,
    SampledField,
    Space,
    central_derivative,
    integrate,
    make_grid,
    to_momentum,
    to_position,
)
from .airy import (
    airy_ai,
    airy_ai_log_scaled,
    airy_ai_prime,
    airy_zero,
    airy_zero_seed,
    airy_zeros,
)
