from .config import ScenarioConfig, load_config, parse_config
from .scenario import (
    BouncerScenarioRunner,
    ScenarioRunner,
    WellScenarioRunner,
    get_runner,
    write_report,
    write_series,
)
