"""Scenario documents: JSON sections validated by pydantic models."""
import hashlib
import json
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from revival_dynamics.errors import ConfigError

INFINITE_WELL = "infinite_well"
QUANTUM_BOUNCER = "quantum_bouncer"


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PacketSection(Section):
    center: float
    sigma: float = Field(gt=0)
    p0: float = 0.0


class UnitsSection(Section):
    hbar: float = Field(default=1.0, gt=0)
    mass: Optional[float] = Field(default=None, gt=0)
    length: Optional[float] = Field(default=None, gt=0)


class BasisSection(Section):
    n_max: Optional[int] = Field(default=None, ge=1)
    capture_target: float = Field(default=1 - 1e-10, gt=0, lt=1)
    method: Literal["numeric", "analytic"] = "numeric"
    weight_floor: float = Field(default=1e-20, ge=0, lt=1)


class GridsSection(Section):
    position_count: int = Field(default=16385, ge=3)
    momentum_route: Optional[Literal["eigenstates", "fft"]] = None
    momentum_count: Optional[int] = Field(default=None, ge=3)
    p_min: Optional[float] = None
    p_max: Optional[float] = None


class SweepSection(Section):
    t_start: float = 0.0
    t_end: Optional[float] = None
    samples: Optional[int] = Field(default=None, ge=2)


class AnalysisSection(Section):
    q_max: int = Field(default=8, ge=2)
    tolerance: float = Field(default=0.005, gt=0, lt=0.5)
    prominence: float = Field(default=0.05, ge=0, lt=1)
    density_floor: float = Field(default=1e-12, gt=0, lt=1)
    early_periods: int = Field(default=5, ge=1)
    revival_time: Literal["closed_form", "spectrum"] = "closed_form"


class OutputsSection(Section):
    series: str = "series.csv"
    report: str = "report.json"


class ScenarioConfig(Section):
    """
    A complete scenario. Sections left out, and fields left unset, take the
    defaults of the chosen system.
    """

    system: Literal["infinite_well", "quantum_bouncer"]
    packet: Optional[PacketSection] = None
    units: UnitsSection = Field(default_factory=UnitsSection)
    basis: BasisSection = Field(default_factory=BasisSection)
    grids: GridsSection = Field(default_factory=GridsSection)
    sweep: SweepSection = Field(default_factory=SweepSection)
    analysis: AnalysisSection = Field(default_factory=AnalysisSection)
    outputs: OutputsSection = Field(default_factory=OutputsSection)

    @model_validator(mode="after")
    def fill_defaults(self):
        if self.system == INFINITE_WELL:
            _fill_well(self)
        else:
            _fill_bouncer(self)
        if self.sweep.t_end <= self.sweep.t_start:
            raise ValueError("sweep.t_end must exceed sweep.t_start")
        if self.grids.momentum_route == "fft" and not _is_power_of_two(self.grids.momentum_count):
            raise ValueError("grids.momentum_count must be a power of two for the fft route")
        return self

    @property
    def is_well(self):
        return self.system == INFINITE_WELL

    def digest(self):
        """SHA-256 of the normalized document."""
        text = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _is_power_of_two(n):
    return n >= 2 and n & (n - 1) == 0


def _fill_well(config):
    units, grids, sweep = config.units, config.grids, config.sweep
    units.mass = 0.5 if units.mass is None else units.mass
    units.length = 1.0 if units.length is None else units.length
    if config.packet is None:
        config.packet = PacketSection(
            center=0.5 * units.length, sigma=1 / math.sqrt(200), p0=400 * math.pi
        )
    if not 0 < config.packet.center < units.length:
        raise ValueError("packet.center must lie inside the well")
    config.basis.n_max = config.basis.n_max or 800
    # the wall reflections put 1/p^4 tails far outside any affordable eigenstate window
    grids.momentum_route = grids.momentum_route or "fft"
    if grids.momentum_route == "eigenstates":
        grids.momentum_count = grids.momentum_count or 30001
        grids.p_min = -1500.0 if grids.p_min is None else grids.p_min
        grids.p_max = 1500.0 if grids.p_max is None else grids.p_max
        if grids.p_max <= grids.p_min:
            raise ValueError("grids.p_max must exceed grids.p_min")
    else:
        grids.momentum_count = grids.momentum_count or 262144
    if sweep.t_end is None:
        sweep.t_end = 4 * units.mass * units.length ** 2 / (math.pi * units.hbar)
    sweep.samples = sweep.samples or 4001


def _fill_bouncer(config):
    units, grids, sweep = config.units, config.grids, config.sweep
    if units.hbar != 1.0:
        raise ValueError("the quantum bouncer uses scaled units with units.hbar = 1")
    if units.mass is not None or units.length is not None:
        raise ValueError("the quantum bouncer takes no mass or length")
    if config.packet is None:
        config.packet = PacketSection(center=100.0, sigma=1.0, p0=0.0)
    if not config.packet.center > 0:
        raise ValueError("packet.center must lie above the floor")
    config.basis.n_max = config.basis.n_max or 400
    if grids.momentum_route == "eigenstates":
        raise ValueError("the quantum bouncer supports only the fft momentum route")
    if grids.p_min is not None or grids.p_max is not None:
        raise ValueError("momentum window bounds apply to the eigenstates route only")
    grids.momentum_route = "fft"
    grids.momentum_count = grids.momentum_count or 131072
    if sweep.t_end is None:
        # five classical periods, T_cl = 2 sqrt(z0)
        sweep.t_end = sweep.t_start + 10 * math.sqrt(config.packet.center)
    sweep.samples = sweep.samples or 2001


def _describe(error):
    messages = []
    for item in error.errors():
        path = ".".join(str(part) for part in item["loc"]) or "<document>"
        messages.append("{}: {}".format(path, item["msg"]))
    return "; ".join(messages)


def parse_config(text):
    """
    Parse and validate a scenario document.

    Args:
        text (str): UTF-8 JSON document.

    :rtype:
        ScenarioConfig with every default filled.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(
            "malformed config at line {} column {}: {}".format(err.lineno, err.colno, err.msg)
        ) from err
    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object of sections")
    try:
        return ScenarioConfig.model_validate(document)
    except ValidationError as err:
        raise ConfigError("invalid config: {}".format(_describe(err))) from err


def load_config(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as err:
        raise ConfigError("cannot read config {}: {}".format(path, err)) from err
    return parse_config(text)
