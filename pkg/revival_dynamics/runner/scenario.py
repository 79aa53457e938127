"""Scenario orchestration: expansion, time sweep, analysis and output files."""
import json
import math
import os
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np
import pandas as pd
from loguru import logger
from toolz import partition_all
from tqdm import tqdm

from revival_dynamics.errors import OutputError
from revival_dynamics.evolution import SpectralPropagator
from revival_dynamics.information import nonclassicality_point
from revival_dynamics.numerics.grid import make_grid
from revival_dynamics.packets import GaussianPacketSpec, expand_packet
from revival_dynamics.revivals import TimeSeries, revival_report
from revival_dynamics.runner.config import INFINITE_WELL
from revival_dynamics.systems.bouncer import QuantumBouncer
from revival_dynamics.systems.timescales import (
    bouncer_closed_form_timescales,
    spectrum_timescales,
    well_closed_form_timescales,
)
from revival_dynamics.systems.well import InfiniteWell

SERIES_COLUMNS = ["t", "re_A", "im_A", "abs_A2", "I_rho", "I_gamma", "J_nc"]
CHUNK_SIZE = 64
SIGNIFICANT_DIGITS = 15

_propagator = None


def _install_propagator(propagator, density_floor):
    global _propagator
    _propagator = (propagator, density_floor)


def _sweep_point(t):
    propagator, density_floor = _propagator
    point = nonclassicality_point(propagator, t, density_floor)
    amplitude = propagator.autocorrelation(t)
    fisher = point.fisher
    row = {
        "t": t,
        "re_A": amplitude.real,
        "im_A": amplitude.imag,
        "abs_A2": abs(amplitude) ** 2,
        "I_rho": fisher.i_rho if fisher else math.nan,
        "I_gamma": fisher.i_gamma if fisher else math.nan,
        "J_nc": point.j_nc,
    }
    return row, point.warnings


@dataclass
class ScenarioResult:
    series: pd.DataFrame
    report: dict


class ScenarioRunner:
    """
    The method class shared by both systems.

    Args:
        config (ScenarioConfig): Validated scenario.
    """

    def __init__(self, config):
        self.config = config
        self.spec = GaussianPacketSpec(config.packet.center, config.packet.sigma, config.packet.p0)
        self.basis = self.build_basis()

    def build_basis(self):
        raise NotImplementedError("The function build_basis is not implemented!")

    def closed_form_timescales(self, n_bar):
        raise NotImplementedError("The function closed_form_timescales is not implemented!")

    def position_grid(self):
        domain = self.basis.sampling_domain(self.config.basis.n_max)
        return make_grid(*domain, self.config.grids.position_count)

    def momentum_grid(self):
        grids = self.config.grids
        if grids.momentum_route != "eigenstates":
            return None
        return make_grid(grids.p_min, grids.p_max, grids.momentum_count)

    def expand(self):
        """Coefficients truncated to the capture target, negligible levels dropped."""
        basis = self.config.basis
        coeffs = expand_packet(
            self.basis,
            self.spec,
            basis.n_max,
            capture_target=basis.capture_target,
            method=basis.method,
            grid=self.position_grid(),
        )
        return coeffs.significant(basis.weight_floor)

    def timescales(self, coeffs):
        """
        Closed-form and spectrum-derived time scales around n_bar.

        :rtype:
            chosen (TimeScales): The pair selected by analysis.revival_time.
            both (dict): TimeScales keyed by "closed_form" and "spectrum".
        """
        n_bar = coeffs.central_level()
        spectrum = self.basis.spectrum(n_bar + 1, n_bar - 1)
        both = {
            "closed_form": self.closed_form_timescales(n_bar),
            "spectrum": spectrum_timescales(spectrum, n_bar, self.basis.hbar),
        }
        return both[self.config.analysis.revival_time], both

    def propagator(self, coeffs):
        grids = self.config.grids
        return SpectralPropagator(
            self.basis,
            coeffs,
            self.position_grid(),
            momentum_route=grids.momentum_route,
            momentum_grid=self.momentum_grid(),
            momentum_count=grids.momentum_count,
        )

    def sweep(self, propagator, times, threads=0, quiet=False):
        """
        Rows of the time series in ascending time, and the per-point warnings.

        Args:
            threads (int): Worker processes, 0 for one per CPU, 1 to stay in-process.
        """
        floor = self.config.analysis.density_floor
        chunks = list(partition_all(CHUNK_SIZE, [float(t) for t in times]))
        results = []
        if threads == 1:
            _install_propagator(propagator, floor)
            for chunk in tqdm(chunks, disable=quiet):
                results.extend(_sweep_point(t) for t in chunk)
        else:
            with Pool(
                threads or None, initializer=_install_propagator, initargs=(propagator, floor)
            ) as P:
                for chunk in tqdm(chunks, disable=quiet):
                    results.extend(P.map(_sweep_point, chunk))

        rows = [row for row, _ in results]
        warnings = [message for _, messages in results for message in messages]
        return pd.DataFrame(rows, columns=SERIES_COLUMNS), warnings

    def run(self, threads=0, quiet=False):
        sweep = self.config.sweep
        coeffs = self.expand()
        chosen, both = self.timescales(coeffs)
        logger.info(
            "levels {}..{}, captured norm {:.12f}, n_bar {}",
            coeffs.first_n,
            coeffs.last_n,
            coeffs.captured_norm,
            chosen.n_bar,
        )
        logger.info("T_cl = {:.10g}, T_rev = {:.10g}", chosen.t_classical, chosen.t_revival)

        times = np.linspace(sweep.t_start, sweep.t_end, sweep.samples)
        series, warnings = self.sweep(self.propagator(coeffs), times, threads, quiet)
        for message in warnings:
            logger.warning(message)

        analysis = self.config.analysis
        revivals = revival_report(
            TimeSeries(series["t"].to_numpy(), series["J_nc"].to_numpy()),
            TimeSeries(series["t"].to_numpy(), series["abs_A2"].to_numpy()),
            chosen,
            q_max=analysis.q_max,
            tolerance=analysis.tolerance,
            prominence=analysis.prominence,
            early_periods=analysis.early_periods,
        )
        report = revivals.to_dict()
        report.update(
            system=self.config.system,
            captured_norm=coeffs.captured_norm,
            levels={"first": coeffs.first_n, "last": coeffs.last_n},
            timescale_sources={
                name: {"t_classical": ts.t_classical, "t_revival": ts.t_revival}
                for name, ts in both.items()
            },
            warnings=warnings,
            config_digest=self.config.digest(),
        )
        return ScenarioResult(series, report)


class WellScenarioRunner(ScenarioRunner):
    def build_basis(self):
        units = self.config.units
        return InfiniteWell(units.length, units.mass, units.hbar)

    def closed_form_timescales(self, n_bar):
        return well_closed_form_timescales(self.basis, n_bar)


class BouncerScenarioRunner(ScenarioRunner):
    def build_basis(self):
        return QuantumBouncer(self.config.basis.n_max)

    def closed_form_timescales(self, n_bar):
        return bouncer_closed_form_timescales(self.spec.center, n_bar)


def get_runner(config):
    if config.system == INFINITE_WELL:
        return WellScenarioRunner(config)
    return BouncerScenarioRunner(config)


def _rounded(value):
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float("{:.{}g}".format(value, SIGNIFICANT_DIGITS))
    if isinstance(value, dict):
        return {key: _rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(item) for item in value]
    if isinstance(value, np.generic):
        return _rounded(value.item())
    return value


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise OutputError("output directory {} does not exist".format(parent))


def write_series(frame, path):
    """CSV with the fixed header, 15 significant digits."""
    _ensure_parent(path)
    try:
        frame.to_csv(path, index=False, float_format="%.15g")
    except OSError as err:
        raise OutputError("cannot write series {}: {}".format(path, err)) from err
    logger.info("series written to {}", path)


def write_report(report, path):
    _ensure_parent(path)
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(_rounded(report), handle, indent=2, sort_keys=True)
            handle.write("\n")
    except OSError as err:
        raise OutputError("cannot write report {}: {}".format(path, err)) from err
    logger.info("report written to {}", path)
