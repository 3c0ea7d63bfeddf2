"""Command bodies of the cli: compute rows or reports and write them out.

Gap rows are `s,E,method,est_error`; est_error is the self-convergence
change (fredholm), the largest conserved drift (dynamics), the first
omitted order (chi-series) or one standard error (mc).
"""
import csv
import io
import json
import sys
from typing import Any

import numpy as np

from ginigap import __version__ as ginigap_version
from ginigap.core.dynamics.integrate import gap_by_dynamics
from ginigap.core.error.error import VerificationError
from ginigap.core.error.exit_code_enum import ExitCodeEnum
from ginigap.core.fredholm.gap import gap_estimate
from ginigap.core.fredholm.interval_union_ie import IntervalUnionIe
from ginigap.core.fredholm.nystrom import build_operator, fredholm_det
from ginigap.core.kernel.kernel import kernel_matrix
from ginigap.core.kernel.kernel_form_enum import KernelFormEnum
from ginigap.core.montecarlo.sampler import GENERATOR_NAME, empirical_gap
from ginigap.core.montecarlo.sampler_config_ie import SamplerConfigIe
from ginigap.core.sigma.series import gap_series, series_error_estimate
from ginigap.core.verify.suite_enum import SuiteEnum
from ginigap.core.verify.suites import (
    REPORT_SCHEMA, run_suites, verification_report)
from ginigap.core.verify.verify_profile_ie import VerifyProfileIe
from ginigap.tools.log import log
from .cli_command_enum import CLICommandEnum
from .method_enum import MethodEnum
from .run_config_ie import RunConfigIe

GAP_HEADER = ['s', 'E', 'method', 'est_error']
SERIES_HEADER = ['exponent', 'coefficient']

Row = list[Any]


def _fredholm_rows(config: RunConfigIe, positive: list[float]) -> list[Row]:
    rows = []
    for s in positive:
        J = IntervalUnionIe.from_gap(s)
        if config.order is None:
            estimate = gap_estimate(config.spec, J, route=config.q_route)
            value, error = estimate.value, estimate.error
        else:
            value = fredholm_det(build_operator(
                config.spec, J, config.order, route=config.q_route))
            error = float('nan')
        rows.append([s, value, MethodEnum.FREDHOLM.value, error])
    return rows


def _dynamics_rows(config: RunConfigIe, positive: list[float]) -> list[Row]:
    trajectory = gap_by_dynamics(config.spec, positive, config.tol)
    error = max(trajectory.max_drift, config.tol)
    return [
        [s, value, MethodEnum.DYNAMICS.value, error]
        for s, value in zip(positive, trajectory.gap)
    ]


def _series_rows(config: RunConfigIe, positive: list[float]) -> list[Row]:
    series = gap_series(config.spec)
    return [
        [s, series.evaluate(s), MethodEnum.CHI_SERIES.value,
         series_error_estimate(config.spec, s)]
        for s in positive
    ]


def _mc_rows(config: RunConfigIe, positive: list[float]) -> list[Row]:
    sampler = SamplerConfigIe(
        spec=config.spec, samples=config.samples, seed=config.seed)
    estimates, errors = empirical_gap(sampler, positive)
    return [
        [s, value, MethodEnum.MC.value, error]
        for s, value, error in zip(positive, estimates, errors)
    ]


ROUTES = {
    MethodEnum.FREDHOLM: _fredholm_rows,
    MethodEnum.DYNAMICS: _dynamics_rows,
    MethodEnum.CHI_SERIES: _series_rows,
    MethodEnum.MC: _mc_rows,
}


def cmd_gap(config: RunConfigIe) -> list[Row]:
    """Rows ordered by method, then by s; E(0) = 1 exactly."""
    if config.J is not None:
        estimate = gap_estimate(config.spec, config.J, route=config.q_route)
        label = ';'.join(f'{a:g}' for a in config.J.endpoints)
        return [[
            label, estimate.value, MethodEnum.FREDHOLM.value, estimate.error]]

    rows = []
    positive = [s for s in config.s_grid if s > 0]
    for method in config.methods:
        if len(positive) < len(config.s_grid):
            rows.append([0.0, 1.0, method.value, 0.0])
        if positive:
            rows.extend(ROUTES[method](config, positive))
    return rows


def cmd_mc(config: RunConfigIe) -> list[Row]:
    return cmd_gap(config)


def kernel_header(form: KernelFormEnum) -> list[str]:
    return ['x', 'y', 'K_sum', f'K_{form.value}', 'diff']


def cmd_kernel(config: RunConfigIe) -> list[Row]:
    """Kernel on grid x grid in the sum form and in `config.form`."""
    if not config.s_grid:
        return []
    grid = np.array(config.s_grid)
    reference = kernel_matrix(
        config.spec, grid, grid, KernelFormEnum.SUM, config.q_route)
    other = kernel_matrix(config.spec, grid, grid, config.form, config.q_route)
    return [
        [x, y, reference[i, j], other[i, j], other[i, j] - reference[i, j]]
        for i, x in enumerate(grid)
        for j, y in enumerate(grid)
    ]


def cmd_series(config: RunConfigIe) -> list[Row]:
    series = gap_series(config.spec)
    return [
        [exponent, coefficient]
        for exponent, coefficient in zip(
            series.exponents, series.coefficients)
    ]


def cmd_verify(config: RunConfigIe) -> dict:
    profile = VerifyProfileIe(
        suites=config.suites or list(SuiteEnum),
        samples=config.samples,
        seed=config.seed)
    return verification_report(run_suites(profile))


def _format(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return value


def format_csv(header: list[str], rows: list[Row]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(x) for x in row])
    return buffer.getvalue()


def format_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + '\n'


def metadata(config: RunConfigIe) -> dict:
    return {
        'schema': REPORT_SCHEMA,
        'version': ginigap_version,
        'generator': GENERATOR_NAME,
        'config': config.get_inner_json(),
    }


def write_output(config: RunConfigIe, text: str) -> None:
    """Write to `config.out` with its `.meta.json` sidecar, or to stdout."""
    if config.out is None:
        sys.stdout.write(text)
        return
    with open(config.out, 'w') as file:
        file.write(text)
    with open(config.out + '.meta.json', 'w') as file:
        file.write(format_json(metadata(config)))
    log.info(f'Wrote {config.command.value} output to {config.out}')


def execute(config: RunConfigIe) -> int:
    """Run the command and return the exit code.

    Raise:
        VerificationError:
            Some suite failed; the report is written first.
    """
    log.debug(f'Run config: {config.get_inner_json()}')
    match config.command:
        case CLICommandEnum.GAP:
            text = format_csv(GAP_HEADER, cmd_gap(config))
        case CLICommandEnum.MC:
            text = format_csv(GAP_HEADER, cmd_mc(config))
        case CLICommandEnum.KERNEL:
            text = format_csv(kernel_header(config.form), cmd_kernel(config))
        case CLICommandEnum.SERIES:
            text = format_csv(SERIES_HEADER, cmd_series(config))
        case CLICommandEnum.VERIFY:
            report = cmd_verify(config)
            write_output(config, format_json(report))
            failed = [x['name'] for x in report['suites'] if not x['pass']]
            if failed:
                raise VerificationError(f'Failed suites: {failed}')
            return ExitCodeEnum.SUCCESS
        case _:
            raise ValueError(f'Unrecognized command {config.command}')
    write_output(config, text)
    return ExitCodeEnum.SUCCESS
