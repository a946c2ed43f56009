"""
Run Config Module
Run configuration from defaults, environment variables, a JSON file and CLI flags
"""

import json
import os
from dataclasses import asdict, dataclass, fields
from typing import List, Optional

from errors import ParameterRangeError
from exact_linear_core import CoefficientField

# (environment variable, default, parser)
ENVIRONMENT = {
    'field': ('NRED_FIELD', 'rationals', str),
    'seed': ('NRED_SEED', 0, int),
    'u_max': ('NRED_UMAX', 6, int),
    'window': ('NRED_WINDOW', 4, int),
    'jobs': ('NRED_JOBS', 1, int),
}

# config-file spellings that mirror the CLI flags
FILE_ALIASES = {
    'nmax': 'n_max',
    'umax': 'u_max',
    'json': 'json_path',
    'csv': 'csv_path',
    'file': 'graph_file',
}

FAULTS = ('closure',)


@dataclass
class RunConfig:
    """Everything one CLI invocation depends on"""

    command: str = 'accept'
    d: Optional[int] = None
    g: Optional[int] = None
    b: Optional[int] = None
    r: Optional[int] = None
    degrees: Optional[List[int]] = None
    field: str = 'rationals'
    n_max: Optional[int] = None
    u_max: int = 6
    window: int = 4
    seed: int = 0
    jobs: int = 1
    json_path: Optional[str] = None
    csv_path: Optional[str] = None
    graph_file: Optional[str] = None
    timing: bool = False
    inject_fault: Optional[str] = None
    quick: bool = False

    def coefficient_field(self) -> CoefficientField:
        return CoefficientField.from_spec(self.field)

    def validate(self):
        self.coefficient_field()
        minimums = {'d': 3, 'g': 2, 'b': 1, 'r': 1, 'n_max': 1, 'u_max': 1, 'window': 1}
        for name, low in minimums.items():
            value = getattr(self, name)
            if value is not None and value < low:
                raise ParameterRangeError(f"--{name.replace('_', '')} must be >= {low} (got {value})")
        if self.degrees is not None and (not self.degrees or any(v < 1 for v in self.degrees)):
            raise ParameterRangeError(f"--degrees must be positive integers (got {self.degrees})")
        if self.jobs == 0 or self.jobs < -1:
            raise ParameterRangeError(f"--jobs must be -1 or >= 1 (got {self.jobs})")
        if self.inject_fault is not None and self.inject_fault not in FAULTS:
            raise ParameterRangeError(f"unknown fault '{self.inject_fault}'")
        return self

    def echo(self):
        """Inputs as recorded in every report; timing does not change results"""
        values = asdict(self)
        values.pop('timing')
        return values


def environment_config():
    """Read NRED_* variables, falling back to the built-in defaults"""
    values = {}
    for name, (variable, default, parse) in ENVIRONMENT.items():
        raw = os.getenv(variable)
        if raw is None:
            values[name] = default
            continue
        try:
            values[name] = parse(raw)
        except ValueError:
            raise ParameterRangeError(f"{variable}={raw!r} is not a valid {parse.__name__}")
    return values


def load_config_file(path):
    """JSON object whose keys mirror the CLI flags"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ParameterRangeError(f"cannot read config file {path}: {e}")
    if not isinstance(data, dict):
        raise ParameterRangeError(f"config file {path} must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for key, value in data.items():
        name = key.replace('-', '_')
        name = FILE_ALIASES.get(name, name)
        if name not in known:
            raise ParameterRangeError(f"unknown config key '{key}'")
        values[name] = value
    return values


def build_config(command, flags=None, config_path=None) -> RunConfig:
    """
    Merge configuration sources.

    Args:
        command: subcommand name
        flags: values given on the command line (None means not given)
        config_path: optional JSON config file

    Returns:
        validated RunConfig
    """
    values = environment_config()
    if config_path:
        values.update(load_config_file(config_path))
    values.update({k: v for k, v in (flags or {}).items() if v is not None})
    values['command'] = command
    return RunConfig(**values).validate()
