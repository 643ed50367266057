import hashlib
import os
from pathlib import Path
from typing import Self

import yaml
from pydantic import BaseModel, ValidationError

from util.config_yml.problems import Parity, PotentialKind, ProblemDefinition
from util.config_yml.settings import (BreitSettings, OracleSettings,
                                      PerPrecision, PerPrecisionInt,
                                      SolverSettings, WkbSettings)
from util.errors import ConfigError
from util.logging import logging
from xprec import Precision

CONFIG_YML = Path(os.getenv("QLM_CONFIG", "config.yml"))
CONFIG_DEFAULT_YML = Path("config_default.yml")

__all__ = [
    "CONFIG_DEFAULT_YML",
    "CONFIG_YML",
    "BreitSettings",
    "Config",
    "OracleSettings",
    "PerPrecision",
    "PerPrecisionInt",
    "Parity",
    "PotentialKind",
    "ProblemDefinition",
    "SolverSettings",
    "WkbSettings",
]


class Config(BaseModel):
    precision: Precision = Precision.extended
    solver: SolverSettings = SolverSettings()
    oracle: OracleSettings = OracleSettings()
    wkb: WkbSettings = WkbSettings()
    breit: BreitSettings = BreitSettings()
    problems: dict[str, ProblemDefinition] = {}

    def config_hash(self) -> str:
        """Short digest of the effective configuration, written into output headers."""
        return hashlib.sha256(self.model_dump_json().encode()).hexdigest()[:16]

    def with_overrides(self, **overrides: object) -> Self:
        """Copy with dotted-path overrides, e.g. ``{"solver.max_iter": 80}``; None values are skipped."""
        data = self.model_dump()
        for path, value in overrides.items():
            if value is None:
                continue
            node = data
            *parents, leaf = path.split(".")
            for key in parents:
                node = node[key]
            node[leaf] = value
        try:
            return self.model_validate(data)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def from_yaml(cls, config_yml: Path = CONFIG_YML) -> Self:
        if not config_yml.exists():
            logging.warning(
                f"Config file not found: {config_yml} ; falling back to {CONFIG_DEFAULT_YML}"
            )
            config_yml = CONFIG_DEFAULT_YML
        if not config_yml.exists():
            logging.warning(f"Config file not found: {config_yml} ; using built-in defaults")
            return cls()
        try:
            with open(config_yml) as f:
                yaml_data: dict = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"{config_yml}: {e}") from e
        try:
            return cls(**yaml_data)
        except ValidationError as e:
            logging.warning(e)
            raise ConfigError(f"{config_yml}: {e}") from e
