"""Runtime settings and experiment configuration files.

Two layers:
- ``Settings`` reads process-level knobs (log level, parallelism, output
  directory) from ``TESO_*`` environment variables or a ``.env`` file.
- ``ExperimentConfig`` describes one experiment and is loaded from a TOML
  file with ``[queue]``, ``[teso]`` and ``[suite]`` sections. Unknown keys are
  errors, and every error names the offending key and its line in the file.
"""
import json
import logging
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from packages.benchmark.harness import LastMetric
from packages.benchmark.variants import AlgorithmVariant
from packages.optimizer.exceptions import ConfigError
from packages.optimizer.schemas import TesoConfig
from packages.queue_sim.model import QueueModel

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Process-level settings, e.g. ``TESO_LOG_LEVEL=DEBUG`` or ``TESO_JOBS=4``."""

    model_config = SettingsConfigDict(
        env_prefix="TESO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = "INFO"
    debug: bool = False
    jobs: int = Field(default=1, ge=1)
    output_dir: Path = Path("results")


settings = Settings()


class SuiteSection(BaseModel):
    """Benchmark-suite parameters. The base seed lives in ``[teso]``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_macro: int = Field(default=30, ge=1)
    algorithms: list[AlgorithmVariant] = Field(default_factory=lambda: list(AlgorithmVariant))
    output_dir: Path | None = None
    last_k: int = Field(default=50, ge=1)
    last_metric: LastMetric = LastMetric.EVALUATED_MEANS


class ExperimentConfig(BaseModel):
    """One experiment: queue problem, optimizer hyperparameters, suite design."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    queue: QueueModel = Field(default_factory=QueueModel)
    teso: TesoConfig = Field(default_factory=TesoConfig)
    suite: SuiteSection = Field(default_factory=SuiteSection)

    @property
    def seed(self) -> int:
        return self.teso.base_seed

    def dump_toml(self) -> str:
        """Effective configuration with every default written out."""
        data = self.model_dump(mode="json", by_alias=True)
        lines: list[str] = []
        for section in ("queue", "teso", "suite"):
            lines.append(f"[{section}]")
            for key, value in data[section].items():
                if value is None:
                    continue
                lines.append(f"{key} = {_toml_value(value)}")
            lines.append("")
        return "\n".join(lines)


def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value != value:
            return "nan"
        if value in (float("inf"), float("-inf")):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if isinstance(value, list):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    return json.dumps(str(value))


def _locate(text: str, section: str | None, key: str | None) -> int | None:
    """1-based line of ``key`` inside ``[section]`` (or of the header when key is None)."""
    current: str | None = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        header = re.fullmatch(r"\[([^\[\]]+)\]", stripped)
        if header:
            current = header.group(1).strip()
            if key is None and current == section:
                return number
            continue
        if key is not None and current == section and re.match(rf"{re.escape(key)}\s*=", stripped):
            return number
    return None


def _parse_override(raw: str) -> tuple[list[str], Any]:
    """``section.key=value`` with the value read as a TOML literal when possible."""
    if "=" not in raw:
        raise ConfigError(f"Override '{raw}' must look like section.key=value")
    path, value = raw.split("=", 1)
    parts = [p.strip() for p in path.strip().split(".")]
    if len(parts) != 2 or not all(parts):
        raise ConfigError(f"Override key '{path}' must look like section.key")
    try:
        parsed = tomllib.loads(f"v = {value.strip()}")["v"]
    except tomllib.TOMLDecodeError:
        parsed = value.strip()
    return parts, parsed


def apply_overrides(data: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Merge ``{"section.key": value}`` pairs into raw config data."""
    merged = {section: dict(values) for section, values in data.items()}
    for dotted, value in overrides.items():
        section, key = dotted.split(".", 1)
        merged.setdefault(section, {})[key] = value
    return merged


def _validation_error(exc: ValidationError, text: str, source: str) -> ConfigError:
    problems = []
    for err in exc.errors():
        loc = [str(part) for part in err["loc"]]
        section = loc[0] if loc else None
        key = loc[1] if len(loc) > 1 else None
        line = _locate(text, section, key) if text else None
        where = f"{source}:{line}" if line else source
        problems.append(f"{where}: {'.'.join(loc) or '<root>'}: {err['msg']}")
    return ConfigError(
        "Invalid configuration:\n  " + "\n  ".join(problems),
        details={"errors": problems},
    )


def load_experiment(
    path: Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> ExperimentConfig:
    """Defaults < file < overrides, validated in one pass."""
    text = ""
    source = "<defaults>"
    data: dict[str, Any] = {}
    if path is not None:
        source = str(path)
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{path}: malformed TOML: {e}") from e
    if overrides:
        data = apply_overrides(data, overrides)
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise _validation_error(e, text, source) from e
    logger.debug("Loaded experiment config from %s", source)
    return config


def parse_overrides(pairs: list[str]) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for raw in pairs:
        (section, key), value = _parse_override(raw)
        overrides[f"{section}.{key}"] = value
    return overrides
