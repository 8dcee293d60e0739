"""Configuration management for convex-spheres."""

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

from .errors import ConfigError

HARD_MAX_FACETS = 1_000_000
HARD_MAX_FUNCTIONS = 100_000_000
EMIT_FORMATS = ("json", "dot", "off")
COMMANDS = ("lattice", "complex", "sphere", "qsym", "enriched", "verify")


@dataclass
class Config:
    """Defaults read from the config file."""
    m_max: int = 3
    max_facets: int = HARD_MAX_FACETS
    max_functions: int = HARD_MAX_FUNCTIONS
    emit: List[str] = field(default_factory=lambda: ["json"])
    log_level: str = "INFO"


class ConfigManager:
    """Manages loading and saving configuration."""

    def __init__(self, config_dir: Optional[Path] = None):
        override = os.environ.get("CONVEX_SPHERES_CONFIG_DIR")
        if config_dir is None:
            config_dir = Path(override) if override else Path.home() / ".config" / "convex-spheres"
        self.config_dir = config_dir
        self.config_file = self.config_dir / "config.json"
        self.config = self._load()

    def _load(self) -> Config:
        """Load configuration from file."""
        if self.config_file.exists():
            try:
                with open(self.config_file, "r") as f:
                    data = json.load(f)
                    return Config(**data)
            except (json.JSONDecodeError, TypeError, OSError):
                pass
        return Config()

    def save(self) -> None:
        """Save configuration to file."""
        self.config_dir.mkdir(parents=True, exist_ok=True)
        with open(self.config_file, "w") as f:
            json.dump(asdict(self.config), f, indent=2)


def _check_writable(out: Path) -> None:
    """`out` must be a writable directory or creatable under one."""
    if out.exists():
        if not out.is_dir():
            raise ConfigError(f"{out} is not a directory")
        existing = out
    else:
        existing = next((p for p in out.parents if p.exists()), Path("."))
        if not existing.is_dir():
            raise ConfigError(f"cannot create {out}: {existing} is not a directory")
    if not os.access(existing, os.W_OK):
        raise ConfigError(f"{existing} is not writable")


@dataclass
class RunConfig:
    """One invocation: the file defaults with command-line flags on top."""
    command: str
    input: Path
    out: Optional[Path] = None
    m_max: int = 3
    max_facets: int = HARD_MAX_FACETS
    max_functions: int = HARD_MAX_FUNCTIONS
    emit: List[str] = field(default_factory=lambda: ["json"])
    log_level: str = "INFO"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.m_max < 1:
            raise ConfigError("m_max must be positive")
        if not 1 <= self.max_facets <= HARD_MAX_FACETS:
            raise ConfigError(f"max_facets must lie in [1, {HARD_MAX_FACETS}]")
        if not 1 <= self.max_functions <= HARD_MAX_FUNCTIONS:
            raise ConfigError(f"max_functions must lie in [1, {HARD_MAX_FUNCTIONS}]")
        unknown = [e for e in self.emit if e not in EMIT_FORMATS]
        if unknown:
            raise ConfigError(f"unknown export formats: {', '.join(unknown)}")
        if self.out is not None:
            _check_writable(self.out)

    @classmethod
    def merged(cls, base: Config, command: str, input: Path, out: Optional[Path] = None,
               m_max: Optional[int] = None, max_facets: Optional[int] = None,
               emit: Optional[List[str]] = None, verbose: bool = False) -> "RunConfig":
        return cls(
            command=command,
            input=input,
            out=out,
            m_max=m_max if m_max is not None else base.m_max,
            max_facets=max_facets if max_facets is not None else base.max_facets,
            max_functions=base.max_functions,
            emit=list(emit) if emit is not None else list(base.emit),
            log_level="DEBUG" if verbose else base.log_level,
        )
