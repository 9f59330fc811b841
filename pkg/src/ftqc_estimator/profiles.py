"""Built-in hardware profiles and profile-directory loading.

Profiles are data files, not code: each JSON file carries a
:class:`PhysicalQubitParams` record plus a default QEC scheme name.  Six
profiles ship with the package, spanning gate-based and measurement-based
instruction sets, nanosecond and microsecond regimes, and realistic to
optimistic error rates.  The ``FTQC_PROFILE_DIR`` environment variable
points the loader at a different directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional

from .errors import ConfigError
from .qec import PhysicalQubitParams

__all__ = [
    "HardwareProfile",
    "BUILTIN_PROFILE_NAMES",
    "PROFILE_DIR_ENV",
    "load_profile",
    "list_profiles",
]

PROFILE_DIR_ENV = "FTQC_PROFILE_DIR"

BUILTIN_PROFILE_NAMES = (
    "qubit_gate_ns_e3",
    "qubit_gate_ns_e4",
    "qubit_gate_us_e3",
    "qubit_gate_us_e4",
    "qubit_maj_ns_e4",
    "qubit_maj_ns_e6",
)


@dataclass(frozen=True)
class HardwareProfile:
    name: str
    description: str
    qubit_params: PhysicalQubitParams
    default_scheme_name: str

    def as_mapping(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "qubitParams": self.qubit_params.as_mapping(),
            "defaultQecScheme": self.default_scheme_name,
        }

    @classmethod
    def from_mapping(cls, data: Mapping) -> "HardwareProfile":
        for key in ("name", "qubitParams", "defaultQecScheme"):
            if key not in data:
                raise ConfigError(f"hardware profile is missing {key!r}")
        return cls(
            name=data["name"],
            description=data.get("description", ""),
            qubit_params=PhysicalQubitParams.from_mapping(data["qubitParams"]),
            default_scheme_name=data["defaultQecScheme"],
        )


def _override_dir() -> Optional[Path]:
    value = os.environ.get(PROFILE_DIR_ENV)
    return Path(value) if value else None


def _load_file(path: Path) -> HardwareProfile:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read profile {path}: {exc}") from exc
    return HardwareProfile.from_mapping(data)


def _builtin_text(name: str) -> str:
    resource = resources.files(__package__).joinpath(f"profiles/{name}.json")
    return resource.read_text()


def load_profile(name: str) -> HardwareProfile:
    """Load a profile by name from the active profile directory."""
    override = _override_dir()
    if override is not None:
        path = override / f"{name}.json"
        if not path.is_file():
            raise ConfigError(f"no profile {name!r} in {override}")
        return _load_file(path)
    if name not in BUILTIN_PROFILE_NAMES:
        raise ConfigError(
            f"unknown hardware profile {name!r}; built-ins: "
            + ", ".join(BUILTIN_PROFILE_NAMES)
        )
    return HardwareProfile.from_mapping(json.loads(_builtin_text(name)))


def list_profiles() -> list[HardwareProfile]:
    """All profiles in the active directory, in a stable order."""
    override = _override_dir()
    if override is not None:
        if not override.is_dir():
            raise ConfigError(f"{PROFILE_DIR_ENV} points at {override}, not a directory")
        return [_load_file(p) for p in sorted(override.glob("*.json"))]
    return [load_profile(name) for name in BUILTIN_PROFILE_NAMES]
