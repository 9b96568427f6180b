"""Reading restriction systems from JSON (or YAML) documents.

Document layout::

    {"H": [[...]], "K": [...], "G": [...], "S": [...]}

``R`` is accepted in place of ``H``. Infinite bounds are written as the
strings "-inf" / "+inf". ``S`` lists the preferred full-rank block with
1-based column indices; it is stored 0-based on the system. A missing ``K``
means no lower bounds.
"""

import json
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from restricted_regression.core.errors import ConfigError, ParseError
from restricted_regression.restrictions.system import RestrictionSystem


def _to_float(value: Any, where: str) -> float:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: expected a number or '-inf'/'+inf', got {value!r}") from exc


def _to_array(value: Any, where: str) -> np.ndarray:
    if isinstance(value, list):
        return np.array([_to_array(v, f"{where}[{i}]") for i, v in enumerate(value)])
    return np.array(_to_float(value, where))


def system_from_dict(data: dict[str, Any]) -> RestrictionSystem:
    """Build a system from a parsed restriction document.

    Raises:
        ConfigError: If H/R or G is missing.
        ParseError: If an entry is not numeric.
    """
    key = "H" if "H" in data else "R"
    if key not in data or "G" not in data:
        raise ConfigError("restriction document needs 'H' (or 'R') and 'G'")
    H = _to_array(data[key], key)
    G = _to_array(data["G"], "G")
    K = _to_array(data["K"], "K") if data.get("K") is not None else None
    preferred = None
    if data.get("S") is not None:
        preferred = tuple(int(j) - 1 for j in data["S"])
    return RestrictionSystem.from_bounds(H, G, K, preferred)


def system_to_dict(system: RestrictionSystem) -> dict[str, Any]:
    """Inverse of :func:`system_from_dict`, with infinities as strings."""

    def encode(arr: np.ndarray) -> Any:
        if arr.ndim == 0:
            x = float(arr)
            if np.isinf(x):
                return "+inf" if x > 0 else "-inf"
            return x
        return [encode(a) for a in arr]

    doc: dict[str, Any] = {
        "H": encode(system.H),
        "K": encode(system.K),
        "G": encode(system.G),
    }
    if system.preferred is not None:
        doc["S"] = [j + 1 for j in system.preferred]
    return doc


def load_restrictions(path: str | Path) -> RestrictionSystem:
    """Load a restriction document (.json, or .yaml/.yml).

    Raises:
        ConfigError: If the file does not exist or cannot be decoded.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"restriction file not found: {path}")
    try:
        with path.open(encoding="utf-8") as f:
            raw = json.load(f) if path.suffix == ".json" else yaml.safe_load(f)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot decode restriction file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"restriction file {path} must contain a mapping")
    return system_from_dict(raw)
