"""Named presets shipped with the package: orbit systems for the worked
two-orbit examples and torus maps for the no-periodic-orbit mapping tori."""

from __future__ import annotations

import json
from importlib import resources

from .errors import UnknownPresetError
from .lefschetz import AffineTorusMap
from .orbits import OrbitSystem, system_from_json

SYSTEM_PRESETS = (
    "ellipsoid-sqrt2",
    "ellipsoid-golden",
    "ellipsoid-sqrt3",
    "lens3",
    "n1",
    "n3",
    "eh-system",
)
TORUS_PRESETS = ("irrational-rotation", "twist", "anosov")


def preset_names() -> list[str]:
    return list(SYSTEM_PRESETS + TORUS_PRESETS)


def _read(name: str) -> dict:
    try:
        path = resources.files("echlab").joinpath(f"presets/{name}.json")
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise UnknownPresetError(f"unknown preset {name!r}; see preset-list") from None


def load_preset(name: str):
    """Return the named OrbitSystem or AffineTorusMap."""
    if name not in SYSTEM_PRESETS + TORUS_PRESETS:
        raise UnknownPresetError(f"unknown preset {name!r}; see preset-list")
    obj = _read(name)
    if "orbits" in obj:
        return system_from_json(obj)
    return AffineTorusMap.build(obj["A"], obj["b"])


def load_system_preset(name: str) -> OrbitSystem:
    system = load_preset(name)
    if not isinstance(system, OrbitSystem):
        raise UnknownPresetError(f"preset {name!r} is not an orbit system")
    return system


def load_torus_preset(name: str) -> AffineTorusMap:
    tm = load_preset(name)
    if not isinstance(tm, AffineTorusMap):
        raise UnknownPresetError(f"preset {name!r} is not a torus map")
    return tm
