"""Group configuration: JSON files and named presets."""
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NotHyperbolic, ParseError, ValidationError
from .isometry import AffineIsometry, a, isometry_residual, rotation
from .schottky import SchottkyGroup, axis, trace

ISOMETRY_TOL = 1e-8
PARABOLIC_TOL = 1e-6


def example2():
    """Two translation-length-4 generators with axes crossing at a right angle.

    The first is a(4) translated along its neutral direction e1, the second its
    conjugate by a quarter turn; both have Margulis invariant 1.
    """
    r = rotation(np.pi / 2)
    e1 = np.array([1.0, 0.0, 0.0])
    return [AffineIsometry(a(4.0), e1), AffineIsometry(r @ a(4.0) @ r.T, r @ e1)]


PRESETS = {"example2": example2}


@dataclass
class GroupConfig:
    generators: list
    preset: str = None
    source: str = None

    def group(self):
        return SchottkyGroup(list(self.generators))

    def to_dict(self):
        return {
            "preset": self.preset,
            "generators": [{"linear": g.linear.ravel().tolist(), "translation": g.trans.tolist()}
                           for g in self.generators],
        }


def _numbers(value, n, what):
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ParseError(f"{what} needs {n} numbers")
    try:
        out = np.array([float(v) for v in value])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} has a non-numeric entry") from exc
    if not np.all(np.isfinite(out)):
        raise ParseError(f"{what} has a non-finite entry")
    return out


def validate_generator(g, index=0):
    res = isometry_residual(g.linear)
    if res > ISOMETRY_TOL or abs(np.linalg.det(g.linear) - 1) > ISOMETRY_TOL or g.linear[2, 2] <= 0:
        raise ValidationError(f"generator {index}: linear part is not in SO0(2,1) (residual {res:.3g})")
    tr = trace(g.linear)
    if abs(tr - 3) < PARABOLIC_TOL:
        raise ValidationError(f"generator {index}: trace {tr:.12g} is parabolic or identity")
    try:
        axis(g.linear)
    except NotHyperbolic as exc:
        raise ValidationError(f"generator {index}: not hyperbolic ({exc})") from exc
    return g


def parse_config(data, source=None):
    if not isinstance(data, dict):
        raise ParseError("config must be a JSON object")
    preset = data.get("preset")
    gens = []
    if preset is not None:
        if preset not in PRESETS:
            raise ParseError(f"unknown preset {preset!r}")
        gens.extend(PRESETS[preset]())
    raw = data.get("generators", [])
    if not isinstance(raw, list):
        raise ParseError("generators must be a list")
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "linear" not in item:
            raise ParseError(f"generator {i} needs a 'linear' block")
        lin = _numbers(item["linear"], 9, f"generator {i} linear").reshape(3, 3)
        tr = _numbers(item.get("translation", [0, 0, 0]), 3, f"generator {i} translation")
        gens.append(AffineIsometry(lin, tr))
    if not gens:
        raise ParseError("config defines no generators")
    for i, g in enumerate(gens):
        validate_generator(g, i)
    return GroupConfig(gens, preset, source)


def load_config(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_config(data, str(path))


def preset_config(name="example2"):
    return parse_config({"preset": name}, f"preset:{name}")
