"""JSON fixtures and deterministic report serialization."""
import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .pattern import InformationPattern
from .riccati import Plant

__all__ = [
    'dump_pattern',
    'dump_plant',
    'dumps_deterministic',
    'fixture_path',
    'load_pattern',
    'load_plant',
]


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f'{path}: invalid JSON ({exc})') from exc


def fixture_path(name):
    """Path of a bundled fixture such as ``'chain.json'``."""
    return Path(str(resources.files('delayh2') / 'data' / name))


def _resolve(path):
    p = Path(path)
    if not p.exists() and fixture_path(p.name).exists() and p.parent == Path('.'):
        return fixture_path(p.name)
    return p


def load_plant(path):
    """Read a plant file; bare names of bundled fixtures are accepted."""
    return Plant.from_dict(_read_json(_resolve(path)))


def load_pattern(path):
    return InformationPattern.from_dict(_read_json(_resolve(path)))


def dump_plant(plant, path):
    Path(path).write_text(dumps_deterministic(plant.to_dict(), float_format=None) + '\n')


def dump_pattern(pattern, path):
    Path(path).write_text(dumps_deterministic(pattern.to_dict()) + '\n')


def _fmt_float(x, float_format):
    if not math.isfinite(x):
        raise ValidationError('cannot serialize a non-finite number')
    return repr(float(x)) if float_format is None else float_format % x


def dumps_deterministic(obj, indent=2, float_format='%.12e', _level=0):
    """JSON text with sorted keys and a fixed float format.

    Integers and booleans are written as such; ``float_format=None`` keeps
    the shortest round-tripping representation.
    """
    pad = ' ' * (indent * (_level + 1))
    end = ' ' * (indent * _level)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if obj is None:
        return 'null'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj, float_format)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f'{pad}{json.dumps(str(k))}: '
                 f'{dumps_deterministic(obj[k], indent, float_format, _level + 1)}'
                 for k in sorted(obj, key=str)]
        return '{\n' + ',\n'.join(items) + '\n' + end + '}'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        parts = [dumps_deterministic(v, indent, float_format, _level + 1) for v in obj]
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return '[' + ', '.join(parts) + ']'
        return '[\n' + ',\n'.join(pad + p for p in parts) + '\n' + end + ']'
    raise TypeError(f'cannot serialize {type(obj).__name__}')
