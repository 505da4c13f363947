"""JSON file formats: states, settings, unitaries and certificates."""

import json
import os
import tempfile
from functools import cache
from importlib import resources

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import DimensionMismatchError, InvalidStateError
from .operators import MeasurementSettings
from .qubit import num_qubits

SCHEMA_VERSION = 1


def _complex_pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).reshape(-1)]


def _from_pairs(pairs):
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ValueError("complex numbers must be encoded as [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_json(psi):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return {"n": num_qubits(psi.size), "amplitudes": _complex_pairs(psi)}


def state_from_json(data, tol=DEFAULT_TOLERANCES.state_file_norm):
    n = int(data["n"])
    psi = _from_pairs(data["amplitudes"]).reshape(-1)
    if psi.size != 1 << n:
        raise DimensionMismatchError(f"state file declares n={n} but has {psi.size} amplitudes")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > tol:
        raise InvalidStateError(f"state is not normalized (norm {norm!r})")
    return psi


def settings_from_json(data):
    return MeasurementSettings.from_json(data)


def unitaries_to_json(unitaries):
    return {
        "n": len(unitaries),
        "unitaries": [[_complex_pairs(row) for row in np.asarray(U)] for U in unitaries],
    }


def unitaries_from_json(data):
    unitaries = _from_pairs(data["unitaries"])
    if unitaries.shape != (int(data["n"]), 2, 2):
        raise DimensionMismatchError(f"expected {data['n']} 2x2 unitaries, got shape {unitaries.shape}")
    return unitaries


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path, data):
    """Write ``data`` atomically: a temporary file in the same directory is renamed over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@cache
def load_schema(name):
    """Bundled JSON schema by short name, e.g. ``"state"`` or ``"certificate"``."""
    text = resources.files("ardehali.schemas").joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
