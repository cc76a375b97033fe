"""File formats for matrices and trajectories.

JSON is the canonical machine format and round-trips at full double
precision; CSV and a plain-text table exist for spreadsheets and eyes.
All formats are deterministic: the same object always renders to the
same bytes, so outputs can be compared byte for byte.

A trajectory file is one JSON header line followed by one outcome label
per line.  Labels are exact strings ("1/2", "-3/2", "0"), never floats.
"""

import io
import json

import numpy as np

from .errors import FormatError
from .markov import StochasticMatrix, Trajectory
from .rng import RNG_ALGORITHM

FORMAT_VERSION = 1


def matrix_to_json(m: StochasticMatrix, kind: str = "generic", params: dict | None = None) -> str:
    """Render a matrix as one JSON object with full float precision."""
    payload = {
        "kind": kind,
        "labels": [str(label) for label in m.labels],
        "rows": [[float(x) for x in row] for row in m.rows],
        "params": dict(params or {}),
        "version": FORMAT_VERSION,
    }
    return json.dumps(payload) + "\n"


def matrix_from_json(text: str) -> tuple[StochasticMatrix, dict]:
    """Parse a matrix rendered by matrix_to_json.

    Returns the matrix (labels become plain strings) and the metadata
    (kind, params, version).  Structural violations raise FormatError;
    probability violations surface from the matrix constructor.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}", line=exc.lineno) from None
    if not isinstance(payload, dict):
        raise FormatError("expected a JSON object at top level")
    version = payload.get("version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version!r}")
    labels = payload.get("labels")
    rows = payload.get("rows")
    kind = payload.get("kind")
    if not isinstance(kind, str):
        raise FormatError("missing or non-string 'kind'")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FormatError("'labels' must be a list of strings")
    if not isinstance(rows, list) or not all(
        isinstance(r, list) and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in r)
        for r in rows
    ):
        raise FormatError("'rows' must be a list of numeric lists")
    params = payload.get("params", {})
    if not isinstance(params, dict):
        raise FormatError("'params' must be an object")
    matrix = StochasticMatrix(labels=tuple(labels), rows=np.array(rows, dtype=float))
    return matrix, {"kind": kind, "params": params, "version": version}


def matrix_to_csv(m: StochasticMatrix) -> str:
    """Label header row, then one row of full-precision entries per line."""
    lines = [",".join(str(label) for label in m.labels)]
    for row in m.rows:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def matrix_to_table(m: StochasticMatrix) -> str:
    """Aligned human-readable table; not meant to be parsed back."""
    labels = [str(label) for label in m.labels]
    width = max(max(len(x) for x in labels), 9)
    header = " " * (width + 2) + "  ".join(f"{x:>{width}}" for x in labels)
    lines = [header]
    for label, row in zip(labels, m.rows):
        cells = "  ".join(f"{x:>{width}.6f}" for x in row)
        lines.append(f"{label:>{width}}  {cells}")
    return "\n".join(lines) + "\n"


def write_trajectory(t: Trajectory, stream, config: dict | None = None) -> None:
    """Write the header line and outcome labels to a text stream."""
    header = {
        "labels": [str(label) for label in t.labels],
        "seed": t.seed,
        "steps": t.steps,
        "rng": RNG_ALGORITHM,
        "version": FORMAT_VERSION,
    }
    if config is not None:
        header["config"] = config
    stream.write(json.dumps(header))
    stream.write("\n")
    label_strings = [str(label) for label in t.labels]
    # chunked join keeps memory flat for long trajectories
    states = t.states
    for start in range(0, states.size, 1 << 20):
        chunk = states[start : start + (1 << 20)]
        stream.write("\n".join(label_strings[i] for i in chunk))
        stream.write("\n")


def trajectory_to_text(t: Trajectory, config: dict | None = None) -> str:
    buffer = io.StringIO()
    write_trajectory(t, buffer, config=config)
    return buffer.getvalue()


def trajectory_from_text(text: str) -> tuple[Trajectory, dict]:
    """Parse a trajectory file; FormatError carries the offending line number."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty trajectory file", line=1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid header JSON: {exc}", line=1) from None
    if not isinstance(header, dict):
        raise FormatError("header must be a JSON object", line=1)
    labels = header.get("labels")
    seed = header.get("seed")
    steps = header.get("steps")
    rng_name = header.get("rng")
    if not isinstance(labels, list) or not labels or not all(isinstance(x, str) for x in labels):
        raise FormatError("header 'labels' must be a non-empty list of strings", line=1)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise FormatError("header 'seed' must be a non-negative integer", line=1)
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
        raise FormatError("header 'steps' must be a non-negative integer", line=1)
    if not isinstance(rng_name, str):
        raise FormatError("header 'rng' must be a string", line=1)
    if header.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {header.get('version')!r}", line=1)
    index = {label: i for i, label in enumerate(labels)}
    if len(lines) - 1 != steps + 1:
        raise FormatError(
            f"expected {steps + 1} outcome lines for {steps} steps, found {len(lines) - 1}",
            line=len(lines),
        )
    states = np.empty(steps + 1, dtype=np.int64)
    for offset, line in enumerate(lines[1:]):
        i = index.get(line)
        if i is None:
            raise FormatError(f"unknown outcome label {line!r}", line=offset + 2)
        states[offset] = i
    trajectory = Trajectory(labels=tuple(labels), states=states, seed=seed, steps=steps)
    return trajectory, header
