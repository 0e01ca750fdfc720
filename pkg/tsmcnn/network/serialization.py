"""
Model file format.

A model file starts with the line :code:`MCNN-MODEL v1`, followed by one :code:`key=value` line
per configuration entry (values are JSON), the seed and the class labels, and a line
:code:`end`. Then, for every parameter array in the order of
:py:meth:`~tsmcnn.network.model.McnnModel.parameters`, a line :code:`name dim_1 ... dim_k` is
followed by the raw array as little-endian IEEE-754 64-bit floats in row-major order.
Loading a saved model gives back bit-identical parameters.
"""

from __future__ import annotations

import io
import json
import os

import numpy as np

from tsmcnn.network.config import McnnConfig
from tsmcnn.network.model import McnnModel, assemble

MAGIC = "MCNN-MODEL v1"
END_OF_HEADER = "end"


def save_model(model: McnnModel, path: str) -> None:
    """
    Writes a model to a file. The file is written next to its destination and moved in place
    once complete.

    Parameters
    ----------
        model : McnnModel
            The model.
        path : str
            Destination path.
    """
    header = [MAGIC]
    for key, value in model.config.to_dict().items():
        header.append(f"{key}={json.dumps(value)}")
    header.append(f"seed={json.dumps(model.seed)}")
    header.append(f"class_labels={json.dumps(model.class_labels)}")
    header.append(END_OF_HEADER)

    buffer = io.BytesIO()
    buffer.write(("\n".join(header) + "\n").encode("utf-8"))
    for name, values in model.parameters().items():
        dims = " ".join(str(d) for d in values.shape)
        buffer.write(f"{name} {dims}\n".encode("utf-8"))
        buffer.write(np.ascontiguousarray(values, dtype="<f8").tobytes())

    tmp_path = f"{path}.tmp"
    with open(tmp_path, "wb") as f:
        f.write(buffer.getvalue())
    os.replace(tmp_path, path)


def load_model(path: str) -> McnnModel:
    """
    Reads a model written by :py:func:`save_model`.

    Parameters
    ----------
        path : str
            Path of the model file.

    Returns
    -------
        McnnModel
            The model.

    Raises
    ------
        ValueError
            When the file is not a model file or its arrays do not match the configuration.
    """
    with open(path, "rb") as f:
        stream = io.BytesIO(f.read())

    first = stream.readline().decode("utf-8").rstrip("\n")
    if first != MAGIC:
        raise ValueError(f"{path} is not a model file (header {first!r}, expected {MAGIC!r}).")
    entries = {}
    while True:
        line = stream.readline()
        if not line:
            raise ValueError(f"{path}: the header of the model file is not terminated.")
        line = line.decode("utf-8").rstrip("\n")
        if line == END_OF_HEADER:
            break
        key, _, value = line.partition("=")
        try:
            entries[key] = json.loads(value)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path}: cannot read the header entry {key!r}.") from e

    seed = entries.pop("seed", None)
    class_labels = entries.pop("class_labels", None)
    try:
        config = McnnConfig.from_dict(entries)
    except (KeyError, TypeError) as e:
        raise ValueError(f"{path}: incomplete or unknown configuration in the header.") from e
    model = assemble(config, seed=seed)
    model.class_labels = class_labels

    expected = model.parameters()
    for name, target in expected.items():
        line = stream.readline().decode("utf-8").rstrip("\n").split()
        if not line or line[0] != name:
            raise ValueError(f"{path}: expected the array {name!r}, found {line[:1]}.")
        shape = tuple(int(d) for d in line[1:])
        if shape != target.shape:
            raise ValueError(
                f"{path}: the array {name!r} has shape {shape}, the configuration implies "
                f"{target.shape}."
            )
        num_bytes = int(np.prod(shape, dtype=np.int64)) * 8
        raw = stream.read(num_bytes)
        if len(raw) != num_bytes:
            raise ValueError(f"{path}: the array {name!r} is truncated.")
        target[...] = np.frombuffer(raw, dtype="<f8").reshape(shape)
    if stream.read(1):
        raise ValueError(f"{path}: unexpected trailing data after the last array.")
    return model
