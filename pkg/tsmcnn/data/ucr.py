"""
Labelled time series datasets and the UCR archive text format: one series per line, the class
label first, then the values, all separated by commas (whitespace is accepted as well).
"""

from __future__ import annotations

import os
import re
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from tsmcnn.exceptions import DataFormatError


@dataclass(frozen=True, eq=False)
class LabeledSeries:
    """
    A time series with its class.

    Attributes
    ----------
        label : int
            The class index, in :code:`0, ..., num_classes - 1`.
        values : np.ndarray
            The series.
        provenance : int
            Identifier of the series it comes from (its 0-based row in the source file).
        offset : int
            For slices, the 0-based position of the slice in the parent series; 0 otherwise.
    """

    label: int
    values: np.ndarray
    provenance: int
    offset: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or len(values) < 2:
            raise ValueError("A labelled series needs at least 2 values.")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"The series {self.provenance} contains non-finite values.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class Dataset:
    """
    A collection of labelled series.

    Attributes
    ----------
        items : list[LabeledSeries]
            The series.
        label_map : dict
            Original label value to class index, a bijection onto :code:`0, ..., C - 1`.
        name : str
            Name of the dataset (used to decide on z-normalisation).
    """

    items: list
    label_map: dict
    name: str = ""
    _inverse: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        indices = sorted(self.label_map.values())
        if indices != list(range(len(indices))):
            raise ValueError("The label map needs to map onto 0, ..., num_classes - 1.")
        for item in self.items:
            if not 0 <= item.label < len(indices):
                raise ValueError(
                    f"The class index {item.label} of series {item.provenance} is out of range."
                )
        self._inverse = {v: k for k, v in self.label_map.items()}

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[LabeledSeries]:
        return iter(self.items)

    @property
    def num_classes(self) -> int:
        return len(self.label_map)

    @property
    def series_length(self) -> int | None:
        """The common length of the series, :code:`None` if the lengths differ."""
        lengths = {len(item) for item in self.items}
        if len(lengths) == 1:
            return lengths.pop()
        return None

    @property
    def labels(self) -> np.ndarray:
        return np.array([item.label for item in self.items], dtype=np.intp)

    @property
    def provenance(self) -> np.ndarray:
        return np.array([item.provenance for item in self.items], dtype=np.int64)

    def values(self) -> np.ndarray:
        """
        The series stacked as a matrix, one per row. All series need the same length.
        """
        if self.series_length is None:
            raise ValueError(f"The series of the dataset {self.name!r} do not share a length.")
        return np.stack([item.values for item in self.items])

    def original_label(self, class_index: int):
        """The original label value of a class index."""
        return self._inverse[class_index]

    def class_labels(self) -> list:
        """The original labels ordered by class index."""
        return [self._inverse[i] for i in range(self.num_classes)]

    def with_items(self, items: list) -> Dataset:
        """A dataset with the same label map and name but other items."""
        return Dataset(list(items), dict(self.label_map), self.name)


def dataset_name(path: str) -> str:
    """
    Name of a dataset from the name of its file: the extension and a :code:`_TRAIN` or
    :code:`_TEST` suffix are removed, e.g., :code:`GunPoint_TRAIN.tsv` gives :code:`GunPoint`.
    """
    base = os.path.basename(path)
    base = re.sub(r"\.(tsv|csv|txt)$", "", base, flags=re.IGNORECASE)
    return re.sub(r"_(TRAIN|TEST)$", "", base, flags=re.IGNORECASE)


def _parse_label(token: str):
    value = float(token)
    if value.is_integer():
        return int(value)
    return value


def _split_fields(line: str) -> list[str]:
    if "," in line:
        return [t.strip() for t in line.split(",")]
    return line.split()


def load_ucr(
    path: str, label_map: dict = None, rectangular: bool = True, name: str = None
) -> Dataset:
    """
    Reads a file in the UCR format. Labels are remapped to class indices following the sorted
    order of the original label values, unless a label map is given (e.g., the one of the
    training file when reading a test file).

    Parameters
    ----------
        path : str
            Path of the file.
        label_map : dict, default: :code:`None`
            Label map to use instead of building one.
        rectangular : bool, default: :code:`True`
            Whether all series must have the same length.
        name : str, default: :code:`None`
            Name of the dataset, derived from the file name if not given.

    Returns
    -------
        Dataset
            The dataset.

    Raises
    ------
        FileNotFoundError
            When the file does not exist.
        DataFormatError
            For empty files, unparsable fields, ragged rows (when :code:`rectangular`) or
            unknown labels. The message gives the line number.
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"No such data file: {path}")

    raw_labels, rows, line_numbers = [], [], []
    expected_fields = None
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            fields = _split_fields(line)
            if len(fields) < 3:
                raise DataFormatError(
                    path, line_number, "a line needs a label and at least 2 values."
                )
            if rectangular:
                if expected_fields is None:
                    expected_fields = len(fields)
                elif len(fields) != expected_fields:
                    raise DataFormatError(
                        path,
                        line_number,
                        f"found {len(fields)} fields while previous lines have {expected_fields}.",
                    )
            try:
                raw_labels.append(_parse_label(fields[0]))
            except ValueError:
                raise DataFormatError(path, line_number, f"cannot parse the label {fields[0]!r}.")
            try:
                values = np.array([float(t) for t in fields[1:]], dtype=np.float64)
            except ValueError as e:
                raise DataFormatError(path, line_number, f"cannot parse a value ({e}).")
            if not np.all(np.isfinite(values)):
                raise DataFormatError(path, line_number, "missing or non-finite values.")
            rows.append(values)
            line_numbers.append(line_number)

    if not rows:
        raise DataFormatError(path, None, "the file contains no series.")

    if label_map is None:
        label_map = {label: index for index, label in enumerate(sorted(set(raw_labels)))}
    items = []
    for row_id, (label, values, line_number) in enumerate(zip(raw_labels, rows, line_numbers)):
        if label not in label_map:
            raise DataFormatError(path, line_number, f"unknown label {label!r}.")
        items.append(LabeledSeries(label_map[label], values, row_id))
    return Dataset(items, dict(label_map), name if name is not None else dataset_name(path))


def save_ucr(dataset: Dataset, path: str) -> None:
    """
    Writes a dataset in the UCR format with comma separators, using the original labels. Values
    are written with :code:`repr` so that reading the file back gives the same floats.
    """
    with open(path, "w", encoding="utf-8") as f:
        for item in dataset:
            label = dataset.original_label(item.label)
            f.write(",".join([repr(label)] + [repr(float(v)) for v in item.values]) + "\n")
