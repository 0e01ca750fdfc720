from __future__ import annotations

import abc
import os.path
from enum import Enum

import pandas as pd
import seaborn as sns

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from tsmcnn.data import load_ucr, preprocess


def archive_files(name: str) -> tuple[str, str] | None:
    """
    Training and test files of a UCR dataset under the directory given by the UCR_ARCHIVE
    environment variable, None if they cannot be found.
    """
    root = os.environ.get("UCR_ARCHIVE")
    if not root:
        return None
    for directory in (os.path.join(root, name), root):
        for extension in (".tsv", ""):
            train = os.path.join(directory, f"{name}_TRAIN{extension}")
            test = os.path.join(directory, f"{name}_TEST{extension}")
            if os.path.isfile(train) and os.path.isfile(test):
                return train, test
    return None


def load_archive_dataset(name: str):
    files = archive_files(name)
    if files is None:
        return None
    train = preprocess(load_ucr(files[0]))
    test = preprocess(load_ucr(files[1], label_map=train.label_map))
    return train, test


class Experiment(abc.ABC):
    def __init__(self, parameters_list, experiment_name, short_name, x, hue=None):
        if not isinstance(parameters_list, list):
            parameters_list = [parameters_list]
        self.parameters_list: list[dict] = parameters_list
        self.experiment_name = experiment_name
        self.short_name = short_name
        self.x = x
        self.hue = hue

    @abc.abstractmethod
    def run_single(self, parameters) -> list[dict]:
        """
        Runs the experiment for one set of parameters and returns the rows of the csv file.
        """

    def csv_path(self, dir_path):
        return os.path.join(dir_path, f"{self.short_name}.csv")

    def write_csv(self, dir_path):
        def formatting(v):
            if isinstance(v, Enum):
                return v.value
            if v is None:
                return ""
            return str(v)

        print(f"Running the {self.experiment_name} experiment...")
        rows = []
        for parameters in self.parameters_list:
            print(f"\t{parameters}")
            rows.extend(self.run_single(parameters))
        if not rows:
            print("\t...nothing to write (is UCR_ARCHIVE set?)")
            return False
        columns = list(rows[0].keys())
        with open(self.csv_path(dir_path), "w") as f:
            f.write(";".join(columns) + "\n")
            for row in rows:
                f.write(";".join(formatting(row[c]) for c in columns) + "\n")
        print("\t...written!")
        return True

    def plot(self, csv_dir_path, plot_dir_path):
        print(f"Plotting the {self.experiment_name} experiment...")
        df = pd.read_csv(self.csv_path(csv_dir_path), delimiter=";")
        plt.close("all")
        sns.set_context("paper")
        g = sns.catplot(
            data=df,
            x=self.x,
            y="error",
            hue=self.hue,
            kind="bar",
            errorbar="sd",
            legend="full",
        )
        g.set_axis_labels(self.x.replace("_", " ").capitalize(), "Test error")
        plt.suptitle(self.experiment_name)
        g.figure.tight_layout()
        plt.savefig(
            os.path.join(plot_dir_path, f"{self.short_name}.png"),
            dpi=300,
            bbox_inches="tight",
        )
        print("\t...plotted!")
