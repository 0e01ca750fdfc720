import os
from dataclasses import replace

import pandas as pd
import seaborn as sns

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from tsmcnn.network import McnnConfig, best_threshold, filter_activation, rank_filters
from tsmcnn.train import TrainConfig, fit
from validation.experiment import Experiment, load_archive_dataset


class FilterExperiment(Experiment):
    """
    Max-pooled response of the most discriminative learned filter of a branch on every training
    series of a two-class dataset, and the threshold separating the classes.
    """

    def __init__(self, datasets=("GunPoint",), branch="identity", seed=0):
        parameters_list = [{"dataset": d, "branch": branch, "seed": seed} for d in datasets]
        super(FilterExperiment, self).__init__(
            parameters_list, "Response of a single learned filter", "filters", "activation",
            "label",
        )
        self.train_config = TrainConfig(max_epochs=100, patience=20)

    def run_single(self, parameters):
        data = load_archive_dataset(parameters["dataset"])
        if data is None:
            return []
        train, _ = data
        if train.num_classes != 2:
            print(f"\t{parameters['dataset']} does not have two classes, skipped.")
            return []
        config = McnnConfig(
            num_classes=2,
            input_length=train.series_length,
            local_filters=64,
            full_filters=64,
            dense_units=64,
        )
        tcfg = replace(self.train_config, seed=parameters["seed"])
        model, _ = fit(config, train, tcfg)
        filter_index, _ = rank_filters(model, train, parameters["branch"])[0]
        values = filter_activation(model, train, parameters["branch"], filter_index)
        split = best_threshold(values, train.labels)
        return [
            {
                "dataset": parameters["dataset"],
                "branch": parameters["branch"],
                "filter": filter_index,
                "series": item.provenance,
                "label": train.original_label(item.label),
                "activation": value,
                "threshold": split.threshold,
                "threshold_error": split.error,
            }
            for item, value in zip(train, values)
        ]

    def plot(self, csv_dir_path, plot_dir_path):
        print(f"Plotting the {self.experiment_name} experiment...")
        df = pd.read_csv(self.csv_path(csv_dir_path), delimiter=";")
        for dataset, frame in df.groupby("dataset"):
            plt.close("all")
            sns.set_context("paper")
            ax = sns.stripplot(data=frame, x="activation", y="label", hue="label", orient="h")
            ax.axvline(frame["threshold"].iloc[0], color="black", linestyle="--")
            ax.set_xlabel("Max-pooled response")
            ax.set_ylabel("Class")
            ax.set_title(
                f"{dataset}, {frame['branch'].iloc[0]} filter {frame['filter'].iloc[0]} "
                f"(threshold error {frame['threshold_error'].iloc[0]:.3f})"
            )
            plt.savefig(
                os.path.join(plot_dir_path, f"{self.short_name}_{dataset}.png"),
                dpi=300,
                bbox_inches="tight",
            )
        print("\t...plotted!")
