import os

import pandas as pd
import seaborn as sns

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def plot_learning_curve(report_csv_path, plot_path, title=""):
    """
    Plots the training and validation errors of every epoch from a report.csv file written by
    tsmcnn train.
    """
    df = pd.read_csv(report_csv_path, delimiter=";")
    df = df.melt(
        id_vars=["epoch"],
        value_vars=["train_err", "val_err"],
        var_name="side",
        value_name="error",
    )
    df["side"] = df["side"].map({"train_err": "Training", "val_err": "Validation"})
    plt.close("all")
    sns.set_context("paper")
    ax = sns.lineplot(data=df, x="epoch", y="error", hue="side")
    ax.set_xlabel("Epoch")
    ax.set_ylabel("Error")
    ax.legend(title="")
    ax.set_title(title or os.path.basename(os.path.dirname(os.path.abspath(report_csv_path))))
    plt.savefig(plot_path, dpi=300, bbox_inches="tight")
