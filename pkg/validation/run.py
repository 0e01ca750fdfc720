import glob
import logging
import os

from validation.architectures import ArchitectureExperiment, DefaultConfigExperiment
from validation.baselines import BaselineExperiment
from validation.filters import FilterExperiment
from validation.learningcurves import plot_learning_curve

ALL_EXPERIMENTS = [
    BaselineExperiment(),
    ArchitectureExperiment(),
    DefaultConfigExperiment(),
    FilterExperiment(),
]

if __name__ == "__main__":
    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.INFO)

    csv_dir_root = "csv"
    os.makedirs(csv_dir_root, exist_ok=True)
    plot_dir_root = "plots"
    os.makedirs(plot_dir_root, exist_ok=True)

    for experiment in ALL_EXPERIMENTS:
        if experiment.write_csv(csv_dir_root):
            experiment.plot(csv_dir_root, plot_dir_root)

    # Learning curves of the runs whose output directories are under runs/
    for report_path in sorted(glob.glob(os.path.join("runs", "*", "report.csv"))):
        run_name = os.path.basename(os.path.dirname(report_path))
        plot_learning_curve(report_path, os.path.join(plot_dir_root, f"curve_{run_name}.png"))
