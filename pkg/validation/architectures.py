from dataclasses import replace

from tsmcnn.core import BranchSpec
from tsmcnn.network import Architecture, McnnConfig, resolve_architecture
from tsmcnn.train import TrainConfig, fit
from validation.experiment import Experiment, load_archive_dataset


class ArchitectureExperiment(Experiment):
    """
    Test error of the multi-scale network and of the plain network with about as many
    parameters, over several seeds.
    """

    def __init__(self, datasets=("GunPoint", "ItalyPowerDemand", "Coffee"), seeds=(0, 1, 2)):
        parameters_list = [
            {"dataset": d, "architecture": a, "seed": s}
            for d in datasets
            for a in Architecture
            for s in seeds
        ]
        super(ArchitectureExperiment, self).__init__(
            parameters_list, "Multi-scale against plain network", "architectures", "dataset",
            "architecture",
        )
        self.base_config = dict(
            branch_spec=BranchSpec((2, 3), (3, 5)),
            local_filters=64,
            full_filters=64,
            dense_units=64,
        )
        self.train_config = TrainConfig(max_epochs=100, patience=20)

    def run_single(self, parameters):
        data = load_archive_dataset(parameters["dataset"])
        if data is None:
            return []
        train, test = data
        config = McnnConfig(
            num_classes=train.num_classes,
            input_length=train.series_length,
            **self.base_config,
        )
        config = resolve_architecture(config, parameters["architecture"])
        tcfg = replace(self.train_config, seed=parameters["seed"])
        _, report = fit(config, train, tcfg, test_data=test)
        return [
            {
                "dataset": parameters["dataset"],
                "architecture": parameters["architecture"],
                "seed": parameters["seed"],
                "best_epoch": report.best_epoch,
                "error": report.test_error,
            }
        ]


class DefaultConfigExperiment(Experiment):
    """
    Test error of the multi-scale network with the default configuration (256 local and
    full-stage filters, 256 hidden units, up to 200 epochs), over several seeds.
    """

    def __init__(self, datasets=("GunPoint", "ItalyPowerDemand"), seeds=(0, 1, 2)):
        parameters_list = [{"dataset": d, "seed": s} for d in datasets for s in seeds]
        super(DefaultConfigExperiment, self).__init__(
            parameters_list, "Multi-scale network, default configuration", "default_config",
            "dataset",
        )
        self.train_config = TrainConfig()

    def run_single(self, parameters):
        data = load_archive_dataset(parameters["dataset"])
        if data is None:
            return []
        train, test = data
        config = McnnConfig(num_classes=train.num_classes, input_length=train.series_length)
        tcfg = replace(self.train_config, seed=parameters["seed"])
        _, report = fit(config, train, tcfg, test_data=test)
        return [
            {
                "dataset": parameters["dataset"],
                "seed": parameters["seed"],
                "epochs": len(report.epochs),
                "best_epoch": report.best_epoch,
                "error": report.test_error,
            }
        ]
