from tsmcnn.baseline import BaselineMethod, run_baseline
from validation.experiment import Experiment, load_archive_dataset

PUBLISHED_ERRORS = {
    ("GunPoint", BaselineMethod.ED): 0.087,
    ("GunPoint", BaselineMethod.DTW): 0.093,
    ("GunPoint", BaselineMethod.DTWCV): 0.087,
    ("ItalyPowerDemand", BaselineMethod.ED): 0.045,
    ("Coffee", BaselineMethod.DTW): 0.0,
}


class BaselineExperiment(Experiment):
    """
    Nearest-neighbour errors next to the published ones.
    """

    def __init__(self, num_workers=1):
        parameters_list = [
            {"dataset": dataset, "method": method} for dataset, method in PUBLISHED_ERRORS
        ]
        super(BaselineExperiment, self).__init__(
            parameters_list, "Nearest-neighbour baselines", "baselines", "dataset", "source"
        )
        self.num_workers = num_workers

    def run_single(self, parameters):
        data = load_archive_dataset(parameters["dataset"])
        if data is None:
            return []
        method = parameters["method"]
        error, window = run_baseline(method, *data, num_workers=self.num_workers)
        dataset = f"{parameters['dataset']} {method.value}"
        return [
            {"dataset": dataset, "window": window, "source": "measured", "error": error},
            {
                "dataset": dataset,
                "window": window,
                "source": "published",
                "error": PUBLISHED_ERRORS[(parameters["dataset"], method)],
            },
        ]
