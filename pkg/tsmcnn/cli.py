"""
Command-line interface.

Every command prints its metrics as :code:`name value` lines, can write them as a JSON record
(:code:`--json-out`) and writes a run manifest in its output directory, failed runs included.
The exit code is 0 on success, 1 for invalid inputs and 2 when training fails (infeasible
geometry, non-finite loss).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from tsmcnn import __version__
from tsmcnn.baseline import BaselineMethod, run_baseline
from tsmcnn.core import BranchSpec
from tsmcnn.data import Dataset, ZNormalisation, load_ucr, preprocess
from tsmcnn.exceptions import GeometryError, TrainingError
from tsmcnn.network import (
    Architecture,
    McnnConfig,
    load_model,
    predict_with_vote,
    resolve_architecture,
    save_model,
)
from tsmcnn.nn import Activation
from tsmcnn.train import GridSpec, TrainConfig, evaluate, fit, grid_search

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_TRAINING_FAILURE = 2

MODEL_FILE = "model.mcnn"
REPORT_FILE = "report.csv"
LEADERBOARD_FILE = "leaderboard.csv"


@dataclass
class RunManifest:
    """
    Everything needed to replay a run: the command line, the resolved configuration, the seed,
    the checksums of the data files, the artifacts written and the exit code (:code:`None` if
    the run stopped on an unexpected error).
    """

    command: str
    argv: list
    seed: int = None
    config: dict = field(default_factory=dict)
    datasets: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)
    started: str = ""
    finished: str = ""
    exit_code: int = None
    version: str = __version__

    def write(self, path: str) -> None:
        tmp_path = f"{path}.tmp"
        with open(tmp_path, "w", encoding="utf-8") as f:
            json.dump(asdict(self), f, indent=2, sort_keys=True)
        os.replace(tmp_path, path)

    @classmethod
    def read(cls, path: str) -> RunManifest:
        with open(path, "r", encoding="utf-8") as f:
            return cls(**json.load(f))


def sha256sum(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def comma_ints(text: str) -> tuple[int, ...]:
    """Parses :code:`"2,3"` as :code:`(2, 3)`; the empty string gives :code:`()`."""
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers: {text!r}")


def comma_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of reals: {text!r}")


class CliError(Exception):
    """Invalid command-line input, reported with exit code 1."""


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging.")
    parser.add_argument("-q", "--quiet", action="store_true", help="Only log errors.")
    parser.add_argument("--out", default=".", help="Directory of the artifacts and manifest.")
    parser.add_argument("--json-out", default=None, help="Write the metrics as JSON there.")
    parser.add_argument("--seed", type=int, default=0, help="Seed of every random choice.")
    parser.add_argument(
        "--threads", type=int, default=1, help="Number of worker processes (1 is deterministic)."
    )


def _add_data_arguments(parser: argparse.ArgumentParser, test_required: bool = False) -> None:
    parser.add_argument("--data", required=True, help="Training file in the UCR format.")
    parser.add_argument("--test", required=test_required, help="Test file in the UCR format.")
    parser.add_argument(
        "--znorm",
        choices=[z.value for z in ZNormalisation],
        default=ZNormalisation.AUTO.value,
        help="Z-normalise the series (auto: only for the datasets known to need it).",
    )


def _add_network_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--filters", type=int, default=256, help="Filters per convolution.")
    parser.add_argument("--filter-ratio", type=float, default=0.1)
    parser.add_argument("--pool-factor", type=int, default=3)
    parser.add_argument("--dense-units", type=int, default=256)
    parser.add_argument("--slice-ratio", type=float, default=0.9)
    parser.add_argument("--k-rates", type=comma_ints, default=(2, 3), help="e.g. 2,3")
    parser.add_argument("--ma-windows", type=comma_ints, default=(3, 5), help="e.g. 3,5")
    parser.add_argument("--full-depth", type=int, default=1)
    parser.add_argument(
        "--activation", choices=[a.value for a in Activation], default=Activation.RELU.value
    )
    parser.add_argument(
        "--architecture",
        choices=[a.value for a in Architecture],
        default=Architecture.MCNN.value,
    )


def _add_training_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lr", type=float, default=0.01)
    parser.add_argument("--momentum", type=float, default=0.9)
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--max-epochs", type=int, default=200)
    parser.add_argument("--patience", type=int, default=20)
    parser.add_argument("--val-fraction", type=float, default=0.2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsmcnn",
        description="Multi-scale convolutional networks for time series classification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="Train a network.")
    _add_common_arguments(train)
    _add_data_arguments(train)
    _add_network_arguments(train)
    _add_training_arguments(train)
    train.set_defaults(handler=cmd_train)

    grid = commands.add_parser("grid", help="Grid search of the hyperparameters.")
    _add_common_arguments(grid)
    _add_data_arguments(grid)
    _add_network_arguments(grid)
    _add_training_arguments(grid)
    grid.add_argument("--filter-ratios", type=comma_floats, default=(0.05, 0.1, 0.2))
    grid.add_argument("--pool-factors", type=comma_ints, default=(2, 3, 5))
    grid.add_argument("--batch-sizes", type=comma_ints, default=(16, 32))
    grid.set_defaults(handler=cmd_grid)

    for name, handler, description in [
        ("eval", cmd_eval, "Error rate of a saved model on a labelled file."),
        ("predict", cmd_predict, "Predicted label of every series of a file."),
    ]:
        sub = commands.add_parser(name, help=description)
        _add_common_arguments(sub)
        sub.add_argument("--model", required=True, help="Model file written by train.")
        sub.add_argument("--data", required=True, help="File in the UCR format.")
        sub.add_argument(
            "--znorm",
            choices=[z.value for z in ZNormalisation],
            default=ZNormalisation.AUTO.value,
        )
        if name == "predict":
            sub.add_argument(
                "--probs", action="store_true", help="Print the summed class probabilities."
            )
        sub.set_defaults(handler=handler)

    baseline = commands.add_parser("baseline", help="Reference nearest-neighbour classifiers.")
    _add_common_arguments(baseline)
    _add_data_arguments(baseline, test_required=True)
    baseline.add_argument("--method", required=True, help="ed, dtw or dtwcv.")
    baseline.add_argument(
        "--window", type=float, default=None, help="Warping window of dtw, fraction of n."
    )
    baseline.set_defaults(handler=cmd_baseline)

    replay = commands.add_parser("replay", help="Run again the command of a manifest.")
    _add_common_arguments(replay)
    replay.add_argument("manifest", help="Manifest written by a previous run.")
    replay.set_defaults(handler=cmd_replay)
    return parser


def _load(path: str, znorm: str, label_map: dict = None, rectangular: bool = True) -> Dataset:
    dataset = load_ucr(path, label_map=label_map, rectangular=rectangular)
    return preprocess(dataset, znorm)


def _load_train_test(args) -> tuple[Dataset, Dataset | None]:
    train = _load(args.data, args.znorm)
    test = None
    if args.test:
        test = _load(args.test, args.znorm, label_map=train.label_map)
    return train, test


def _network_config(args, train: Dataset) -> McnnConfig:
    if train.series_length is None:
        raise CliError(f"The series of {args.data} do not share a length.")
    config = McnnConfig(
        num_classes=train.num_classes,
        input_length=train.series_length,
        branch_spec=BranchSpec(args.k_rates, args.ma_windows),
        local_filters=args.filters,
        full_filters=args.filters,
        filter_ratio=args.filter_ratio,
        pooling_factor=args.pool_factor,
        dense_units=args.dense_units,
        slice_ratio=args.slice_ratio,
        activation=args.activation,
        full_depth=args.full_depth,
    )
    return resolve_architecture(config, args.architecture)


def _train_config(args) -> TrainConfig:
    return TrainConfig(
        learning_rate=args.lr,
        momentum=args.momentum,
        batch_size=args.batch_size,
        max_epochs=args.max_epochs,
        patience=args.patience,
        seed=args.seed,
        val_fraction=args.val_fraction,
    )


def _emit(args, metrics: dict, manifest: RunManifest) -> None:
    for name, value in metrics.items():
        label = name.replace("_", " ")
        if isinstance(value, float):
            print(f"{label} {value:.3f}")
        elif isinstance(value, int):
            print(f"{label} {value}")
    if args.json_out:
        record = {"command": args.command, "seed": args.seed, **metrics}
        tmp_path = f"{args.json_out}.tmp"
        with open(tmp_path, "w", encoding="utf-8") as f:
            json.dump(record, f, indent=2)
        os.replace(tmp_path, args.json_out)
        manifest.artifacts.append(args.json_out)


def _record_inputs(args, manifest: RunManifest) -> None:
    for attribute in ("data", "test", "model"):
        path = getattr(args, attribute, None)
        if path:
            if not os.path.isfile(path):
                raise FileNotFoundError(f"No such file: {path}")
            manifest.datasets[path] = sha256sum(path)


def _finish(args, manifest: RunManifest, exit_code: int) -> None:
    manifest.finished = _now()
    manifest.exit_code = exit_code
    try:
        os.makedirs(args.out, exist_ok=True)
        manifest.write(os.path.join(args.out, f"{args.command}-manifest.json"))
    except OSError as e:
        logger.warning("Could not write the manifest: %s", e)


def cmd_train(args, manifest: RunManifest) -> int:
    train, test = _load_train_test(args)
    config = _network_config(args, train)
    tcfg = _train_config(args)
    manifest.config = {"network": config.to_dict(), "training": asdict(tcfg), "znorm": args.znorm}
    model, report = fit(config, train, tcfg, test_data=test)

    model_path = os.path.join(args.out, MODEL_FILE)
    report_path = os.path.join(args.out, REPORT_FILE)
    save_model(model, model_path)
    report.write_csv(report_path)
    manifest.artifacts.extend([model_path, report_path])

    metrics = {
        "train_error": report.epochs[report.best_epoch - 1].train_err,
        "validation_error": report.best_validation_error,
        "best_epoch": report.best_epoch,
    }
    if report.test_error is not None:
        metrics["test_error"] = report.test_error
    _emit(args, metrics, manifest)
    return EXIT_OK


def cmd_grid(args, manifest: RunManifest) -> int:
    train, test = _load_train_test(args)
    config = _network_config(args, train)
    tcfg = _train_config(args)
    grid = GridSpec(args.filter_ratios, args.pool_factors, args.batch_sizes)
    manifest.config = {
        "network": config.to_dict(),
        "training": asdict(tcfg),
        "grid": asdict(grid),
        "znorm": args.znorm,
    }
    result = grid_search(config, grid, train, tcfg, num_workers=args.threads)

    leaderboard_path = os.path.join(args.out, LEADERBOARD_FILE)
    with open(leaderboard_path, "w", encoding="utf-8") as f:
        f.write("filter_ratio;pooling_factor;batch_size;validation_error;best_epoch;skipped\n")
        for entry in result.leaderboard:
            f.write(
                f"{entry.filter_ratio};{entry.pooling_factor};{entry.batch_size};"
                f"{'' if entry.validation_error is None else entry.validation_error};"
                f"{'' if entry.best_epoch is None else entry.best_epoch};"
                f"{entry.skipped or ''}\n"
            )
    for entry in result.leaderboard:
        status = "skipped" if not entry.feasible else f"{entry.validation_error:.3f}"
        print(f"grid {entry.filter_ratio} {entry.pooling_factor} {entry.batch_size} {status}")

    model_path = os.path.join(args.out, MODEL_FILE)
    report_path = os.path.join(args.out, REPORT_FILE)
    save_model(result.model, model_path)
    result.report.write_csv(report_path)
    manifest.artifacts.extend([leaderboard_path, model_path, report_path])

    metrics = {
        "filter_ratio": result.config.filter_ratio,
        "pooling_factor": result.config.pooling_factor,
        "batch_size": result.train_config.batch_size,
        "validation_error": result.report.best_validation_error,
    }
    if test is not None:
        metrics["test_error"] = evaluate(result.model, test)
    _emit(args, metrics, manifest)
    return EXIT_OK


def _label_map(model) -> dict | None:
    if model.class_labels is None:
        return None
    return {label: index for index, label in enumerate(model.class_labels)}


def _record_model_settings(args, manifest: RunManifest) -> None:
    manifest.config = {"model": args.model, "znorm": args.znorm}
    if args.command == "predict":
        manifest.config["probs"] = args.probs


def cmd_eval(args, manifest: RunManifest) -> int:
    _record_model_settings(args, manifest)
    model = load_model(args.model)
    manifest.config["network"] = model.config.to_dict()
    label_map = _label_map(model) or {i: i for i in range(model.config.num_classes)}
    data = _load(args.data, args.znorm, label_map=label_map, rectangular=False)
    error = evaluate(model, data)
    _emit(args, {"error": error}, manifest)
    return EXIT_OK


def cmd_predict(args, manifest: RunManifest) -> int:
    _record_model_settings(args, manifest)
    model = load_model(args.model)
    manifest.config["network"] = model.config.to_dict()
    data = _load(args.data, args.znorm, rectangular=False)
    labels = model.class_labels or list(range(model.config.num_classes))
    predictions = []
    for item in data:
        result = predict_with_vote(model, item.values)
        line = str(labels[result.label])
        if args.probs:
            line += " " + " ".join(f"{p:.6f}" for p in result.probability_sums)
        print(line)
        predictions.append(labels[result.label])
    if args.json_out:
        _emit(args, {"predictions": predictions}, manifest)
    return EXIT_OK


def cmd_baseline(args, manifest: RunManifest) -> int:
    try:
        method = BaselineMethod(args.method)
    except ValueError:
        raise CliError(
            f"Unknown baseline {args.method!r}, use one of "
            f"{', '.join(m.value for m in BaselineMethod)}."
        )
    train, test = _load_train_test(args)
    manifest.config = {"method": method.value, "window": args.window, "znorm": args.znorm}
    error, window = run_baseline(method, train, test, args.window, num_workers=args.threads)
    metrics = {"error": error}
    if method == BaselineMethod.DTWCV:
        metrics["window"] = window
    _emit(args, metrics, manifest)
    return EXIT_OK


def cmd_replay(args, manifest: RunManifest) -> int:
    previous = RunManifest.read(args.manifest)
    for path, checksum in previous.datasets.items():
        if not os.path.isfile(path):
            raise FileNotFoundError(f"No such file: {path}")
        if sha256sum(path) != checksum:
            raise CliError(f"The file {path} changed since the run of the manifest.")
    logger.info("Replaying: tsmcnn %s", " ".join(previous.argv))
    return main(previous.argv)


def _configure_logging(args) -> None:
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(format="%(levelname)s: %(message)s", level=level, force=True)


def main(argv: list = None) -> int:
    """
    Runs the command line and returns the exit code.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_BAD_INPUT
    _configure_logging(args)

    manifest = RunManifest(command=args.command, argv=argv, seed=args.seed, started=_now())
    code = None
    try:
        if args.threads < 1:
            raise CliError("The number of threads needs to be 1 or more.")
        os.makedirs(args.out, exist_ok=True)
        _record_inputs(args, manifest)
        code = args.handler(args, manifest)
    except (GeometryError, TrainingError) as e:
        logger.error("%s", e)
        print(f"training failed: {e}", file=sys.stderr)
        code = EXIT_TRAINING_FAILURE
    except (CliError, FileNotFoundError, ValueError, TypeError, KeyError) as e:
        logger.error("%s", e)
        print(f"invalid input: {e}", file=sys.stderr)
        code = EXIT_BAD_INPUT
    finally:
        _finish(args, manifest, code)
    return code
