"""Command-line front end.

Two subcommands:

* ``bench``: repeated stratified cross-validation of the depth-0/1/2
  ladder over every CSV in a directory; writes the accuracy table as CSV,
  aligned text and a PNG chart.
* ``costcurve``: cost-curve comparison of built-in classifiers and/or
  imported external predictions on one two-class dataset; writes a
  deterministic SVG plot and a CSV of grid samples.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from . import costcurves, figures, svgplot
from .dataset import DataError, Dataset, FoldPlan, load_dataset, make_fold_plan
from .evaluation import (
    confusion,
    cross_validate,
    repeats_to_csv,
    report_to_csv,
    report_to_text,
    build_report,
)
from .learners import predict, train
from .rng import Xoshiro256StarStar, mix64

BUILTIN_CLASSIFIERS = ("d0", "d1", "d2")


def derive_seed(seed: int, index: int) -> int:
    """Deterministic child seed for the CLI's independent random uses.

    Index 0 drives the holdout shuffle, 1+i the band of classifier i, and
    1000 the difference band.
    """
    return mix64((mix64(seed) + index + 1) & ((1 << 64) - 1))


def holdout_split(
    dataset: Dataset, test_fraction: float, seed: int
) -> tuple[list[int], list[int]]:
    """Stratified holdout; returns (train, test) row indexes, each ascending.

    Per class, indexes are shuffled with the seeded generator and
    clamp(floor(n * fraction), 1, n-1) of them become the test set.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test fraction must lie in (0, 1)")
    rng = Xoshiro256StarStar(derive_seed(seed, 0))
    train_idx: list[int] = []
    test_idx: list[int] = []
    by_class: list[list[int]] = [[] for _ in dataset.classes]
    for i, row in enumerate(dataset.rows):
        by_class[row.label].append(i)
    for indices in by_class:
        if len(indices) < 2:
            raise DataError("a class has fewer than 2 rows; cannot split")
        shuffled = list(indices)
        rng.shuffle(shuffled)
        n_test = min(len(indices) - 1, max(1, int(len(indices) * test_fraction)))
        test_idx.extend(shuffled[:n_test])
        train_idx.extend(shuffled[n_test:])
    return sorted(train_idx), sorted(test_idx)


def load_predictions(
    path: Path, expected: Sequence[tuple[int, str]], classes: Sequence[str]
) -> list[str]:
    """Read an external prediction CSV and align it with the test rows.

    The file must carry the header ``instance,true,predicted``, one row per
    test instance, ids matching the dump-split output exactly.
    """
    lines = [line.strip() for line in path.read_text().splitlines() if line.strip()]
    if not lines or [c.strip() for c in lines[0].split(",")] != ["instance", "true", "predicted"]:
        raise DataError(f"{path.name}: expected header 'instance,true,predicted'")
    seen: dict[int, tuple[str, str]] = {}
    for lineno, line in enumerate(lines[1:], 2):
        parts = [c.strip() for c in line.split(",")]
        if len(parts) != 3:
            raise DataError(f"{path.name}:{lineno}: expected 3 columns")
        try:
            instance = int(parts[0])
        except ValueError:
            raise DataError(f"{path.name}:{lineno}: bad instance id {parts[0]!r}")
        if instance in seen:
            raise DataError(f"{path.name}: duplicate instance id {instance}")
        if parts[1] not in classes:
            raise DataError(f"{path.name}:{lineno}: unknown true label {parts[1]!r}")
        if parts[2] not in classes:
            raise DataError(f"{path.name}:{lineno}: unknown predicted label {parts[2]!r}")
        seen[instance] = (parts[1], parts[2])
    predictions = []
    for instance, truth in expected:
        if instance not in seen:
            raise DataError(f"{path.name}: missing instance id {instance}")
        file_truth, pred = seen.pop(instance)
        if file_truth != truth:
            raise DataError(
                f"{path.name}: instance {instance} true label {file_truth!r} "
                f"does not match the test split ({truth!r})"
            )
        predictions.append(pred)
    if seen:
        extra = sorted(seen)[0]
        raise DataError(f"{path.name}: instance id {extra} is not in the test split")
    return predictions


@click.group()
def cli() -> None:
    """Benchmark simple decision trees and compare classifiers with cost curves."""


@cli.command()
@click.option("--data", "data_dir", required=True, type=click.Path(path_type=Path),
              help="Directory of CSV datasets (optional .manifest sidecars).")
@click.option("--repeats", default=9, show_default=True, help="Cross-validation repetitions.")
@click.option("--folds", default=25, show_default=True, help="Folds per repetition.")
@click.option("--seed", default=0, show_default=True, help="Fold-plan seed.")
@click.option("--min-bucket", default=6, show_default=True,
              help="Minimum per-interval majority count for numeric one-rule splits.")
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path),
              help="Output directory for report.csv / report.txt / report.png / repeats.csv.")
def bench(data_dir: Path, repeats: int, folds: int, seed: int, min_bucket: int, out_dir: Path) -> None:
    """Cross-validate the depth ladder over every dataset in a directory."""
    if repeats < 1:
        raise click.UsageError("--repeats must be >= 1")
    if folds < 2:
        raise click.UsageError("--folds must be >= 2")
    if min_bucket < 1:
        raise click.UsageError("--min-bucket must be >= 1")
    if not data_dir.is_dir():
        raise DataError(f"{data_dir} is not a directory")
    files = sorted(data_dir.glob("*.csv"))
    if not files:
        raise DataError(f"no CSV datasets in {data_dir}")

    results = []
    failures = 0
    for path in files:
        try:
            dataset = load_dataset(path)
            plan = make_fold_plan(dataset, repeats, folds, seed)
            for depth in (0, 1, 2):
                results.append(cross_validate(dataset, depth, plan, min_bucket))
        except (DataError, ValueError, OSError) as exc:
            failures += 1
            click.echo(f"skipping {path.name}: {exc}", err=True)
    if not results:
        raise DataError(f"all {failures} dataset(s) failed to load")

    table = build_report(results)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.csv").write_text(report_to_csv(table))
    text = report_to_text(table)
    (out_dir / "report.txt").write_text(text)
    (out_dir / "repeats.csv").write_text(repeats_to_csv(results))
    figures.render_report_figure(table, out_dir / "report.png")
    click.echo(text, nl=False)


def _parse_classifiers(selector: str) -> list[str]:
    names = [name.strip() for name in selector.split(",") if name.strip()]
    for name in names:
        if name not in BUILTIN_CLASSIFIERS:
            raise click.UsageError(
                f"unknown classifier {name!r}; choose from {', '.join(BUILTIN_CLASSIFIERS)}"
            )
    if len(set(names)) != len(names):
        raise click.UsageError("duplicate classifier selector")
    return names


@cli.command()
@click.option("--data", "data_file", required=True, type=click.Path(path_type=Path),
              help="Two-class CSV dataset (use --keep to reduce a multi-class one).")
@click.option("--positive", default=None, help="Positive class label [default: second class].")
@click.option("--classifiers", default="d1,d2", show_default=True,
              help="Comma list of built-in classifiers (d0, d1, d2); may be empty.")
@click.option("--external", "externals", multiple=True, type=click.Path(path_type=Path),
              help="External prediction CSV (instance,true,predicted); repeatable.")
@click.option("--keep", default=None,
              help="Comma pair of class labels to keep from a multi-class dataset.")
@click.option("--holdout", default=1.0 / 3.0, show_default="1/3",
              help="Held-out test fraction, stratified per class.")
@click.option("--test-fold", default=None,
              help="Use fold I of a K-fold plan as the test split, written K:I.")
@click.option("--level", default=0.95, show_default=True, help="Confidence level.")
@click.option("--resamples", default=1000, show_default=True, help="Bootstrap resamples.")
@click.option("--grid", "grid_size", default=101, show_default=True, help="Grid samples on [0,1].")
@click.option("--seed", default=0, show_default=True, help="Split and bootstrap seed.")
@click.option("--min-bucket", default=6, show_default=True,
              help="Minimum per-interval majority count for numeric one-rule splits.")
@click.option("--svg", "svg_path", required=True, type=click.Path(path_type=Path),
              help="Output SVG plot.")
@click.option("--csv", "csv_path", required=True, type=click.Path(path_type=Path),
              help="Output CSV of grid samples.")
@click.option("--png", "png_path", default=None, type=click.Path(path_type=Path),
              help="Optional matplotlib PNG companion.")
@click.option("--dump-split", "dump_path", default=None, type=click.Path(path_type=Path),
              help="Write the test split as instance,true rows (template for --external).")
def costcurve(
    data_file: Path,
    positive: Optional[str],
    classifiers: str,
    externals: tuple[Path, ...],
    keep: Optional[str],
    holdout: float,
    test_fold: Optional[str],
    level: float,
    resamples: int,
    grid_size: int,
    seed: int,
    min_bucket: int,
    svg_path: Path,
    csv_path: Path,
    png_path: Optional[Path],
    dump_path: Optional[Path],
) -> None:
    """Compare classifiers with cost curves on a two-class dataset."""
    if not 0.0 < level < 1.0:
        raise click.UsageError("--level must lie strictly between 0 and 1")
    if resamples < 100:
        raise click.UsageError("--resamples must be >= 100")
    if grid_size < 2:
        raise click.UsageError("--grid must be >= 2")
    if not 0.0 < holdout < 1.0:
        raise click.UsageError("--holdout must lie strictly between 0 and 1")
    builtin = _parse_classifiers(classifiers) if classifiers.strip() else []
    if not builtin and not externals:
        raise click.UsageError("select at least one classifier (built-in or --external)")

    dataset = load_dataset(data_file)
    if keep:
        labels = [part.strip() for part in keep.split(",")]
        if len(labels) != 2:
            raise click.UsageError("--keep expects exactly two comma-separated labels")
        dataset = dataset.keep_classes(labels)
    if len(dataset.classes) != 2:
        raise DataError(
            f"{dataset.name} has {len(dataset.classes)} classes; "
            "cost curves need exactly 2 (use --keep)"
        )
    positive_class = positive if positive is not None else dataset.classes[1]
    if positive_class not in dataset.classes:
        raise DataError(f"positive class {positive_class!r} not in {dataset.classes}")

    if test_fold is not None:
        try:
            folds_text, fold_text = test_fold.split(":")
            folds, fold = int(folds_text), int(fold_text)
        except ValueError:
            raise click.UsageError("--test-fold must look like K:I")
        if not 0 <= fold < folds:
            raise click.UsageError("--test-fold index out of range")
        plan: FoldPlan = make_fold_plan(dataset, 1, folds, seed)
        test_idx = plan.test_indices(0, fold)
        train_idx = plan.train_indices(0, fold)
    else:
        train_idx, test_idx = holdout_split(dataset, holdout, seed)
    train_ds = dataset.subset(train_idx)
    test_ds = dataset.subset(test_idx)
    truths = test_ds.labels()
    if len(set(truths)) != 2:
        raise DataError("test split lost a class; adjust --holdout or --seed")

    if dump_path is not None:
        lines = ["instance,true"] + [
            f"{idx},{dataset.classes[dataset.rows[idx].label]}" for idx in test_idx
        ]
        dump_path.write_text("\n".join(lines) + "\n")

    named_predictions: list[tuple[str, list[str]]] = []
    for name in builtin:
        model = train(train_ds, int(name[1]), min_bucket)
        named_predictions.append((name, [predict(model, r.cells) for r in test_ds.rows]))
    expected = [(idx, dataset.classes[dataset.rows[idx].label]) for idx in test_idx]
    for path in externals:
        named_predictions.append(
            (path.stem, load_predictions(path, expected, dataset.classes))
        )

    grid = costcurves.default_grid(grid_size)
    points = []
    for name, preds in named_predictions:
        c = confusion(truths, preds, dataset.classes)
        point = costcurves.operating_point(c, positive_class)
        points.append(point)
        click.echo(f"{name}: fpr={point.fpr:.4f} fnr={point.fnr:.4f} accuracy={c.accuracy():.4f}")
    curves = [
        (name, [costcurves.ne_at(point, x) for x in grid])
        for (name, _), point in zip(named_predictions, points)
    ]

    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            where = costcurves.crossover(points[i], points[j])
            a, b = named_predictions[i][0], named_predictions[j][0]
            if where == "identical":
                click.echo(f"crossover {a} / {b}: identical lines")
            elif where is None:
                click.echo(f"crossover {a} / {b}: none in [0, 1]")
            else:
                click.echo(f"crossover {a} / {b}: PC(+) = {where:.4f}")

    names = [name for name, _ in named_predictions]
    if len(set(names)) != len(names):
        raise DataError(f"classifier names collide: {names}")

    bands = []
    band_objs = []
    for i, (name, preds) in enumerate(named_predictions):
        band = costcurves.bootstrap_band(
            truths, preds, positive_class,
            level=level, resamples=resamples, grid=grid, seed=derive_seed(seed, 1 + i),
        )
        band_objs.append(band)
        bands.append((name, band.lower, band.upper))

    regions = None
    diff_band = None
    if len(named_predictions) == 2:
        diff_band, regions = costcurves.difference_regions(
            truths, named_predictions[0][1], named_predictions[1][1], positive_class,
            level=level, resamples=resamples, grid=grid, seed=derive_seed(seed, 1000),
        )
        for lo, hi, label in regions.intervals:
            click.echo(f"region [{lo:.3f}, {hi:.3f}]: {label}")

    csv_band = band_objs[0] if len(named_predictions) == 1 else diff_band
    csv_path.write_text(costcurves.samples_to_csv(grid, curves, csv_band, regions))
    svg_path.write_text(svgplot.emit_svg(grid, curves, bands, regions, title=dataset.name))
    if png_path is not None:
        figures.render_curve_figure(grid, curves, bands, regions, png_path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (DataError, OSError) as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
