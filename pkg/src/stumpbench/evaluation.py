"""Repeated cross-validation over the learner ladder and benchmark reports.

Per-repeat accuracy pools correct counts over that repeat's test folds
(micro-average), so unequal fold sizes are weighted correctly. Display
rounds to one decimal; stored values keep full precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dataset import Dataset, FoldPlan, fold_split
from .learners import DEFAULT_MIN_BUCKET, predict, train


@dataclass(frozen=True)
class ConfusionCounts:
    """Counts[i][j] = rows of true class i predicted as class j."""

    classes: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def correct(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.classes)))

    def accuracy(self) -> float:
        return self.correct / self.total


def confusion(
    truths: Sequence[str], predictions: Sequence[str], classes: Sequence[str]
) -> ConfusionCounts:
    """Tally a confusion matrix over aligned truth/prediction lists."""
    if len(truths) != len(predictions):
        raise ValueError(f"length mismatch: {len(truths)} truths, {len(predictions)} predictions")
    if not truths:
        raise ValueError("empty evaluation: accuracy undefined")
    index = {c: i for i, c in enumerate(classes)}
    matrix = [[0] * len(classes) for _ in classes]
    for truth, pred in zip(truths, predictions):
        if truth not in index:
            raise ValueError(f"unknown true label {truth!r}")
        if pred not in index:
            raise ValueError(f"unknown predicted label {pred!r}")
        matrix[index[truth]][index[pred]] += 1
    return ConfusionCounts(tuple(classes), tuple(tuple(row) for row in matrix))


def merge_confusions(parts: Sequence[ConfusionCounts]) -> ConfusionCounts:
    if not parts:
        raise ValueError("nothing to merge")
    classes = parts[0].classes
    matrix = [[0] * len(classes) for _ in classes]
    for part in parts:
        if part.classes != classes:
            raise ValueError("confusion matrices disagree on classes")
        for i, row in enumerate(part.counts):
            for j, v in enumerate(row):
                matrix[i][j] += v
    return ConfusionCounts(classes, tuple(tuple(row) for row in matrix))


@dataclass(frozen=True)
class CVResult:
    """Cross-validation accuracies (percent) for one dataset and one depth."""

    dataset: str
    n_classes: int
    depth: int
    per_repeat: tuple[float, ...]

    @property
    def mean(self) -> float:
        return sum(self.per_repeat) / len(self.per_repeat)


def cross_validate(
    dataset: Dataset,
    depth: int,
    plan: FoldPlan,
    min_bucket: int = DEFAULT_MIN_BUCKET,
) -> CVResult:
    """Run the fold plan for one ladder depth.

    Each fold trains on the remaining rows and predicts the held-out fold;
    per-repeat accuracy is pooled over folds as (sum correct) / (sum sizes).
    """
    if len(plan.assignment[0]) != len(dataset):
        raise ValueError("fold plan was built for a different dataset")
    per_repeat = []
    for repeat in range(plan.repeats):
        correct = 0
        total = 0
        for fold in range(plan.folds):
            train_ds, test_ds = fold_split(dataset, plan, repeat, fold)
            if len(test_ds) == 0:
                continue
            model = train(train_ds, depth, min_bucket)
            for row in test_ds.rows:
                total += 1
                if predict(model, row.cells) == dataset.classes[row.label]:
                    correct += 1
        per_repeat.append(100.0 * correct / total)
    return CVResult(dataset.name, len(dataset.classes), depth, tuple(per_repeat))


@dataclass(frozen=True)
class ReportRow:
    dataset: str
    n_classes: int
    acc0: float
    acc1: float
    acc2: float

    @property
    def delta10(self) -> float:
        return self.acc1 - self.acc0

    @property
    def delta21(self) -> float:
        return self.acc2 - self.acc1


@dataclass(frozen=True)
class ReportTable:
    rows: tuple[ReportRow, ...]


def build_report(results: Sequence[CVResult]) -> ReportTable:
    """Assemble the benchmark table; rows sort ascending by the 0->1 gain.

    Every dataset must come with all three depths. Ties on the sort key
    break by dataset name.
    """
    by_dataset: dict[str, dict[int, CVResult]] = {}
    for result in results:
        by_dataset.setdefault(result.dataset, {})[result.depth] = result
    rows = []
    for name in sorted(by_dataset):
        group = by_dataset[name]
        for depth in (0, 1, 2):
            if depth not in group:
                raise ValueError(f"dataset {name!r} is missing depth {depth} results")
        rows.append(
            ReportRow(
                dataset=name,
                n_classes=group[0].n_classes,
                acc0=group[0].mean,
                acc1=group[1].mean,
                acc2=group[2].mean,
            )
        )
    rows.sort(key=lambda r: (r.delta10, r.dataset))
    return ReportTable(tuple(rows))


def report_to_csv(table: ReportTable) -> str:
    lines = ["dataset,classes,zero_level,one_level,two_level,delta_1_0,delta_2_1"]
    for r in table.rows:
        lines.append(
            f"{r.dataset},{r.n_classes},{r.acc0!r},{r.acc1!r},{r.acc2!r},"
            f"{r.delta10!r},{r.delta21!r}"
        )
    return "\n".join(lines) + "\n"


def report_to_text(table: ReportTable) -> str:
    """Aligned table with one-decimal accuracies; class count shown when not 2."""
    header = ("Data set", "Zero-level", "One-level", "Two-level", "D(1-0)", "D(2-1)")
    body = []
    for r in table.rows:
        name = r.dataset if r.n_classes == 2 else f"{r.dataset} ({r.n_classes})"
        body.append(
            (
                name,
                f"{r.acc0:.1f}",
                f"{r.acc1:.1f}",
                f"{r.acc2:.1f}",
                f"{r.delta10:.1f}",
                f"{r.delta21:.1f}",
            )
        )
    widths = [max(len(header[i]), *(len(row[i]) for row in body)) if body else len(header[i])
              for i in range(len(header))]
    lines = []
    lines.append("  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip())
    for row in body:
        cells = [row[0].ljust(widths[0])] + [
            row[i].rjust(widths[i]) for i in range(1, len(header))
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def repeats_to_csv(results: Sequence[CVResult]) -> str:
    """Per-repeat accuracies, full precision, one row per (dataset, depth, repeat)."""
    lines = ["dataset,depth,repeat,accuracy"]
    for result in results:
        for repeat, acc in enumerate(result.per_repeat):
            lines.append(f"{result.dataset},{result.depth},{repeat},{acc!r}")
    return "\n".join(lines) + "\n"
