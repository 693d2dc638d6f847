"""Tabular datasets: CSV parsing, schema inference and stratified fold plans.

The CSV dialect is deliberately small: comma separated, first row is the
header, `?` marks a missing cell, no quoting. The label column defaults to
the last column. An optional sidecar manifest (`<stem>.manifest`, plain
``key=value`` lines) can override the label column, force feature kinds and
set a display acronym.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Optional, Sequence, Union

from .rng import Xoshiro256StarStar

MISSING_MARKER = "?"

NOMINAL = "nominal"
NUMERIC = "numeric"

Cell = Union[int, float, None]


class DataError(ValueError):
    """Malformed or degenerate input data."""


@dataclass(frozen=True)
class FeatureSpec:
    """One column of the schema.

    Nominal features carry their value list (first-appearance order); cells
    of nominal features are stored as indexes into that list.
    """

    name: str
    kind: str
    index: int
    values: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in (NOMINAL, NUMERIC):
            raise DataError(f"unknown feature kind {self.kind!r}")
        if self.kind == NOMINAL:
            if not self.values:
                raise DataError(f"nominal feature {self.name!r} has no values")
            if len(set(self.values)) != len(self.values):
                raise DataError(f"nominal feature {self.name!r} has duplicate values")
        elif self.values:
            raise DataError(f"numeric feature {self.name!r} must not list values")


class Row(NamedTuple):
    cells: tuple[Cell, ...]
    label: int


@dataclass(frozen=True)
class Dataset:
    """Immutable labeled table; the unit of all training and evaluation."""

    name: str
    features: tuple[FeatureSpec, ...]
    classes: tuple[str, ...]
    rows: tuple[Row, ...]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise DataError("duplicate feature names")
        if len(self.classes) < 2:
            raise DataError("fewer than 2 distinct class labels")
        if len(set(self.classes)) != len(self.classes):
            raise DataError("duplicate class labels")
        for r, row in enumerate(self.rows):
            if len(row.cells) != len(self.features):
                raise DataError(f"row {r}: expected {len(self.features)} cells")
            if not 0 <= row.label < len(self.classes):
                raise DataError(f"row {r}: label index out of range")
            for f, cell in zip(self.features, row.cells):
                if cell is None:
                    continue
                if f.kind == NOMINAL and not 0 <= cell < len(f.values):
                    raise DataError(f"row {r}: bad nominal index for {f.name!r}")

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def n_features(self) -> int:
        return len(self.features)

    def class_counts(self) -> tuple[int, ...]:
        counts = [0] * len(self.classes)
        for row in self.rows:
            counts[row.label] += 1
        return tuple(counts)

    def labels(self) -> list[str]:
        return [self.classes[row.label] for row in self.rows]

    def subset(self, indices: Sequence[int], name: Optional[str] = None) -> "Dataset":
        """View with the given rows, in the given order; schema is shared."""
        rows = tuple(self.rows[i] for i in indices)
        return Dataset(name or self.name, self.features, self.classes, rows)

    def keep_classes(self, keep: Sequence[str], name: Optional[str] = None) -> "Dataset":
        """Drop rows whose class is not in `keep`; class order follows `keep`."""
        for label in keep:
            if label not in self.classes:
                raise DataError(f"unknown class {label!r}")
        if len(set(keep)) != len(keep) or len(keep) < 2:
            raise DataError("need at least 2 distinct classes to keep")
        remap = {self.classes.index(label): i for i, label in enumerate(keep)}
        rows = tuple(
            Row(row.cells, remap[row.label]) for row in self.rows if row.label in remap
        )
        if not rows:
            raise DataError("no rows left after class filtering")
        return Dataset(name or self.name, self.features, tuple(keep), rows)


def _parse_number(text: str) -> Optional[float]:
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _split_csv(text: str) -> list[list[str]]:
    lines = [line for line in text.splitlines() if line.strip() != ""]
    return [[cell.strip() for cell in line.split(",")] for line in lines]


def infer_schema(
    header: Sequence[str],
    rows: Sequence[Sequence[str]],
    label_column: Optional[int] = None,
    forced_kinds: Optional[dict[str, str]] = None,
) -> tuple[list[FeatureSpec], FeatureSpec]:
    """Infer feature specs from raw text cells.

    A column is numeric iff every non-missing cell parses as a finite
    number; otherwise it is nominal with values in first-appearance order.
    The label column is always nominal. Returns (features, label spec);
    feature indexes refer to positions with the label column removed.
    """
    if not header or not rows:
        raise DataError("empty grid")
    n_cols = len(header)
    if len(set(header)) != n_cols:
        raise DataError("duplicate header names")
    for r, row in enumerate(rows):
        if len(row) != n_cols:
            raise DataError(f"ragged row {r}: {len(row)} cells, expected {n_cols}")
    label_idx = n_cols - 1 if label_column is None else label_column
    if not 0 <= label_idx < n_cols:
        raise DataError(f"label column {label_idx} out of range")
    forced = dict(forced_kinds or {})
    for name in forced:
        if name not in header:
            raise DataError(f"forced kind for unknown column {name!r}")

    features: list[FeatureSpec] = []
    label_spec: Optional[FeatureSpec] = None
    feature_pos = 0
    for col, name in enumerate(header):
        cells = [row[col] for row in rows]
        present = [c for c in cells if c != MISSING_MARKER]
        if col == label_idx:
            if any(c == MISSING_MARKER for c in cells):
                raise DataError("label column has missing cells")
            values = _first_appearance(present)
            if len(values) < 2:
                raise DataError("fewer than 2 distinct class labels")
            label_spec = FeatureSpec(name, NOMINAL, col, tuple(values))
            continue
        if not present:
            raise DataError(f"feature {name!r} is entirely missing")
        kind = forced.get(name)
        if kind is None:
            kind = NUMERIC if all(_parse_number(c) is not None for c in present) else NOMINAL
        if kind == NUMERIC:
            if any(_parse_number(c) is None for c in present):
                raise DataError(f"feature {name!r} forced numeric but has non-numeric cells")
            distinct = {_parse_number(c) for c in present}
            if len(distinct) < 2:
                raise DataError(f"feature {name!r} is single-valued")
            features.append(FeatureSpec(name, NUMERIC, feature_pos))
        else:
            values = _first_appearance(present)
            if len(values) < 2:
                raise DataError(f"feature {name!r} is single-valued")
            features.append(FeatureSpec(name, NOMINAL, feature_pos, tuple(values)))
        feature_pos += 1
    assert label_spec is not None
    return features, label_spec


def _first_appearance(cells: Sequence[str]) -> list[str]:
    seen: dict[str, None] = {}
    for c in cells:
        if c not in seen:
            seen[c] = None
    return list(seen)


def parse_dataset(
    text: str,
    label_column: Optional[int] = None,
    schema_override: Optional[Sequence[FeatureSpec]] = None,
    forced_kinds: Optional[dict[str, str]] = None,
    name: str = "data",
) -> Dataset:
    """Parse a CSV document into a Dataset.

    `schema_override` replaces inference entirely and must match the
    feature count (label column excluded).
    """
    grid = _split_csv(text)
    if len(grid) < 2:
        raise DataError("empty grid")
    header, data_rows = grid[0], grid[1:]
    features, label_spec = infer_schema(header, data_rows, label_column, forced_kinds)
    if schema_override is not None:
        if len(schema_override) != len(features):
            raise DataError(
                f"schema override has {len(schema_override)} features, expected {len(features)}"
            )
        features = list(schema_override)

    label_idx = label_spec.index
    feature_cols = [c for c in range(len(header)) if c != label_idx]
    classes = list(label_spec.values)
    class_index = {c: i for i, c in enumerate(classes)}

    rows = []
    for raw in data_rows:
        cells: list[Cell] = []
        for spec, col in zip(features, feature_cols):
            text_cell = raw[col]
            if text_cell == MISSING_MARKER:
                cells.append(None)
                continue
            if spec.kind == NUMERIC:
                value = _parse_number(text_cell)
                if value is None:
                    raise DataError(f"non-numeric cell {text_cell!r} in {spec.name!r}")
                cells.append(value)
            else:
                if text_cell not in spec.values:
                    raise DataError(f"unknown value {text_cell!r} for {spec.name!r}")
                cells.append(spec.values.index(text_cell))
        rows.append(Row(tuple(cells), class_index[raw[label_idx]]))
    return Dataset(name, tuple(features), tuple(classes), tuple(rows))


def dataset_to_csv(dataset: Dataset, label_name: str = "class") -> str:
    """Inverse of parse_dataset for the supported dialect."""
    header = [f.name for f in dataset.features] + [label_name]
    lines = [",".join(header)]
    for row in dataset.rows:
        cells = []
        for spec, cell in zip(dataset.features, row.cells):
            if cell is None:
                cells.append(MISSING_MARKER)
            elif spec.kind == NOMINAL:
                cells.append(spec.values[cell])
            else:
                cells.append(repr(cell))
        cells.append(dataset.classes[row.label])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def read_manifest(path: Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise DataError(f"{path.name}:{lineno}: expected key=value")
        key, value = stripped.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def load_dataset(path: Union[str, Path]) -> Dataset:
    """Load a CSV file, honoring its sidecar manifest when present."""
    path = Path(path)
    text = path.read_text()
    manifest_path = path.with_suffix(".manifest")
    label_column: Optional[int] = None
    forced_kinds: dict[str, str] = {}
    name = path.stem
    if manifest_path.exists():
        manifest = read_manifest(manifest_path)
        name = manifest.get("acronym", name)
        header = _split_csv(text)[0] if text.strip() else []
        if "label" in manifest:
            raw = manifest["label"]
            if raw.lstrip("-").isdigit():
                label_column = int(raw)
            elif raw in header:
                label_column = header.index(raw)
            else:
                raise DataError(f"manifest label column {raw!r} not in header")
        for key, value in manifest.items():
            if key.startswith("kind."):
                if value not in (NOMINAL, NUMERIC):
                    raise DataError(f"manifest kind for {key[5:]!r} must be nominal or numeric")
                forced_kinds[key[5:]] = value
    return parse_dataset(text, label_column=label_column, forced_kinds=forced_kinds, name=name)


@dataclass(frozen=True)
class FoldPlan:
    """Stratified fold assignment for repeated cross-validation.

    `assignment[r][i]` is the fold of row `i` in repeat `r`. Plans are a
    pure function of (seed, repeats, folds, row class sequence).
    """

    seed: int
    repeats: int
    folds: int
    assignment: tuple[tuple[int, ...], ...]

    def test_indices(self, repeat: int, fold: int) -> list[int]:
        self._check(repeat, fold)
        return [i for i, f in enumerate(self.assignment[repeat]) if f == fold]

    def train_indices(self, repeat: int, fold: int) -> list[int]:
        self._check(repeat, fold)
        return [i for i, f in enumerate(self.assignment[repeat]) if f != fold]

    def _check(self, repeat: int, fold: int) -> None:
        if not 0 <= repeat < self.repeats:
            raise IndexError(f"repeat {repeat} out of range")
        if not 0 <= fold < self.folds:
            raise IndexError(f"fold {fold} out of range")


def make_fold_plan(dataset: Dataset, repeats: int, folds: int, seed: int) -> FoldPlan:
    """Build a stratified fold plan.

    Per repeat, each class's row indexes are shuffled with the seeded
    generator (classes in class order, repeats in order, one stream) and
    dealt round-robin to folds. The deal position carries over between
    classes, so fold sizes differ by at most one overall while per-class
    fold counts also differ by at most one.
    """
    n = len(dataset)
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if folds > n:
        raise ValueError(f"folds ({folds}) exceed row count ({n})")
    by_class: list[list[int]] = [[] for _ in dataset.classes]
    for i, row in enumerate(dataset.rows):
        by_class[row.label].append(i)
    rng = Xoshiro256StarStar(seed)
    assignment = []
    for _ in range(repeats):
        fold_of = [0] * n
        position = 0
        for indices in by_class:
            shuffled = list(indices)
            rng.shuffle(shuffled)
            for idx in shuffled:
                fold_of[idx] = position % folds
                position += 1
        assignment.append(tuple(fold_of))
    return FoldPlan(seed, repeats, folds, tuple(assignment))


def fold_split(
    dataset: Dataset, plan: FoldPlan, repeat: int, fold: int
) -> tuple[Dataset, Dataset]:
    """(train, test) views for one fold of one repeat."""
    if len(plan.assignment[0]) != len(dataset):
        raise ValueError("fold plan was built for a different dataset")
    test = plan.test_indices(repeat, fold)
    train = plan.train_indices(repeat, fold)
    return dataset.subset(train), dataset.subset(test)
