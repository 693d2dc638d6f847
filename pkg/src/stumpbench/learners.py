"""The simplicity ladder: majority class, one-rule stumps, exact depth-2 trees.

Split language
--------------
* One-rule stumps test a single feature: nominal features get one branch
  per declared value plus a missing branch; numeric features get the
  multi-interval discretization below plus a missing branch.
* Depth-2 trees pick a root split (nominal multiway, or numeric single
  threshold chosen among all midpoints of adjacent distinct values) and
  then, independently per root branch, either a leaf or the best one-level
  stump where numeric splits are restricted to a single binary threshold.
  Because branches are optimized independently, exhaustive search over this
  language is exact: the returned tree has the minimum training error.

Conventions (applied everywhere, so training is deterministic):
* numeric comparisons route value <= threshold to the lower interval;
* missing cells and nominal values outside the declared list go to the
  dedicated missing branch;
* empty branches inherit the majority class of their parent node;
* depth-2 ties prefer: a leaf over a split, then the split with the widest
  value gap around its threshold (nominal splits count as infinitely wide),
  then the lower feature index, then the lower threshold; class ties go to
  the class earliest in class order. The margin rule picks, among the many
  trees that reach the minimum training error, one whose thresholds sit in
  sparse parts of the value range, which generalizes measurably better
  than always taking the lowest threshold.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dataset import Cell, Dataset, NOMINAL, NUMERIC

DEFAULT_MIN_BUCKET = 6


@dataclass(frozen=True)
class MajorityModel:
    """Zero-level tree: predicts the most frequent training class."""

    n_features: int
    predicted_class: str
    class_counts: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class SplitRule:
    """Single-feature split: nominal multiway or numeric intervals.

    Branch order: nominal value branches in declared value order, numeric
    interval branches from lowest to highest; the missing branch is last.
    """

    feature: int
    kind: str
    thresholds: tuple[float, ...] = ()
    n_values: int = 0

    def __post_init__(self):
        if self.kind == NOMINAL:
            if self.n_values < 1 or self.thresholds:
                raise ValueError("nominal split needs values and no thresholds")
        elif self.kind == NUMERIC:
            if self.n_values:
                raise ValueError("numeric split must not declare values")
            if any(a >= b for a, b in zip(self.thresholds, self.thresholds[1:])):
                raise ValueError("thresholds must be strictly increasing")
        else:
            raise ValueError(f"unknown split kind {self.kind!r}")

    @property
    def n_branches(self) -> int:
        if self.kind == NOMINAL:
            return self.n_values + 1
        return len(self.thresholds) + 2

    def branch_of(self, cell: Cell) -> int:
        """Branch index for one cell; the missing branch is the last one."""
        missing = self.n_branches - 1
        if cell is None:
            return missing
        if self.kind == NOMINAL:
            code = int(cell)
            return code if 0 <= code < self.n_values else missing
        value = float(cell)
        if value != value:  # NaN guards against pre-encoded missing cells
            return missing
        return bisect_left(self.thresholds, value)


@dataclass(frozen=True)
class StumpModel:
    """One-level tree: a split plus one class per branch."""

    n_features: int
    split: SplitRule
    branch_classes: tuple[str, ...]

    def __post_init__(self):
        if len(self.branch_classes) != self.split.n_branches:
            raise ValueError("branch class count does not match split arity")


Child = Union[str, StumpModel]


@dataclass(frozen=True)
class Depth2Model:
    """Two-level tree: root split, then a leaf or stump per branch."""

    n_features: int
    root: SplitRule
    children: tuple[Child, ...]

    def __post_init__(self):
        if len(self.children) != self.root.n_branches:
            raise ValueError("child count does not match root arity")


Model = Union[MajorityModel, StumpModel, Depth2Model]


def train_majority(train: Dataset) -> MajorityModel:
    """Train the zero-level tree; ties go to the class earliest in class order."""
    if len(train) == 0:
        raise ValueError("empty training set")
    counts = train.class_counts()
    winner = max(range(len(counts)), key=lambda i: (counts[i], -i))
    return MajorityModel(
        n_features=train.n_features,
        predicted_class=train.classes[winner],
        class_counts=tuple(zip(train.classes, counts)),
    )


def discretize_numeric(train: Dataset, feature: int, min_bucket: int) -> tuple[float, ...]:
    """Interval thresholds for a numeric feature, one-rule style.

    Walks the distinct sorted values left to right, closing the running
    interval once it holds at least `min_bucket` examples of its majority
    class and the next value group's majority class differs. Adjacent
    intervals that end up with the same majority class are merged.
    Thresholds are midpoints between the values on either side of each
    surviving boundary.
    """
    spec = train.features[feature]
    if spec.kind != NUMERIC:
        raise ValueError(f"feature {spec.name!r} is not numeric")
    if min_bucket < 1:
        raise ValueError("min_bucket must be >= 1")
    m = len(train.classes)
    pairs = sorted(
        (row.cells[feature], row.label) for row in train.rows if row.cells[feature] is not None
    )
    if not pairs:
        raise ValueError(f"feature {spec.name!r} has no non-missing values")

    # group by distinct value
    groups: list[tuple[float, list[int]]] = []
    for value, label in pairs:
        if groups and groups[-1][0] == value:
            groups[-1][1][label] += 1
        else:
            counts = [0] * m
            counts[label] += 1
            groups.append((value, counts))

    def majority(counts: Sequence[int]) -> int:
        return max(range(m), key=lambda i: (counts[i], -i))

    intervals: list[tuple[list[int], float, float]] = []  # counts, first, last value
    cur = [0] * m
    first = groups[0][0]
    last = first
    for value, counts in groups:
        if sum(cur):
            maj = majority(cur)
            if cur[maj] >= min_bucket and majority(counts) != maj:
                intervals.append((cur, first, last))
                cur = [0] * m
                first = value
        cur = [a + b for a, b in zip(cur, counts)]
        last = value
    intervals.append((cur, first, last))

    merged: list[tuple[list[int], float, float]] = []
    for counts, lo, hi in intervals:
        if merged and majority(merged[-1][0]) == majority(counts):
            prev_counts, prev_lo, _ = merged[-1]
            merged[-1] = ([a + b for a, b in zip(prev_counts, counts)], prev_lo, hi)
        else:
            merged.append((counts, lo, hi))
    return tuple(
        (merged[i][2] + merged[i + 1][1]) / 2.0 for i in range(len(merged) - 1)
    )


class _Columns:
    """Numpy views of a dataset: labels, and one array per feature.

    Nominal columns are int codes with -1 for missing; numeric columns are
    float64 with NaN for missing.
    """

    def __init__(self, ds: Dataset):
        self.ds = ds
        self.n = len(ds)
        self.m = len(ds.classes)
        self.y = np.fromiter((row.label for row in ds.rows), dtype=np.int64, count=self.n)
        self.cols: list[np.ndarray] = []
        for f, spec in enumerate(ds.features):
            if spec.kind == NOMINAL:
                col = np.fromiter(
                    (-1 if row.cells[f] is None else row.cells[f] for row in ds.rows),
                    dtype=np.int64,
                    count=self.n,
                )
            else:
                col = np.fromiter(
                    (np.nan if row.cells[f] is None else row.cells[f] for row in ds.rows),
                    dtype=np.float64,
                    count=self.n,
                )
            self.cols.append(col)

    def class_counts(self, labels: np.ndarray) -> np.ndarray:
        return np.bincount(labels, minlength=self.m)


def _argmax_first(values: np.ndarray) -> int:
    return int(np.argmax(values))


def _branch_matrix(branch: np.ndarray, labels: np.ndarray, n_branches: int, m: int) -> np.ndarray:
    return np.bincount(branch * m + labels, minlength=n_branches * m).reshape(n_branches, m)


def _stump_from_matrix(
    cols: _Columns, split: SplitRule, matrix: np.ndarray, fallback: int
) -> tuple[StumpModel, int]:
    """Label each branch with its majority class; empty branches take `fallback`."""
    classes = cols.ds.classes
    labels = []
    errors = 0
    for row in matrix:
        total = int(row.sum())
        if total == 0:
            labels.append(classes[fallback])
        else:
            best = _argmax_first(row)
            labels.append(classes[best])
            errors += total - int(row[best])
    return StumpModel(cols.ds.n_features, split, tuple(labels)), errors


def train_one_r(train: Dataset, min_bucket: int = DEFAULT_MIN_BUCKET) -> StumpModel:
    """Train the best one-rule stump over all features.

    Candidates are scored by training error; ties keep the earlier feature.
    Empty branches predict the global majority class.
    """
    if len(train) == 0:
        raise ValueError("empty training set")
    if train.n_features == 0:
        raise ValueError("dataset has no features")
    cols = _Columns(train)
    global_major = _argmax_first(cols.class_counts(cols.y))

    best: tuple[int, StumpModel] | None = None
    for f, spec in enumerate(train.features):
        if spec.kind == NOMINAL:
            split = SplitRule(f, NOMINAL, n_values=len(spec.values))
            codes = cols.cols[f]
            branch = np.where(codes >= 0, codes, len(spec.values))
        else:
            thresholds = discretize_numeric(train, f, min_bucket)
            split = SplitRule(f, NUMERIC, thresholds=thresholds)
            values = cols.cols[f]
            missing = np.isnan(values)
            branch = np.searchsorted(thresholds, values, side="left")
            branch[missing] = split.n_branches - 1
        matrix = _branch_matrix(branch, cols.y, split.n_branches, cols.m)
        stump, errors = _stump_from_matrix(cols, split, matrix, global_major)
        if best is None or errors < best[0]:
            best = (errors, stump)
    assert best is not None
    return best[1]


# internal nodes for the depth-2 search: ("leaf", class index) or
# ("stump", SplitRule, branch class indexes)
_Node = tuple


def _best_child(cols: _Columns, idx: np.ndarray) -> tuple[int, float, _Node]:
    """Minimum-error node for the rows `idx`: a leaf or a binary/multiway stump.

    Numeric stumps here use exactly one threshold, drawn from midpoints of
    adjacent distinct values among these rows. Returns (error, margin,
    node); the margin is the value gap around the chosen threshold (inf
    for leaves and nominal splits) and only serves tie-breaking.
    """
    k = len(idx)
    labels = cols.y[idx]
    counts = cols.class_counts(labels)
    node_major = _argmax_first(counts)
    best_err = k - int(counts[node_major])
    best_margin = np.inf
    best_node: _Node = ("leaf", node_major)
    if best_err == 0:
        return 0, best_margin, best_node

    m = cols.m
    for f, spec in enumerate(cols.ds.features):
        col = cols.cols[f][idx]
        if spec.kind == NOMINAL:
            n_values = len(spec.values)
            branch = np.where(col >= 0, col, n_values)
            matrix = _branch_matrix(branch, labels, n_values + 1, m)
            err = k - int(matrix.max(axis=1).sum())
            if err < best_err:
                branch_labels = tuple(
                    _argmax_first(row) if row.sum() else node_major for row in matrix
                )
                best_err = err
                best_margin = np.inf
                best_node = ("stump", SplitRule(f, NOMINAL, n_values=n_values), branch_labels)
        else:
            missing = np.isnan(col)
            values = col[~missing]
            if len(values) < 2:
                continue
            labels_nm = labels[~missing]
            order = np.argsort(values, kind="stable")
            sv = values[order]
            sy = labels_nm[order]
            bounds = np.nonzero(sv[:-1] < sv[1:])[0]
            if len(bounds) == 0:
                continue
            one_hot = np.zeros((len(sv), m), dtype=np.int64)
            one_hot[np.arange(len(sv)), sy] = 1
            cum = one_hot.cumsum(axis=0)
            total = cum[-1]
            miss_counts = cols.class_counts(labels[missing]) if missing.any() else None
            miss_err = (
                int(miss_counts.sum()) - int(miss_counts.max()) if miss_counts is not None else 0
            )
            left = cum[bounds]
            left_n = bounds + 1
            errs = (
                (left_n - left.max(axis=1))
                + (len(sv) - left_n - (total - left).max(axis=1))
                + miss_err
            )
            gaps = sv[bounds + 1] - sv[bounds]
            err = int(errs.min())
            tied = np.nonzero(errs == err)[0]
            j = int(tied[np.argmax(gaps[tied])])  # widest gap, then lowest threshold
            margin = float(gaps[j])
            if err < best_err or (err == best_err and margin > best_margin):
                i = int(bounds[j])
                threshold = (float(sv[i]) + float(sv[i + 1])) / 2.0
                miss_label = (
                    _argmax_first(miss_counts) if miss_counts is not None else node_major
                )
                branch_labels = (
                    _argmax_first(cum[i]),
                    _argmax_first(total - cum[i]),
                    miss_label,
                )
                best_err = err
                best_margin = margin
                best_node = ("stump", SplitRule(f, NUMERIC, thresholds=(threshold,)), branch_labels)
    return best_err, best_margin, best_node


def _children_for_partition(
    cols: _Columns, parts: list[np.ndarray], parent_major: int
) -> tuple[int, list[_Node]]:
    total_err = 0
    children: list[_Node] = []
    for part in parts:
        if len(part) == 0:
            children.append(("leaf", parent_major))
            continue
        err, _, node = _best_child(cols, part)
        total_err += err
        children.append(node)
    return total_err, children


def _materialize(cols: _Columns, root: SplitRule, children: list[_Node]) -> Depth2Model:
    classes = cols.ds.classes
    built: list[Child] = []
    for node in children:
        if node[0] == "leaf":
            built.append(classes[node[1]])
        else:
            _, split, branch_labels = node
            built.append(
                StumpModel(cols.ds.n_features, split, tuple(classes[i] for i in branch_labels))
            )
    return Depth2Model(cols.ds.n_features, root, tuple(built))


def train_depth2(train: Dataset) -> Depth2Model:
    """Exhaustively search the depth-2 language for a minimum training error tree.

    Root branches are optimized independently, which makes the search exact.
    If no feature admits a split on this training set (all numeric features
    constant and no nominal features), the result degenerates to the
    majority class behind a threshold-free root.
    """
    if len(train) == 0:
        raise ValueError("empty training set")
    cols = _Columns(train)
    global_major = _argmax_first(cols.class_counts(cols.y))
    all_rows = np.arange(cols.n)

    # best root by (error asc, margin desc); feature and threshold order
    # settle what is left because candidates arrive in that order
    best: tuple[int, float, SplitRule, list[_Node]] | None = None

    def consider(err: int, margin: float, root: SplitRule, children: list[_Node]) -> None:
        nonlocal best
        if best is None or err < best[0] or (err == best[0] and margin > best[1]):
            best = (err, margin, root, children)

    for f, spec in enumerate(train.features):
        col = cols.cols[f]
        if spec.kind == NOMINAL:
            n_values = len(spec.values)
            branch = np.where(col >= 0, col, n_values)
            parts = [all_rows[branch == b] for b in range(n_values + 1)]
            err, children = _children_for_partition(cols, parts, global_major)
            consider(err, np.inf, SplitRule(f, NOMINAL, n_values=n_values), children)
        else:
            missing = np.isnan(col)
            nm_rows = all_rows[~missing]
            values = col[nm_rows]
            order = np.argsort(values, kind="stable")
            sorted_rows = nm_rows[order]
            sv = values[order]
            bounds = np.nonzero(sv[:-1] < sv[1:])[0]
            if len(bounds) == 0:
                continue
            miss_rows = all_rows[missing]
            if len(miss_rows):
                miss_err, _, miss_node = _best_child(cols, miss_rows)
            else:
                miss_err, miss_node = 0, ("leaf", global_major)
            for i in bounds:
                i = int(i)
                threshold = (float(sv[i]) + float(sv[i + 1])) / 2.0
                left_err, _, left = _best_child(cols, sorted_rows[: i + 1])
                right_err, _, right = _best_child(cols, sorted_rows[i + 1 :])
                consider(
                    left_err + right_err + miss_err,
                    float(sv[i + 1] - sv[i]),
                    SplitRule(f, NUMERIC, thresholds=(threshold,)),
                    [left, right, miss_node],
                )

    if best is None:
        # only reachable when every feature is numeric and constant:
        # constant classifier behind a degenerate threshold-free root
        root = SplitRule(0, NUMERIC, thresholds=())
        leaves: list[_Node] = [("leaf", global_major)] * root.n_branches
        return _materialize(cols, root, leaves)
    return _materialize(cols, best[2], best[3])


def train(train_set: Dataset, depth: int, min_bucket: int = DEFAULT_MIN_BUCKET) -> Model:
    """Train the ladder member of the given depth (0, 1 or 2)."""
    if depth == 0:
        return train_majority(train_set)
    if depth == 1:
        return train_one_r(train_set, min_bucket)
    if depth == 2:
        return train_depth2(train_set)
    raise ValueError(f"depth must be 0, 1 or 2, got {depth}")


def predict(model: Model, cells: Sequence[Cell]) -> str:
    """Route one row through the model and return the reached class."""
    if len(cells) != model.n_features:
        raise ValueError(f"row has {len(cells)} cells, model expects {model.n_features}")
    if isinstance(model, MajorityModel):
        return model.predicted_class
    if isinstance(model, StumpModel):
        return model.branch_classes[model.split.branch_of(cells[model.split.feature])]
    branch = model.root.branch_of(cells[model.root.feature])
    child = model.children[branch]
    if isinstance(child, str):
        return child
    return child.branch_classes[child.split.branch_of(cells[child.split.feature])]


def training_error(model: Model, data: Dataset) -> float:
    """Fraction of rows the model misclassifies."""
    if len(data) == 0:
        raise ValueError("empty dataset")
    wrong = sum(
        1 for row in data.rows if predict(model, row.cells) != data.classes[row.label]
    )
    return wrong / len(data)
