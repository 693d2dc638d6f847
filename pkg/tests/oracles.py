"""Independent brute-force oracles the tests check the fast paths against.

Everything here is deliberately naive: plain-Python row routing, explicit
enumeration, no numpy, no code shared with the implementation under test.
"""

from __future__ import annotations

from stumpbench.dataset import Dataset, NOMINAL


def route(cell, kind, thresholds=(), n_values=0):
    """Branch index for a cell; mirrors the declared routing conventions."""
    if cell is None:
        return n_values if kind == NOMINAL else len(thresholds) + 1
    if kind == NOMINAL:
        return cell if cell < n_values else n_values
    for i, t in enumerate(thresholds):
        if cell <= t:
            return i
    return len(thresholds)


def leaf_error(labels):
    """Errors of the best constant prediction on these labels."""
    if not labels:
        return 0
    return len(labels) - max(labels.count(c) for c in set(labels))


def numeric_midpoints(rows, feature):
    values = sorted({cells[feature] for cells, _ in rows if cells[feature] is not None})
    return [(lo + hi) / 2 for lo, hi in zip(values, values[1:])]


def best_stump_error(rows, features):
    """Minimum training errors of any single binary/multiway stump.

    Numeric candidates use one threshold from the rows' own midpoints; each
    branch predicts its own majority. Returns None if no feature admits a
    split.
    """
    best = None
    for f, spec in enumerate(features):
        if spec.kind == NOMINAL:
            branches = [[] for _ in range(len(spec.values) + 1)]
            for cells, label in rows:
                branches[route(cells[f], NOMINAL, n_values=len(spec.values))].append(label)
            err = sum(leaf_error(b) for b in branches)
            best = err if best is None else min(best, err)
        else:
            for t in numeric_midpoints(rows, f):
                branches = [[], [], []]
                for cells, label in rows:
                    branches[route(cells[f], "numeric", thresholds=(t,))].append(label)
                err = sum(leaf_error(b) for b in branches)
                best = err if best is None else min(best, err)
    return best


def best_child_error(rows, features):
    """Leaf or best stump, whichever errs less; the depth-2 child language."""
    labels = [label for _, label in rows]
    best = leaf_error(labels)
    stump = best_stump_error(rows, features)
    if stump is not None:
        best = min(best, stump)
    return best


def depth2_min_error(ds: Dataset) -> int:
    """Exhaustive minimum training errors over the depth-2 split language."""
    rows = [(r.cells, r.label) for r in ds.rows]
    candidates = []
    for f, spec in enumerate(ds.features):
        if spec.kind == NOMINAL:
            branches = [[] for _ in range(len(spec.values) + 1)]
            for cells, label in rows:
                branches[route(cells[f], NOMINAL, n_values=len(spec.values))].append(
                    (cells, label)
                )
            candidates.append(sum(best_child_error(b, ds.features) for b in branches))
        else:
            for t in numeric_midpoints(rows, f):
                branches = [[], [], []]
                for cells, label in rows:
                    branches[route(cells[f], "numeric", thresholds=(t,))].append((cells, label))
                candidates.append(sum(best_child_error(b, ds.features) for b in branches))
    if not candidates:
        return leaf_error([label for _, label in rows])
    return min(candidates)


def one_r_min_error(ds: Dataset, discretize) -> int:
    """Minimum one-rule training errors, enumerating every feature's stump.

    `discretize` supplies the numeric thresholds (the same public operation
    the trainer uses); branch labeling and error counting are redone here
    by direct majority counting.
    """
    rows = [(r.cells, r.label) for r in ds.rows]
    best = None
    for f, spec in enumerate(ds.features):
        if spec.kind == NOMINAL:
            thresholds, n_values = (), len(spec.values)
            n_branches = n_values + 1
        else:
            thresholds, n_values = discretize(ds, f), 0
            n_branches = len(thresholds) + 2
        branches = [[] for _ in range(n_branches)]
        for cells, label in rows:
            branches[route(cells[f], spec.kind, thresholds, n_values)].append(label)
        err = sum(leaf_error(b) for b in branches)
        best = err if best is None else min(best, err)
    return best


def crossover_grid_search(a, b, step=1e-6):
    """Sign-change search for the meeting point of two cost lines.

    Scans [0, 1] at 1e-3 first and refines the sign-change cell at `step`;
    the NE difference is linear in x, so the two-stage scan finds the same
    cell a flat scan would.
    """

    def diff(x):
        return (a.fnr * x + a.fpr * (1 - x)) - (b.fnr * x + b.fpr * (1 - x))

    def scan(lo, hi, n):
        prev = diff(lo)
        if prev == 0.0:
            return lo, lo
        for i in range(1, n + 1):
            x = lo + (hi - lo) * i / n
            cur = diff(x)
            if cur == 0.0:
                return x, x
            if (prev < 0) != (cur < 0):
                return lo + (hi - lo) * (i - 1) / n, x
            prev = cur
        return None

    cell = scan(0.0, 1.0, 1000)
    if cell is None:
        return None
    lo, hi = cell
    if lo == hi:
        return lo
    lo, hi = scan(lo, hi, max(1, round((hi - lo) / step)))
    return (lo + hi) / 2
