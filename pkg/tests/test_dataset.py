import pytest
from hypothesis import given, settings, strategies as st

from stumpbench.dataset import (
    DataError,
    FeatureSpec,
    NOMINAL,
    NUMERIC,
    dataset_to_csv,
    fold_split,
    infer_schema,
    load_dataset,
    make_fold_plan,
    parse_dataset,
)


def test_infer_schema_numeric_vs_nominal():
    header = ["a", "b", "y"]
    rows = [["1.5", "a", "x"], ["2.0", "b", "z"], ["?", "a", "x"]]
    features, label = infer_schema(header, rows)
    assert [f.kind for f in features] == [NUMERIC, NOMINAL]
    assert features[1].values == ("a", "b")
    assert label.values == ("x", "z")


def test_infer_schema_one_bad_cell_forces_nominal():
    features, _ = infer_schema(["a", "y"], [["1", "p"], ["2", "q"], ["x", "p"]])
    assert features[0].kind == NOMINAL
    assert features[0].values == ("1", "2", "x")


def test_infer_schema_all_missing_column_rejected():
    with pytest.raises(DataError, match="entirely missing"):
        infer_schema(["a", "y"], [["?", "p"], ["?", "q"]])


def test_infer_schema_single_valued_column_rejected():
    with pytest.raises(DataError, match="single-valued"):
        infer_schema(["a", "y"], [["c", "p"], ["c", "q"]])


def test_infer_schema_duplicate_header():
    with pytest.raises(DataError, match="duplicate header"):
        infer_schema(["a", "a"], [["1", "p"], ["2", "q"]])


def test_parse_dataset_missing_cells_and_order():
    text = "a,b,y\n1,u,p\n?,v,q\n3,u,p\n"
    ds = parse_dataset(text)
    assert len(ds) == 3
    assert ds.rows[1].cells[0] is None
    assert ds.classes == ("p", "q")
    assert [ds.classes[r.label] for r in ds.rows] == ["p", "q", "p"]


def test_parse_dataset_single_class_rejected():
    with pytest.raises(DataError, match="fewer than 2"):
        parse_dataset("a,y\n1,p\n2,p\n")


def test_parse_dataset_ragged_rejected():
    with pytest.raises(DataError, match="ragged"):
        parse_dataset("a,b,y\n1,2,p\n1,q\n")


def test_parse_dataset_schema_override_arity():
    override = [FeatureSpec("a", NUMERIC, 0)]
    ds = parse_dataset("a,y\n1,p\n2,q\n", schema_override=override)
    assert ds.features[0].kind == NUMERIC
    with pytest.raises(DataError, match="override"):
        parse_dataset("a,b,y\n1,2,p\n3,4,q\n", schema_override=override)


def test_parse_iris(iris):
    assert len(iris) == 150
    assert len(iris.features) == 4
    assert all(f.kind == NUMERIC for f in iris.features)
    assert iris.classes == ("setosa", "versicolor", "virginica")
    assert iris.class_counts() == (50, 50, 50)


def test_label_column_flag():
    ds = parse_dataset("y,a\np,1\nq,2\n", label_column=0)
    assert ds.classes == ("p", "q")
    assert ds.features[0].name == "a"


def test_csv_round_trip():
    text = "a,b,y\n1.25,u,p\n?,v,q\n-3.5,u,p\n"
    ds = parse_dataset(text)
    again = parse_dataset(dataset_to_csv(ds, label_name="y"))
    assert again.features == ds.features
    assert again.classes == ds.classes
    assert again.rows == ds.rows


@given(
    st.lists(
        st.tuples(
            st.floats(allow_nan=False, allow_infinity=False, width=32),
            st.sampled_from(["u", "v", "w"]),
            st.sampled_from(["p", "q"]),
        ),
        min_size=2,
        max_size=30,
    )
)
@settings(max_examples=40, deadline=None)
def test_numeric_round_trip_precision(raw_rows):
    lines = ["num,nom,y"] + [f"{x!r},{s},{c}" for x, s, c in raw_rows]
    try:
        ds = parse_dataset("\n".join(lines) + "\n")
    except DataError:
        return  # degenerate draw (single class or single-valued column)
    again = parse_dataset(dataset_to_csv(ds, label_name="y"))
    for row, row2 in zip(ds.rows, again.rows):
        v, v2 = row.cells[0], row2.cells[0]
        assert v2 == v or abs(v2 - v) <= 1e-12 * abs(v)
        assert row2.cells[1] == row.cells[1]
        assert row2.label == row.label


@given(st.permutations(list(range(6))))
@settings(max_examples=25, deadline=None)
def test_infer_schema_kind_is_row_order_invariant(perm):
    rows = [["1", "p"], ["2", "q"], ["x", "p"], ["3", "q"], ["?", "p"], ["4", "q"]]
    shuffled = [rows[i] for i in perm]
    features, _ = infer_schema(["a", "y"], shuffled)
    assert features[0].kind == NOMINAL
    assert sorted(features[0].values) == ["1", "2", "3", "4", "x"]


def test_manifest_label_kind_and_acronym(tmp_path):
    (tmp_path / "toy.csv").write_text("y,a,b\np,1,9\nq,2,8\np,3,7\nq,1,6\n")
    (tmp_path / "toy.manifest").write_text(
        "# toy manifest\nlabel = y\nacronym = TY\nkind.a = nominal\n"
    )
    ds = load_dataset(tmp_path / "toy.csv")
    assert ds.name == "TY"
    assert ds.classes == ("p", "q")
    assert ds.features[0].name == "a" and ds.features[0].kind == NOMINAL
    assert ds.features[1].kind == NUMERIC


# --- fold plans ---


def test_iris_fold_plan_counts(iris):
    plan = make_fold_plan(iris, repeats=9, folds=25, seed=123)
    assert plan.repeats == 9 and plan.folds == 25
    for repeat in range(9):
        for fold in range(25):
            test_idx = plan.test_indices(repeat, fold)
            assert len(test_idx) == 6
            per_class = [0, 0, 0]
            for i in test_idx:
                per_class[iris.rows[i].label] += 1
            assert per_class == [2, 2, 2]


def test_fold_plan_is_deterministic(iris):
    a = make_fold_plan(iris, 3, 10, seed=9)
    b = make_fold_plan(iris, 3, 10, seed=9)
    assert a == b
    c = make_fold_plan(iris, 3, 10, seed=10)
    assert a != c


def test_leave_one_out_degenerate():
    ds = parse_dataset("a,y\n1,p\n2,q\n3,p\n4,q\n5,p\n")
    plan = make_fold_plan(ds, repeats=1, folds=len(ds), seed=0)
    sizes = sorted(len(plan.test_indices(0, f)) for f in range(len(ds)))
    assert sizes == [1] * len(ds)


def test_fold_plan_argument_validation(iris):
    with pytest.raises(ValueError):
        make_fold_plan(iris, 1, 1, seed=0)
    with pytest.raises(ValueError):
        make_fold_plan(iris, 1, 151, seed=0)
    with pytest.raises(ValueError):
        make_fold_plan(iris, 0, 5, seed=0)


def test_fold_split_partition():
    ds = parse_dataset("a,y\n1,p\n2,q\n3,p\n4,q\n5,p\n6,q\n")
    plan = make_fold_plan(ds, 2, 3, seed=4)
    train, test = fold_split(ds, plan, 0, 0)
    assert len(train) == 4 and len(test) == 2
    seen = []
    for fold in range(3):
        seen.extend(plan.test_indices(0, fold))
    assert sorted(seen) == list(range(6))
    with pytest.raises(IndexError):
        fold_split(ds, plan, 0, 3)
    with pytest.raises(IndexError):
        fold_split(ds, plan, 2, 0)


@given(
    st.integers(min_value=2, max_value=8).flatmap(
        lambda k: st.tuples(
            st.just(k),
            st.lists(st.sampled_from(["p", "q", "r"]), min_size=k, max_size=60),
            st.integers(min_value=0, max_value=2**63),
            st.integers(min_value=1, max_value=3),
        )
    )
)
@settings(max_examples=40, deadline=None)
def test_fold_plan_invariants(args):
    folds, labels, seed, repeats = args
    if len(set(labels)) < 2:
        return
    lines = ["a,y"] + [f"{i},{c}" for i, c in enumerate(labels)]
    ds = parse_dataset("\n".join(lines) + "\n")
    plan = make_fold_plan(ds, repeats, folds, seed)
    for repeat in range(repeats):
        assignment = plan.assignment[repeat]
        assert len(assignment) == len(ds)
        assert all(0 <= f < folds for f in assignment)
        for cls in range(len(ds.classes)):
            counts = [0] * folds
            for i, row in enumerate(ds.rows):
                if row.label == cls:
                    counts[assignment[i]] += 1
            assert max(counts) - min(counts) <= 1
