import pytest

from stumpbench.dataset import make_fold_plan, parse_dataset
from stumpbench.evaluation import (
    CVResult,
    build_report,
    confusion,
    cross_validate,
    merge_confusions,
    repeats_to_csv,
    report_to_csv,
    report_to_text,
)


def test_confusion_hand_count():
    c = confusion(["+", "+", "-", "-"], ["+", "-", "-", "-"], ["+", "-"])
    assert c.counts == ((1, 1), (0, 2))
    assert c.accuracy() == pytest.approx(0.75)


def test_confusion_identity_is_diagonal():
    truths = ["a", "b", "a", "c"]
    c = confusion(truths, truths, ["a", "b", "c"])
    assert c.counts == ((2, 0, 0), (0, 1, 0), (0, 0, 1))
    assert c.accuracy() == 1.0


def test_confusion_rejects_empty_and_mismatches():
    with pytest.raises(ValueError, match="empty"):
        confusion([], [], ["a", "b"])
    with pytest.raises(ValueError, match="length"):
        confusion(["a"], [], ["a", "b"])
    with pytest.raises(ValueError, match="unknown true"):
        confusion(["z"], ["a"], ["a", "b"])
    with pytest.raises(ValueError, match="unknown predicted"):
        confusion(["a"], ["z"], ["a", "b"])


def test_accuracy_and_error_are_complementary(iris):
    from stumpbench.learners import predict, train, training_error

    model = train(iris, 1)
    preds = [predict(model, r.cells) for r in iris.rows]
    c = confusion(iris.labels(), preds, iris.classes)
    assert c.accuracy() + training_error(model, iris) == 1.0


def test_merge_confusions_pools_counts():
    a = confusion(["x", "y"], ["x", "x"], ["x", "y"])
    b = confusion(["y", "y"], ["y", "y"], ["x", "y"])
    merged = merge_confusions([a, b])
    assert merged.counts == ((1, 0), (1, 2))


def test_cross_validate_iris_zero_level(iris):
    plan = make_fold_plan(iris, 9, 25, seed=0)
    result = cross_validate(iris, 0, plan)
    # every training fold ties 48/48/48, so the majority model always
    # predicts the first class and scores exactly 2 of 6 per test fold
    assert result.mean == pytest.approx(100 / 3, abs=1e-9)
    assert all(acc == pytest.approx(100 / 3, abs=1e-9) for acc in result.per_repeat)
    assert result.n_classes == 3


def test_cross_validate_is_deterministic(iris):
    sub = iris.subset(range(0, 150, 2))
    plan = make_fold_plan(sub, 2, 5, seed=3)
    assert cross_validate(sub, 1, plan) == cross_validate(sub, 1, plan)


def test_cross_validate_pools_by_rows_not_folds():
    # 7 rows in 3 folds: sizes 3/2/2, so fold accuracies of 1/3, 1, 1 pool
    # to 5/7, not to the unweighted mean 7/9
    ds = parse_dataset("a,y\n1,A\n2,A\n3,A\n4,A\n5,B\n6,B\n7,B\n")
    plan = make_fold_plan(ds, 1, 3, seed=1)
    result = cross_validate(ds, 0, plan)
    sizes = sorted(len(plan.test_indices(0, f)) for f in range(3))
    assert sizes == [2, 2, 3]
    correct = 0
    for fold in range(3):
        test_idx = plan.test_indices(0, fold)
        # majority of the training rows is A in every fold here
        correct += sum(1 for i in test_idx if ds.rows[i].label == 0)
    assert result.per_repeat[0] == pytest.approx(100 * correct / 7)


def test_cross_validate_plan_mismatch(iris):
    other = iris.subset(range(100))
    plan = make_fold_plan(iris, 1, 5, seed=0)
    with pytest.raises(ValueError, match="different dataset"):
        cross_validate(other, 0, plan)


def _result(name, depth, mean, n_classes=2):
    return CVResult(name, n_classes, depth, (mean,))


def test_build_report_deltas_and_sort():
    results = [
        _result("IR", 0, 33.3, 3), _result("IR", 1, 91.9, 3), _result("IR", 2, 95.7, 3),
        _result("BC", 0, 70.3), _result("BC", 1, 67.2), _result("BC", 2, 66.3),
    ]
    table = build_report(results)
    assert [r.dataset for r in table.rows] == ["BC", "IR"]  # ascending delta10
    bc, ir = table.rows
    assert bc.delta10 == pytest.approx(-3.1)
    assert bc.delta21 == pytest.approx(-0.9)
    assert ir.delta10 == pytest.approx(58.6)
    assert ir.delta21 == pytest.approx(3.8)


def test_report_identity_exact():
    results = [
        _result("X", 0, 10.123456), _result("X", 1, 42.654321), _result("X", 2, 40.0),
    ]
    row = build_report(results).rows[0]
    assert row.acc0 + row.delta10 + row.delta21 == row.acc2  # exact, pre-rounding


def test_build_report_requires_all_depths():
    with pytest.raises(ValueError, match="missing depth"):
        build_report([_result("X", 0, 50.0), _result("X", 1, 60.0)])


def test_single_dataset_table():
    results = [_result("X", 0, 50.0), _result("X", 1, 60.0), _result("X", 2, 70.0)]
    table = build_report(results)
    assert len(table.rows) == 1


def test_report_renderings():
    results = [
        _result("IR", 0, 33.3, 3), _result("IR", 1, 91.85, 3), _result("IR", 2, 95.71, 3),
        _result("BC", 0, 70.3), _result("BC", 1, 67.2), _result("BC", 2, 66.3),
    ]
    table = build_report(results)
    csv = report_to_csv(table)
    lines = csv.splitlines()
    assert lines[0] == "dataset,classes,zero_level,one_level,two_level,delta_1_0,delta_2_1"
    assert lines[1].startswith("BC,2,70.3,")
    text = report_to_text(table)
    assert "IR (3)" in text and "BC (2)" not in text and "BC" in text
    assert "91.8" in text  # one-decimal display only in the text table
    assert "95.7" in text


def test_repeats_csv_lists_every_repeat():
    result = CVResult("X", 2, 1, (50.0, 60.0))
    csv = repeats_to_csv([result])
    assert csv.splitlines()[1:] == ["X,1,0,50.0", "X,1,1,60.0"]
