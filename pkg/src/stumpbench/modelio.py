"""Line-oriented text serialization for trained models.

Format (version 1): one record per line, space-separated keywords with the
class label as the trailing field so labels may contain spaces. Floats are
written with `repr`, so thresholds round-trip bit-exact.

    stumpbench-model v1
    kind stump
    features 4
    split 2 numeric 2.45,4.95      # or: split 1 nominal 3 (declared arity)
    branch 0 setosa                # one line per branch, missing branch last
    ...

Majority models add `counts <label>=<n>,...` and `predict <label>`;
depth-2 models use `root ...` plus `child <i> leaf <label>` or
`child <i> stump ...` followed by `child <i> branch <j> <label>` lines.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .dataset import NOMINAL, NUMERIC
from .learners import Depth2Model, MajorityModel, Model, SplitRule, StumpModel

FORMAT_HEADER = "stumpbench-model v1"


class ModelFormatError(ValueError):
    """Unreadable or inconsistent model text."""


def _split_to_text(split: SplitRule) -> str:
    if split.kind == NOMINAL:
        return f"{split.feature} nominal {split.n_values}"
    thresholds = ",".join(repr(t) for t in split.thresholds)
    return f"{split.feature} numeric {thresholds}"


def _split_from_text(text: str) -> SplitRule:
    parts = text.split(" ")
    if len(parts) not in (2, 3):
        raise ModelFormatError(f"bad split record {text!r}")
    feature = int(parts[0])
    kind = parts[1]
    payload = parts[2] if len(parts) == 3 else ""
    if kind == NOMINAL:
        return SplitRule(feature, NOMINAL, n_values=int(payload))
    if kind == NUMERIC:
        thresholds = tuple(float(t) for t in payload.split(",") if t != "")
        return SplitRule(feature, NUMERIC, thresholds=thresholds)
    raise ModelFormatError(f"unknown split kind {kind!r}")


def dump_model(model: Model) -> str:
    lines = [FORMAT_HEADER]
    if isinstance(model, MajorityModel):
        lines.append("kind majority")
        lines.append(f"features {model.n_features}")
        counts = ",".join(f"{label}={count}" for label, count in model.class_counts)
        lines.append(f"counts {counts}")
        lines.append(f"predict {model.predicted_class}")
    elif isinstance(model, StumpModel):
        lines.append("kind stump")
        lines.append(f"features {model.n_features}")
        lines.append(f"split {_split_to_text(model.split)}")
        for i, label in enumerate(model.branch_classes):
            lines.append(f"branch {i} {label}")
    elif isinstance(model, Depth2Model):
        lines.append("kind depth2")
        lines.append(f"features {model.n_features}")
        lines.append(f"root {_split_to_text(model.root)}")
        for i, child in enumerate(model.children):
            if isinstance(child, str):
                lines.append(f"child {i} leaf {child}")
            else:
                lines.append(f"child {i} stump {_split_to_text(child.split)}")
                for j, label in enumerate(child.branch_classes):
                    lines.append(f"child {i} branch {j} {label}")
    else:
        raise ModelFormatError(f"cannot serialize {type(model).__name__}")
    return "\n".join(lines) + "\n"


def load_model(text: str) -> Model:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != FORMAT_HEADER:
        raise ModelFormatError("missing or unsupported format header")
    fields: dict[str, str] = {}
    branches: list[tuple[int, str]] = []
    children: dict[int, dict] = {}
    for line in lines[1:]:
        key, _, rest = line.partition(" ")
        if key == "branch":
            idx, _, label = rest.partition(" ")
            branches.append((int(idx), label))
        elif key == "child":
            idx_text, _, payload = rest.partition(" ")
            idx = int(idx_text)
            entry = children.setdefault(idx, {"branches": []})
            what, _, tail = payload.partition(" ")
            if what == "leaf":
                entry["leaf"] = tail
            elif what == "stump":
                entry["split"] = _split_from_text(tail)
            elif what == "branch":
                j, _, label = tail.partition(" ")
                entry["branches"].append((int(j), label))
            else:
                raise ModelFormatError(f"bad child record {line!r}")
        else:
            fields[key] = rest

    kind = fields.get("kind")
    n_features = int(fields.get("features", "0"))
    if kind == "majority":
        counts = tuple(
            (pair.rsplit("=", 1)[0], int(pair.rsplit("=", 1)[1]))
            for pair in fields["counts"].split(",")
        )
        return MajorityModel(n_features, fields["predict"], counts)
    if kind == "stump":
        split = _split_from_text(fields["split"])
        ordered = tuple(label for _, label in sorted(branches))
        return StumpModel(n_features, split, ordered)
    if kind == "depth2":
        root = _split_from_text(fields["root"])
        built: list[Union[str, StumpModel]] = []
        for i in range(root.n_branches):
            if i not in children:
                raise ModelFormatError(f"missing child {i}")
            entry = children[i]
            if "leaf" in entry:
                built.append(entry["leaf"])
            else:
                ordered = tuple(label for _, label in sorted(entry["branches"]))
                built.append(StumpModel(n_features, entry["split"], ordered))
        return Depth2Model(n_features, root, tuple(built))
    raise ModelFormatError(f"unknown model kind {kind!r}")


def save_model(model: Model, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_model(model))


def read_model(path: Union[str, Path]) -> Model:
    return load_model(Path(path).read_text())
