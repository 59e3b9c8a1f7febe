"""File formats: tuple/label/rating loaders, co-cluster export, UCI conversion."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .recommender import RatingTuple
from .relation import CoCluster, LabeledDataset, Relation, build_relation

log = logging.getLogger(__name__)


def _lines(path) -> Iterable[tuple[int, str]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            yield lineno, line


def _split(path, lineno: int, line: str, nfields: int, shape: str) -> list[str]:
    parts = line.split("\t")
    if len(parts) != nfields or any(not p for p in parts):
        raise ValueError(f"{path}:{lineno}: expected '{shape}'")
    return parts


def load_tuples(path) -> list[tuple[str, str]]:
    """Read one 'object<TAB>feature' pair per line; blank lines are skipped."""
    return [
        tuple(_split(path, lineno, line, 2, "object<TAB>feature"))
        for lineno, line in _lines(path)
    ]


def load_dataset(tuples_path, labels_path=None) -> LabeledDataset:
    """Load a relation and, optionally, per-object labels.

    Labels naming objects absent from the relation are dropped with a warning;
    they never influence clustering.
    """
    relation = build_relation(load_tuples(tuples_path))
    labels: dict[int, str] = {}
    if labels_path is not None:
        for lineno, line in _lines(labels_path):
            name, label = _split(labels_path, lineno, line, 2, "object<TAB>label")
            oid = relation.object_index.get(name)
            if oid is None:
                log.warning(
                    "%s:%d: label for unknown object %r dropped", labels_path, lineno, name
                )
                continue
            labels[oid] = label
    return LabeledDataset(relation, labels)


def save_coclusters(path, cs: Sequence[CoCluster], r: Relation) -> None:
    """Write one JSON object per co-cluster: objects[], features[], density."""
    with open(path, "w", encoding="utf-8") as fh:
        for c in cs:
            record = {
                "objects": sorted(r.object_names[o] for o in c.objects),
                "features": sorted(r.feature_names[f] for f in c.features),
                "density": c.density,
            }
            fh.write(json.dumps(record) + "\n")


def load_coclusters(path, r: Relation) -> list[CoCluster]:
    """Read co-clusters back; names must resolve in the given relation."""
    out = []
    for lineno, line in _lines(path):
        record = json.loads(line)
        try:
            objects = frozenset(r.object_index[name] for name in record["objects"])
            features = frozenset(r.feature_index[name] for name in record["features"])
        except KeyError as exc:
            raise ValueError(f"{path}:{lineno}: unknown name {exc}") from None
        out.append(CoCluster(objects, features, float(record["density"])))
    return out


def load_ratings(path, scale: tuple[int, int] = (1, 5)) -> list[RatingTuple]:
    """Read one 'user<TAB>item<TAB>rating' per line, validating the scale."""
    lo, hi = scale
    out = []
    for lineno, line in _lines(path):
        user, item, raw = _split(path, lineno, line, 3, "user<TAB>item<TAB>rating")
        try:
            rating = int(raw)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: rating {raw!r} is not an integer") from None
        if not lo <= rating <= hi:
            raise ValueError(f"{path}:{lineno}: rating {rating} outside scale [{lo}, {hi}]")
        out.append(RatingTuple(user, item, rating))
    return out


def load_attributes(path) -> dict[str, set[str]]:
    """Read one 'item<TAB>attribute' per line into an item -> attributes map."""
    out: dict[str, set[str]] = {}
    for lineno, line in _lines(path):
        item, attr = _split(path, lineno, line, 2, "item<TAB>attribute")
        out.setdefault(item, set()).add(attr)
    return out


def write_tuples(path, rows: Iterable[tuple[str, str]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for a, b in rows:
            fh.write(f"{a}\t{b}\n")


@dataclass(frozen=True)
class UciSchema:
    """How to turn one comma-separated categorical file into tuples.

    Attribute columns whose observed values are all '0'/'1' become presence
    features named after the column; columns listed in ``nonzero_binary`` are
    treated the same but fire on any non-zero numeric value; every other
    column becomes one 'column=value' feature per row.  Missing-value tokens
    emit nothing.
    """

    columns: tuple[str, ...]
    name_column: str | None = None
    class_column: str | None = None
    nonzero_binary: frozenset[str] = frozenset()
    missing_values: frozenset[str] = frozenset({"?"})


ZOO_SCHEMA = UciSchema(
    columns=(
        "name",
        "hair",
        "feathers",
        "eggs",
        "milk",
        "airborne",
        "aquatic",
        "predator",
        "toothed",
        "backbone",
        "breathes",
        "venomous",
        "fins",
        "legs",
        "tail",
        "domestic",
        "catsize",
        "type",
    ),
    name_column="name",
    class_column="type",
    nonzero_binary=frozenset({"legs"}),
)

UCI_SCHEMAS: dict[str, UciSchema] = {"zoo": ZOO_SCHEMA}


def convert_uci(
    path, schema: UciSchema
) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """Convert a raw UCI-style categorical file into (tuples, labels) rows.

    Duplicate object names get a numeric suffix ('frog', 'frog_2', ...) so
    every input row stays a distinct object.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, line in _lines(path):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != len(schema.columns):
            raise ValueError(
                f"{path}:{lineno}: expected {len(schema.columns)} comma-separated "
                f"fields, got {len(parts)}"
            )
        rows.append((lineno, parts))
    col_pos = {name: i for i, name in enumerate(schema.columns)}
    skip = {schema.name_column, schema.class_column} - {None}
    attr_cols = [c for c in schema.columns if c not in skip]

    binary: set[str] = set()
    for col in attr_cols:
        if col in schema.nonzero_binary:
            continue
        observed = {
            parts[col_pos[col]]
            for _, parts in rows
            if parts[col_pos[col]] not in schema.missing_values
        }
        if observed and observed <= {"0", "1"}:
            binary.add(col)

    name_counts: dict[str, int] = {}
    tuples: list[tuple[str, str]] = []
    labels: list[tuple[str, str]] = []
    for i, (lineno, parts) in enumerate(rows):
        base = parts[col_pos[schema.name_column]] if schema.name_column else f"row{i}"
        count = name_counts.get(base, 0) + 1
        name_counts[base] = count
        name = base if count == 1 else f"{base}_{count}"
        for col in attr_cols:
            value = parts[col_pos[col]]
            if value in schema.missing_values:
                continue
            if col in schema.nonzero_binary:
                try:
                    fires = float(value) != 0.0
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: non-numeric value {value!r} in column {col}"
                    ) from None
                if fires:
                    tuples.append((name, col))
            elif col in binary:
                if value == "1":
                    tuples.append((name, col))
            else:
                tuples.append((name, f"{col}={value}"))
        if schema.class_column:
            labels.append((name, parts[col_pos[schema.class_column]]))
    return tuples, labels
