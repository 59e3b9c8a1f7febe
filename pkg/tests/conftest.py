from pathlib import Path

import pytest
from hypothesis import settings

from cocluster.io import UCI_SCHEMAS, convert_uci, load_dataset, write_tuples

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def zoo_paths(tmp_path_factory):
    out = tmp_path_factory.mktemp("zoo")
    tuples, labels = convert_uci(DATA_DIR / "zoo.data", UCI_SCHEMAS["zoo"])
    tuples_path = out / "zoo.tsv"
    labels_path = out / "zoo.labels.tsv"
    write_tuples(tuples_path, tuples)
    write_tuples(labels_path, labels)
    return tuples_path, labels_path


@pytest.fixture(scope="session")
def zoo(zoo_paths):
    return load_dataset(*zoo_paths)
