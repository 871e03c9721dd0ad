import os

import numpy as np
import pytest

from collinlab import CsvSchema, Dataset, load_csv

KG_ENV = "COLLINLAB_KG_CSV"
WISSELL_ENV = "COLLINLAB_WISSELL_CSV"
KG_SCHEMA = CsvSchema(response="C", regressors=("I", "InA", "IA"))
WISSELL_SCHEMA = CsvSchema(response="D", regressors=("C", "I"))


def random_dataset(rng, n=None, k=None, noise=1.0, intercept=True):
    """Full-rank dataset with ``k`` columns in total (intercept included)."""
    n = int(rng.integers(8, 61)) if n is None else n
    k = int(rng.integers(2, 7)) if k is None else k
    p = k - 1 if intercept else k
    Z = rng.normal(size=(n, p)) * rng.uniform(0.5, 20.0, size=p) + rng.uniform(-5, 5, size=p)
    beta = rng.normal(size=k)
    X = np.column_stack([np.ones(n), Z]) if intercept else Z
    y = X @ beta + noise * rng.normal(size=n)
    return Dataset.from_arrays(y, Z, intercept=intercept)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _optional_dataset(env, schema):
    path = os.environ.get(env)
    if not path or not os.path.exists(path):
        pytest.skip(f"dataset not supplied (set {env} to a CSV with columns {schema.response},{','.join(schema.regressors)})")
    return load_csv(path, schema)


def _dataset_or_none(env, schema):
    path = os.environ.get(env)
    return load_csv(path, schema) if path and os.path.exists(path) else None


@pytest.fixture(scope="session")
def kg_data_or_none():
    return _dataset_or_none(KG_ENV, KG_SCHEMA)


@pytest.fixture(scope="session")
def wissell_data_or_none():
    return _dataset_or_none(WISSELL_ENV, WISSELL_SCHEMA)


@pytest.fixture(scope="session")
def kg_data():
    return _optional_dataset(KG_ENV, KG_SCHEMA)


@pytest.fixture(scope="session")
def wissell_data():
    return _optional_dataset(WISSELL_ENV, WISSELL_SCHEMA)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def record_acceptance(number, title, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES[number] = f"criterion {number} [{status}] {title}" + (f": {detail}" if detail else "")


def skip_acceptance(number, title, reason):
    ACCEPTANCE_LINES[number] = f"criterion {number} [SKIP] {title}: {reason}"
    pytest.skip(reason)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
