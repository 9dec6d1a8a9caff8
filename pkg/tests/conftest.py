import json
import pathlib

import pytest

from qnetcap import parse_network

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
NETWORKS_DIR = REPO_ROOT / "networks"
SCHEMAS_DIR = REPO_ROOT / "docs" / "schemas"


def load_sample(name: str):
    return parse_network((NETWORKS_DIR / name).read_text())


def load_schema(name: str):
    return json.loads((SCHEMAS_DIR / name).read_text())


@pytest.fixture
def diamond_net():
    return load_sample("diamond.json")


@pytest.fixture
def triangle_net():
    return load_sample("triangle_counts.json")


@pytest.fixture
def single_edge_net():
    return load_sample("single_edge.json")


@pytest.fixture
def fig2_net():
    return load_sample("fig2_analog.json")
