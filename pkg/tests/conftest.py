import random
from pathlib import Path

import pytest

from conceptkit.context import context_from_rows
from conceptkit.fixtures import (
    DOCS_GRAPH_TEXT,
    DOCS_RECORDS_TEXT,
    DOCS_SCALES_TEXT,
    DOCS_VIEWS_TEXT,
    K1_FCIF,
    docs_context,
    k1_context,
)
from conceptkit.workspace import pipeline_lattice

GOLDEN = Path(__file__).parent / "golden"


def random_context(rng: random.Random, max_objects=8, max_attributes=8):
    n = rng.randint(1, max_objects)
    m = rng.randint(1, max_attributes)
    objects = [f"g{i}" for i in range(1, n + 1)]
    attributes = [f"m{j}" for j in range(1, m + 1)]
    density = rng.uniform(0.15, 0.85)
    rows = {
        g: [a for a in attributes if rng.random() < density]
        for g in objects
    }
    return context_from_rows(objects, attributes, rows)


@pytest.fixture
def k1():
    return k1_context()


@pytest.fixture
def k1_lattice():
    return pipeline_lattice(k1_context())


@pytest.fixture
def docs():
    return docs_context()


@pytest.fixture
def docs_lattice():
    return pipeline_lattice(docs_context())


@pytest.fixture
def workspace_root(tmp_path):
    """A populated on-disk workspace mirroring the documented layout."""
    from conceptkit.interchange import context_to_fcif, emit_clif, emit_fcif, lattice_to_clif

    (tmp_path / "contexts").mkdir()
    (tmp_path / "lattices").mkdir()
    (tmp_path / "scales").mkdir()
    (tmp_path / "records").mkdir()
    (tmp_path / "contexts" / "k1.fcif").write_text(K1_FCIF)
    (tmp_path / "contexts" / "docs.fcif").write_text(
        emit_fcif(context_to_fcif(docs_context())))
    (tmp_path / "contexts" / "docs.views").write_text(DOCS_VIEWS_TEXT)
    (tmp_path / "lattices" / "k1order.clif").write_text(
        emit_clif(lattice_to_clif(pipeline_lattice(k1_context()), "K1")))
    (tmp_path / "scales" / "docs.cfg").write_text(DOCS_SCALES_TEXT)
    (tmp_path / "records" / "docs.rec").write_text(DOCS_RECORDS_TEXT)
    (tmp_path / "records" / "docs.graph").write_text(DOCS_GRAPH_TEXT)
    return tmp_path
