import json

import pytest

from curvmoduli import GeometryError, admissible, canonical_name, classify, table_json


def test_table_cells():
    assert classify(2, 1) == frozenset({"cylinder", "mobius"})
    assert classify(2, 2) == frozenset({"torus", "klein"})
    assert classify(2, 0) == frozenset({"sphere", "rp2", "disc"})
    assert classify(1, 1) == frozenset({"circle"})
    assert classify(1, 0) == frozenset({"interval"})
    assert classify(0, 0) == frozenset({"point"})


def test_table_covers_exactly_ten_structures():
    table = json.loads(table_json())
    names = [n for cell in table.values() for n in cell]
    assert len(names) == 10
    assert len(set(names)) == 10


def test_out_of_table_queries_are_rejected():
    with pytest.raises(GeometryError):
        classify(3, 0)
    with pytest.raises(GeometryError):
        classify(2, 3)


def test_canonical_name_aliases():
    assert canonical_name("Moebius band") == "mobius"
    assert canonical_name("MOBIUS STRIP") == "mobius"
    assert canonical_name("projective plane") == "rp2"
    assert canonical_name("RP^2") == "rp2"
    assert canonical_name("torus") == "torus"
    assert canonical_name("banana") is None


def test_admissible():
    assert admissible("circle")
    assert admissible("Klein bottle")
    assert not admissible("pretzel")
