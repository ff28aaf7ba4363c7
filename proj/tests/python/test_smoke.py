import json
import os

import pytest

import abeltoric

FANS = os.environ.get("ABELTORIC_FANS", os.path.join(os.path.dirname(__file__), "..", "..", "data", "fans"))


def test_builtin_catalog_listed():
    labels = abeltoric.builtin_labels()
    assert "L12" in labels and "G1" in labels and "P4" in labels


def test_l12_fan_and_intersections():
    fan = abeltoric.load_fan("builtin:L12")
    assert fan.size == 8
    assert abeltoric.validate(fan)["smooth"]
    assert abeltoric.primitive_collections(fan) == [[0, 7], [1, 2], [3, 4], [5, 6]]
    assert abeltoric.intersection_number(fan, [2, 4, 4, 7]) == 1
    assert abeltoric.intersection_number(fan, [2, 4, 4, 6]) == 0
    rel = abeltoric.basis_relations(fan, [0, 1, 3, 5])
    assert rel[0] == [1, 0, 1, 0, -1, 0, 0, -1]


def test_certify_modes_and_replay():
    fin = abeltoric.certify("builtin:L12", "finite")
    emb = abeltoric.certify("builtin:L12", "embedding")
    assert fin["status"] == "Inconclusive"
    assert emb["summary"] == "NoEmbedding (ChowClassStage)"
    cert = json.loads(emb["certificate"])
    assert cert["chow"]["vanishing_coordinates"] == [2, 4, 5]
    assert abeltoric.replay(emb["certificate"])["ok"]


def test_certify_from_file():
    out = abeltoric.certify(os.path.join(FANS, "G1.json"))
    assert out["summary"] == "NoFiniteMorphism (FullGraphConnected)"


def test_errors_are_translated():
    with pytest.raises(abeltoric.AbeltoricError, match="NotACone"):
        abeltoric.star_subdivision(abeltoric.load_fan("builtin:L12"), 0, 7)
    with pytest.raises(ValueError):
        abeltoric.certify("builtin:P4", "sideways")


def test_classify_csv():
    csv = abeltoric.classify_csv(["builtin:P4", "builtin:G1"], jobs=2)
    lines = csv.strip().splitlines()
    assert lines[0] == "type,rays,mode,verdict,rule,source"
    assert lines[1] == "G1,7,finite,NoFiniteMorphism,FullGraphConnected,own"
    assert lines[-1] == "P4,5,embedding,Inconclusive,None,none"
