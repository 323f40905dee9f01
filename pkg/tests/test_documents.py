import json
import random

import pytest

from normlab import corpus
from normlab.documents import (
    DocumentError,
    family_from_doc,
    family_to_doc,
    points_from_doc,
    representation_to_doc,
    vector_from_doc,
    vector_to_doc,
)
from normlab.representation import extract_representation
from normlab.spaces import ComponentSpec, SpaceFamily
from normlab.vectors import dense
from fractions import Fraction as F


@pytest.mark.parametrize("family", corpus.FAMILIES)
def test_family_round_trip(family):
    assert family_from_doc(json.loads(json.dumps(family_to_doc(family)))) == family


def test_vector_round_trip_over_corpus():
    rng = random.Random(5)
    for _ in range(300):
        x = corpus.random_vector(rng, max_support=8)
        doc = json.loads(json.dumps(vector_to_doc(x)))
        assert vector_from_doc(doc) == x


def test_vector_document_shape():
    doc = vector_to_doc(dense([F(2, 4), 1]))
    assert doc == {
        "family": {"rule": "constant", "space": {"kind": "scalar-line"}},
        "blocks": [{"n": 1, "coords": ["1/2"]}, {"n": 2, "coords": ["1"]}],
        "backend": "rational",
    }


def test_representation_document():
    doc = representation_to_doc(extract_representation(dense([F(1, 2), 1]), "tail"))
    assert doc["norm"] == "7/6"
    assert doc["d"] == ["2/3", "5/6", "3/4"]
    assert doc["branches"] == [{"n": 2, "rel": "tie", "resolved": "tail"}]
    assert doc["k"] == 3


@pytest.mark.parametrize(
    "doc, where",
    [
        ({"blocks": [{"n": 1, "coords": ["a"]}]}, "vector.blocks[0].coords[0]"),
        ({"blocks": [{"n": "1", "coords": ["1"]}]}, "vector.blocks[0].n"),
        ({"blocks": [{"coords": ["1"]}]}, "vector.blocks[0]"),
        ({"blocks": {}}, "vector.blocks"),
        ({"family": {"rule": "bogus"}, "blocks": []}, "vector.family.rule"),
        ({"blocks": [{"n": 1, "coords": ["1", "2"]}]}, "vector"),
    ],
)
def test_errors_carry_location(doc, where):
    with pytest.raises(DocumentError) as info:
        vector_from_doc(doc)
    assert info.value.path == where


def test_points_document():
    fam = SpaceFamily.constant(ComponentSpec.sup(2))
    doc = {
        "family": family_to_doc(fam),
        "points": [{"blocks": [{"n": 1, "coords": ["1", "0"]}]}],
        "limit": {"blocks": []},
    }
    points, limit = points_from_doc(doc)
    assert points[0].family == fam and limit.is_zero()
