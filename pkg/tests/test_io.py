import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crtorsion.io import (
    DocumentError,
    document_from_data,
    dumps,
    format_float,
    parse_document,
    parse_rational,
)
from crtorsion.seifert import random_data

from conftest import twisted


def test_parse_rational():
    assert parse_rational("3/7", "f") == F(3, 7)
    assert parse_rational("0", "f") == 0
    for bad in ("1/0", "2/4", "a/b", "1/2/3", 0.5, None):
        with pytest.raises(DocumentError):
            parse_rational(bad, "f")


def test_field_named_in_error():
    doc = document_from_data(twisted())
    doc["holonomy"][1]["fiber_spectra"][0][1] = "4/x"
    with pytest.raises(DocumentError) as info:
        parse_document(doc)
    assert info.value.field == "holonomy[1].fiber_spectra[0][1]"
    with pytest.raises(DocumentError) as info:
        parse_document({"holonomy": []})
    assert info.value.field == "seifert"


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_document_round_trip(seed):
    hd = random_data(seed)
    again, _ = parse_document(json.loads(dumps(document_from_data(hd))))
    assert again == hd


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_text_round_trips(x):
    assert float(format_float(x)) == x


def test_seventeen_digits():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(4.0) == "4.0"
    assert format_float(float("inf")) == "Infinity"
