import xml.etree.ElementTree as ET

import pytest

from elotune.svg import histogram_bins, histogram_svg, line_chart_svg


def comment_of(doc: str) -> str:
    start = doc.index("<!--")
    return doc[start + 4 : doc.index("-->", start)].strip()


def test_histogram_is_well_formed():
    doc = histogram_svg([990, 1010, 1012, 1200, 875.5], 25, "ratings", provenance="elotune report --out-dir x")
    root = ET.fromstring(doc.encode())
    assert root.tag.endswith("svg")
    assert comment_of(doc) == "generated by: elotune report - -out-dir x"


def test_line_chart_is_well_formed():
    doc = line_chart_svg({"a<b": [1000, 1030, 1012], "c&d": [1000, 970]}, "progress", provenance="cmd")
    ET.fromstring(doc.encode())
    assert "a&lt;b" in doc and "c&amp;d" in doc


def test_histogram_bins():
    bins = histogram_bins([0, 24.9, 25, 49, 100], 25)
    assert bins == [(0.0, 2), (25.0, 2), (50.0, 0), (75.0, 0), (100.0, 1)]
    assert sum(c for _, c in bins) == 5


def test_single_value_and_constant_series():
    ET.fromstring(histogram_svg([1000.0], 25, "one", provenance="p").encode())
    ET.fromstring(line_chart_svg({"flat": [1000.0, 1000.0]}, "flat", provenance="p").encode())


def test_bad_bin_width():
    with pytest.raises(ValueError):
        histogram_bins([1.0], 0)
