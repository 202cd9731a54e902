import xml.etree.ElementTree as ET

import numpy as np
import pytest

from volterra_spectra.svg import loglog_scatter

NS = "{http://www.w3.org/2000/svg}"


def _doc():
    n = np.arange(1, 2001)
    return loglog_scatter(
        [("A <C o J>", n, n**-2.0), ("J & co", n, 0.6 / n), ("with zero", [1, 2, 3], [0.0, 1e-3, 1e-4])],
        title="spectra", ylabel="sigma_n",
    )


def test_valid_xml_and_size():
    text = _doc()
    root = ET.fromstring(text.encode())
    assert root.tag == f"{NS}svg"
    assert len(text.encode()) < 2 * 1024 * 1024


def test_self_contained():
    text = _doc()
    root = ET.fromstring(text.encode())
    for el in root.iter():
        for key, value in el.attrib.items():
            assert "href" not in key
            assert "url(" not in value
    assert "<image" not in text and "<script" not in text


def test_marker_counts():
    root = ET.fromstring(_doc().encode())
    groups = [g for g in root.iter(f"{NS}g") if g.get("id", "").startswith("series-")]
    counts = [len(list(g)) for g in groups]
    # the zero value cannot sit on a log axis
    assert counts == [2000, 2000, 2]


def test_labels_escaped():
    text = _doc()
    assert "A &lt;C o J&gt;" in text and "J &amp; co" in text


def test_nothing_to_plot():
    with pytest.raises(ValueError):
        loglog_scatter([("empty", [1, 2], [0.0, -1.0])])


def test_single_decade_data():
    root = ET.fromstring(loglog_scatter([("flat", [2, 3], [5.0, 5.0])]).encode())
    assert root.tag == f"{NS}svg"
