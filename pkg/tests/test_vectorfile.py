import io

import numpy as np
import pytest

from signseq.norms import PolygonError
from signseq.vectorfile import (
    VectorFileError,
    dumps_vectors,
    format_number,
    loads_vectors,
    read_polygon_file,
    read_vectors,
    write_vectors,
)


def test_format_number():
    assert format_number(1.0) == "1.0"
    assert format_number(0.1) == "0.10000000000000001"
    assert float(format_number(1e-300)) == 1e-300


def test_round_trip_is_exact():
    rng = np.random.default_rng(0)
    vs = [tuple(v) for v in rng.normal(size=(200, 3)).tolist()]
    text = dumps_vectors(vs, "header line\nsecond")
    assert text.startswith("# header line\n# second\n")
    assert loads_vectors(text) == vs
    assert dumps_vectors(loads_vectors(text), "header line\nsecond") == text


def test_comments_blanks_and_ints():
    assert loads_vectors("# c\n\n[1, 2]\n  [0.5, -0.5]  \n") == [(1.0, 2.0), (0.5, -0.5)]
    assert loads_vectors("") == []
    assert dumps_vectors([]) == ""


@pytest.mark.parametrize(
    "text, message",
    [
        ("[1, 2]\n[1, 2, 3]\n", "dimension"),
        ("[1, 2\n", "line 1"),
        ("[]\n", "non-empty"),
        ('["a", 1]\n', "numbers"),
        ("[true, 1]\n", "numbers"),
        ("[NaN, 1]\n", "non-finite"),
        ("{}\n", "array"),
    ],
)
def test_bad_vector_files(text, message):
    with pytest.raises(VectorFileError, match=message):
        loads_vectors(text)


def test_read_write_paths(tmp_path):
    p = tmp_path / "v.txt"
    write_vectors([(0.25, 1.0)], p, "h")
    vs, raw = read_vectors(p)
    assert vs == [(0.25, 1.0)] and raw == "# h\n[0.25, 1.0]\n"
    buf = io.StringIO()
    write_vectors([(1, 2)], buf)
    assert buf.getvalue() == "[1.0, 2.0]\n"
    with pytest.raises(VectorFileError, match="cannot read"):
        read_vectors(tmp_path / "missing")


def test_polygon_file(tmp_path):
    p = tmp_path / "poly.json"
    p.write_text("[[1, 0], [0, 1], [-1, 0], [0, -1]]")
    assert read_polygon_file(p) == [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
    p.write_text("[[1, 0, 2]]")
    with pytest.raises(PolygonError):
        read_polygon_file(p)
    p.write_text("nope")
    with pytest.raises(PolygonError, match="JSON"):
        read_polygon_file(p)
