import io

import pytest

from nl2vis.datasets import load_dataset
from nl2vis.errors import FormatError, IoError


def test_csv_basic(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b\n1,x\n2,y\n3,z\n")
    ds = load_dataset(path)
    assert ds.columns == ("a", "b")
    assert ds.row_count == 3
    assert ds.rows[0] == {"a": "1", "b": "x"}
    assert ds.source_format == "csv"
    assert ds.name == "t"


def test_movies_fixture_columns(data_dir):
    ds = load_dataset(data_dir / "movies.csv")
    for column in ("Worldwide Gross", "Genre", "Release Year"):
        assert column in ds.columns


def test_empty_cells_preserved(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b\n1,\n,y\n")
    ds = load_dataset(path)
    assert ds.rows[0]["b"] == ""
    assert ds.rows[1]["a"] == ""


def test_quoted_fields(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text('a,b\n"x, y",2\n"say ""hi""",3\n')
    ds = load_dataset(path)
    assert ds.rows[0]["a"] == "x, y"
    assert ds.rows[1]["a"] == 'say "hi"'


def test_ragged_row_names_line(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b\n1,2\n1,2,3\n")
    with pytest.raises(FormatError, match="line 3"):
        load_dataset(path)


def test_duplicate_columns(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a, a\n1,2\n")
    with pytest.raises(FormatError, match="duplicate"):
        load_dataset(path)


def test_tsv(tmp_path):
    path = tmp_path / "t.tsv"
    path.write_text("a\tb\n1\tx\n")
    ds = load_dataset(path)
    assert ds.source_format == "tsv"
    assert ds.rows[0] == {"a": "1", "b": "x"}


def test_json_records(tmp_path):
    path = tmp_path / "t.json"
    path.write_text('[{"a": 1, "b": "x"}, {"a": 2, "b": "y"}]')
    ds = load_dataset(path)
    assert ds.columns == ("a", "b")
    assert ds.rows[1]["a"] == 2


def test_json_differing_keys(tmp_path):
    path = tmp_path / "t.json"
    path.write_text('[{"a": 1}, {"b": 2}]')
    with pytest.raises(FormatError, match="keys"):
        load_dataset(path)


def test_json_nested_rejected(tmp_path):
    path = tmp_path / "t.json"
    path.write_text('[{"a": {"nested": 1}}]')
    with pytest.raises(FormatError, match="flat"):
        load_dataset(path)


def test_unreadable_source():
    with pytest.raises(IoError):
        load_dataset("/no/such/file.csv")


def test_stream_input():
    ds = load_dataset(io.StringIO("a,b\n1,2\n"), format="csv", name="streamed")
    assert ds.name == "streamed"
    assert ds.row_count == 1


def test_bytes_stream():
    ds = load_dataset(io.BytesIO(b"a,b\n1,2\n"), format="csv")
    assert ds.rows[0]["b"] == "2"


def test_unknown_format(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a\n1\n")
    with pytest.raises(FormatError):
        load_dataset(path, format="parquet")
