"""
Unit tests for `qnahm.utils.config`.
"""

from pathlib import Path

import pytest

from qnahm.utils.config import load_yaml, save_yaml


def test__save_yaml__load_yaml(tmp_path: Path) -> None:
    """
    Test both `save_yaml()` and `load_yaml()`.
    """

    # Case 1: We can't load a file that doesn't exist
    with pytest.raises(FileNotFoundError) as file_not_found_error:
        load_yaml(tmp_path / "missing.yaml")
    assert "missing.yaml does not exist!" in str(file_not_found_error)

    # Case 2: We can save data and load it again (key order is kept)
    data = {"id": "eq3-2", "B": ["1/2", "1/2"], "L": [[2, 0], [0, 2]]}
    save_yaml(data, tmp_path / "test.yaml")
    loaded = load_yaml(tmp_path / "test.yaml")
    assert loaded == data
    assert list(loaded.keys()) == ["id", "B", "L"]

    # Case 3: An empty file gives None
    (tmp_path / "empty.yaml").write_text("")
    assert load_yaml(tmp_path / "empty.yaml") is None

    # Case 4: JSON is a subset of YAML
    (tmp_path / "test.json").write_text('{"a": [1, 2], "b": "-1/60"}')
    assert load_yaml(tmp_path / "test.json") == {"a": [1, 2], "b": "-1/60"}
