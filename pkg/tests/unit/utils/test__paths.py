"""
Unit tests for `qnahm.utils.paths`.
"""

from pathlib import Path

import pytest

from qnahm.utils.paths import (
    expand_env_variables_in_path,
    get_default_catalog_path,
    get_package_data_dir,
    get_path_from_environment_variable,
)


def test__get_path_from_environment_variable(
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """
    Test `qnahm.utils.paths.get_path_from_environment_variable()`.
    """

    # Case 1: Environment variable is not set
    with monkeypatch.context() as context:
        context.delenv("DUMMY_ENV_VAR", raising=False)
        with pytest.raises(ValueError) as value_error:
            get_path_from_environment_variable("DUMMY_ENV_VAR")
        assert "$DUMMY_ENV_VAR is not set!" in str(value_error)

    # Case 2: Environment variable is set, but path does not exist
    with monkeypatch.context() as context:
        context.setenv("DUMMY_ENV_VAR", str(tmp_path / "does_not_exist"))
        with pytest.raises(ValueError) as value_error:
            get_path_from_environment_variable("DUMMY_ENV_VAR")
        assert "$DUMMY_ENV_VAR is set, but" in str(value_error)

    # Case 3: Environment variable is set and path exists
    with monkeypatch.context() as context:
        context.setenv("DUMMY_ENV_VAR", str(tmp_path))
        assert get_path_from_environment_variable("DUMMY_ENV_VAR") == tmp_path


def test__get_default_catalog_path(
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """
    Test `qnahm.utils.paths.get_default_catalog_path()`.
    """

    # Case 1: Shipped catalog
    monkeypatch.delenv("QNAHM_CATALOG", raising=False)
    path = get_default_catalog_path()
    assert path == get_package_data_dir() / "identities.yaml"
    assert path.exists()

    # Case 2: Catalog from the environment
    custom = tmp_path / "custom.yaml"
    custom.write_text("[]")
    monkeypatch.setenv("QNAHM_CATALOG", str(custom))
    assert get_default_catalog_path() == custom


def test__expand_env_variables_in_path() -> None:
    """
    Test `qnahm.utils.paths.expand_env_variables_in_path()`.
    """

    path = Path("$HOME")
    assert expand_env_variables_in_path(path).as_posix() == str(Path.home())
