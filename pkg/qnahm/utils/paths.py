"""
Handle paths (e.g., to the shipped identity catalog).
"""

import os
from pathlib import Path

import qnahm


def get_path_from_environment_variable(name: str) -> Path:
    """
    Resolve a path from an environment variable.
    """

    if (value := os.getenv(name, None)) is None:
        raise ValueError(f"${name} is not set!")

    if not Path(value).exists():
        raise ValueError(f"${name} is set, but `{value}` does not exist!")

    return Path(value)


def get_package_data_dir() -> Path:
    """
    Return the path to the data files that ship with the package.
    """

    return Path(qnahm.__file__).parent / "catalog" / "data"


def get_default_catalog_path() -> Path:
    """
    Return the catalog file to use if none is given explicitly: the
    value of $QNAHM_CATALOG if it is set, otherwise the shipped catalog.
    """

    if os.getenv("QNAHM_CATALOG", None) is not None:
        return get_path_from_environment_variable("QNAHM_CATALOG")
    return get_package_data_dir() / "identities.yaml"


def expand_env_variables_in_path(path: Path) -> Path:
    """
    Expand environment variables in a given path.
    """

    return Path(os.path.expandvars(path))
