"""
Methods for loading and saving YAML files (catalogs, search grids).
"""

from pathlib import Path
from typing import Any

import yaml


def load_yaml(file_path: Path) -> Any:
    """
    Load a YAML (or JSON, which is a subset of YAML) file.

    Args:
        file_path: Path to the file.

    Returns:
        The parsed content (None for an empty file).
    """

    if not file_path.exists():
        raise FileNotFoundError(f"{file_path} does not exist!")

    with open(file_path) as yaml_file:
        return yaml.safe_load(yaml_file)


def save_yaml(data: Any, file_path: Path) -> None:
    """
    Save data to a YAML file (keeping the order of dictionary keys).

    Args:
        data: Data to save (plain dicts, lists, strings and numbers).
        file_path: Target path.
    """

    with open(file_path, "w") as yaml_file:
        yaml.dump(
            data,
            yaml_file,
            default_flow_style=False,
            sort_keys=False,
        )
