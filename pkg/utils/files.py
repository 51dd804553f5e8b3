import dataclasses
import os
from enum import Enum

import numpy as np
import yaml

from core.errors import OutputError
from core.model import ARTIFACT_VERSION


def to_plain(value):
    """Turn dataclasses, enums and numpy values into builtins that yaml and json can write."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return to_plain(dataclasses.asdict(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


def save_run_config(document: dict, metadata: dict, directory: str, filename: str) -> str:
    """
    Write the run's config next to its outputs. The file is itself a valid config: the metadata
    block (artifact version, defaulted keys, flags, derived numbers) is skipped on parsing.
    """
    content = dict(to_plain(document))
    content["metadata"] = {"artifact_version": ARTIFACT_VERSION, **to_plain(metadata)}
    path = os.path.join(directory, f"{filename}.config.yaml")
    try:
        os.makedirs(directory, exist_ok=True)
        with open(path, "w") as config_file:
            yaml.safe_dump(content, config_file, sort_keys=False, default_flow_style=False)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror}")
    return path
