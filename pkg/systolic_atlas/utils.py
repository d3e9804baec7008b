import copy
import json
import os
import shutil
import sys
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
import yaml
from sklearn.model_selection import ParameterGrid

CACHE_ENV_VAR = "SYSTOLIC_ATLAS_CACHE"
DEFAULT_SETTINGS_FILE = os.path.join(os.path.dirname(__file__), "settings.yaml")


def load_settings(settings_file: Optional[str] = None) -> Dict[str, Any]:
    """
    Loads the packaged defaults and overlays a user settings file on top of them.
    :param settings_file: optional yaml file; its sections replace the matching keys of the defaults
    :return: nested settings dictionary
    """
    with open(DEFAULT_SETTINGS_FILE) as f:
        settings = yaml.load(f, Loader=yaml.FullLoader)
    if settings_file is not None:
        with open(settings_file) as f:
            user_settings = yaml.load(f, Loader=yaml.FullLoader) or {}
        settings = _merge(settings, user_settings)
    return settings


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def get_parameter_grid(
    sweep_name: str, settings: Optional[Dict[str, Any]] = None
) -> List[Dict[str, Any]]:
    """
    Expands a sweep section of the settings into the list of all parameter combinations.
    :param sweep_name: key below "sweeps", e.g. "bers" or "sparsity"
    :param settings: settings dictionary, defaults to the packaged settings
    :return: list of parameter dictionaries
    """
    if settings is None:
        settings = load_settings()
    sweeps = settings.get("sweeps", {})
    assert (
        sweep_name in sweeps
    ), f"Unknown sweep {sweep_name}. Available sweeps are {list(sweeps.keys())}"
    grid = sweeps[sweep_name]
    if grid is None:
        return [{}]
    return list(ParameterGrid(grid))


def resolve_cache_dir(cache_dir: Optional[str] = None) -> str:
    """
    Resolves the census cache directory: explicit argument, then the environment variable, then ~/.cache.
    """
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV_VAR)
    if cache_dir is None:
        cache_dir = os.path.join(os.path.expanduser("~"), ".cache", "systolic_atlas")
    os.makedirs(cache_dir, exist_ok=True)
    return cache_dir


def handle_overwrite(path: str, overwrite: bool) -> None:
    """Handle overwrite logic for a given path."""
    if os.path.exists(path) and overwrite:
        shutil.rmtree(path)
    os.makedirs(path, exist_ok=True)


def log(message: str, verbose: bool = True) -> None:
    # stdout carries data, progress goes to stderr
    if verbose:
        print(message, file=sys.stderr)


def to_jsonable(obj: Any) -> Any:
    """
    Converts numpy scalars, tuples and nested containers into plain JSON types.
    """
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    return obj


def dumps_json(payload: Any) -> str:
    # floats are written with their shortest round-trip representation
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n"


def write_output(
    payload: Any,
    out: Optional[str] = None,
    output_format: str = "json",
    table: Optional[pd.DataFrame] = None,
) -> str:
    """
    Writes a result either as JSON or, when a table is given and csv is requested, as CSV.
    :param payload: JSON-serializable result
    :param out: output file, stdout if None
    :param output_format: "json" or "csv"
    :param table: tabular view of the payload used for csv output
    :return: the written text
    """
    assert output_format in [
        "json",
        "csv",
    ], f"Invalid output format {output_format}. Choose json or csv."
    if output_format == "csv":
        if table is None:
            table = pd.json_normalize(to_jsonable(payload))
        text = table.to_csv(index=False, lineterminator="\n")
    else:
        text = dumps_json(payload)
    if out is None:
        sys.stdout.write(text)
    else:
        directory = os.path.dirname(os.path.abspath(out))
        os.makedirs(directory, exist_ok=True)
        with open(out, "w", newline="\n") as f:
            f.write(text)
    return text


def default_threads() -> int:
    return os.cpu_count() or 1


def parallel_map(
    func: Callable, items: Iterable, threads: int = 1, verbose: bool = False
) -> List[Any]:
    """
    Maps func over items, fanning out to ray workers when more than one thread is requested.
    The result list is in input order, so callers stay deterministic regardless of threads.
    :param func: picklable function of one argument
    :param items: inputs
    :param threads: number of workers; 1 runs in-process
    :param verbose: print progress
    :return: list of results
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    import ray

    log(f"Distributing {len(items)} tasks over {threads} ray workers ...", verbose)
    ray.init(
        num_cpus=threads,
        ignore_reinit_error=True,
        include_dashboard=False,
        _temp_dir=os.path.join(os.path.expanduser("~"), "raytmp"),
    )
    remote_func = ray.remote(func)
    return ray.get([remote_func.remote(item) for item in items])


def chunk(items: List[Any], n_chunks: int) -> List[List[Any]]:
    """
    Splits items into at most n_chunks contiguous chunks.
    """
    n_chunks = max(1, min(n_chunks, len(items)))
    return [list(part) for part in np.array_split(np.array(items, dtype=object), n_chunks)]
