import json
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from . import console
from .constants import CONFIG_BASENAME, DEFAULT_CONFIG, GLOBAL_CONFIG_DIR
from .models import ProjectConfig


def load_config(repo_path: Union[str, Path]) -> Dict[str, Any]:
    """Load project configuration from .leavittsym.json or .leavittsym.yaml/.yml."""
    for ext in [".json", ".yaml", ".yml"]:
        config_path = Path(repo_path) / f"{CONFIG_BASENAME}{ext}"
        if config_path.exists():
            try:
                with open(config_path, "r") as f:
                    if ext == ".json":
                        config = json.load(f)
                    else:
                        config = yaml.safe_load(f)

                    if isinstance(config, dict):
                        validated_config = ProjectConfig(**config)
                        return validated_config.model_dump(exclude_unset=True)
                    return {}
            except Exception as e:
                console.warn(f"Warning: Could not parse project config: {e}")
    return {}


def get_global_config() -> Dict[str, Any]:
    """Fetch global configuration from ~/.leavittsym/config.yaml."""
    config: Dict[str, Any] = {}
    global_config_path = Path.home() / GLOBAL_CONFIG_DIR / "config.yaml"
    if global_config_path.exists():
        try:
            with open(global_config_path, "r") as f:
                data = yaml.safe_load(f)
                if data and isinstance(data, dict):
                    config.update(ProjectConfig(**data).model_dump(exclude_unset=True))
        except Exception as e:
            console.warn(f"Warning: Could not parse global config: {e}")
    return config


def init_project(repo_path: Union[str, Path]) -> bool:
    """Create a default .leavittsym.yaml in the given directory."""
    config_path = Path(repo_path) / f"{CONFIG_BASENAME}.yaml"
    if config_path.exists():
        console.warn(f"Configuration file already exists at {config_path}")
        return False

    default_config = f"""# leavitt-sym project configuration
# factorial_budget: {DEFAULT_CONFIG["factorial_budget"]}      # max edges for brute-force permutation checks
# enumeration_guard: {DEFAULT_CONFIG["enumeration_guard"]}     # max vmax / emax for graph enumeration
# prop31_guard: {DEFAULT_CONFIG["prop31_guard"]}          # max n for simple digraph enumeration
# automorphism_guard: {DEFAULT_CONFIG["automorphism_guard"]}
# dedup: true             # brute-force one graph per isomorphism class
# workers: 1
# format: json
# quiet: false
# log_runs: false
"""
    try:
        with open(config_path, "w") as f:
            f.write(default_config)
        console.info(f"Created default configuration at {config_path}")
        return True
    except Exception as e:
        console.warn(f"Failed to create configuration: {e}")
        return False
