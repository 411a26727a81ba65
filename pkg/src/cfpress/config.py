"""Layered settings: command-line flags over env vars over a TOML file."""

from __future__ import annotations

import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from cfpress.errors import ConfigError

# key -> accepted types; floats also accept ints from the TOML parser
KNOWN_KEYS = {
    "endpoint": (str,),
    "cache_dir": (str,),
    "model": (str,),
    "strategy": (str,),
    "temperature": (float, int),
    "temperatures": (list,),
    "max_tokens": (int,),
    "max_in_flight": (int,),
    "retry_attempts": (int,),
    "retry_backoff": (float, int),
    "stage_split": (str,),
    "overlap_bins": (int,),
    "vocab_filter": (str,),
    "top_k": (int,),
}

ENV_KEYS = {"CFP_ENDPOINT": "endpoint", "CFP_CACHE_DIR": "cache_dir"}


def read_config(path) -> dict:
    """Parse a TOML settings file, rejecting unknown keys and wrong types."""
    try:
        with open(path, "rb") as handle:
            raw = tomllib.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}")
    for key, value in raw.items():
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown config key: {key}")
        if not isinstance(value, KNOWN_KEYS[key]):
            raise ConfigError(
                f"config key {key} expects {KNOWN_KEYS[key][0].__name__}, "
                f"got {type(value).__name__}")
        if key == "temperatures" and not all(
                isinstance(v, (int, float)) for v in value):
            raise ConfigError("config key temperatures must list numbers")
    return raw


def env_overrides(environ=None) -> dict:
    """Settings taken from the two supported environment variables."""
    if environ is None:
        environ = os.environ
    return {key: environ[name] for name, key in ENV_KEYS.items()
            if environ.get(name)}


def resolve(flags: dict, config_path=None, environ=None) -> dict:
    """Flags (non-None values) win over env vars, which win over the file."""
    settings = {}
    if config_path is not None:
        settings.update(read_config(config_path))
    settings.update(env_overrides(environ))
    settings.update({k: v for k, v in flags.items() if v is not None})
    return settings
