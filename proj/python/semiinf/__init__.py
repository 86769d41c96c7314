"""Python access to the semiinf workbench commands."""
import json

from ._semiinf import ConfigError, ValidationError, code_version, schema_version
from ._semiinf import config_hash as _config_hash
from ._semiinf import run as _run

__all__ = ["run", "basis", "verify", "config_hash", "ConfigError", "ValidationError", "schema_version", "code_version"]


def run(config, command, *, suite="all", h_max=None, jobs=1, emit_witnesses=False, hl_degree=-1, cache_dir=""):
    """Run a command and return (exit_code, report dict)."""
    code, text = _run(str(config), command, suite, h_max or "", jobs, emit_witnesses, hl_degree, str(cache_dir))
    return code, json.loads(text)


def basis(config, h_max=None):
    return run(config, "basis", h_max=h_max)[1]["blocks"]


def verify(config, suite="all", h_max=None, jobs=1):
    return run(config, "verify", suite=suite, h_max=h_max, jobs=jobs)


def config_hash(config, h_max=None):
    return _config_hash(str(config), h_max or "")
