import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import quatforms.default_config as default_config
from quatforms.errors import ConfigValidationError

logger = logging.getLogger(__name__)

# Process-wide configuration, seeded from DEFAULT_CONFIG
_config: Optional[Dict] = None


def initialize_config():
    """Initialize the configuration with default values."""
    global _config
    if _config is None:
        _config = default_config.DEFAULT_CONFIG.copy()


def set_config(config: Dict):
    """Merge custom values into the active configuration."""
    global _config
    if _config is None:
        _config = default_config.DEFAULT_CONFIG.copy()
    _config.update(config)


def get_config() -> Dict:
    """Get a copy of the active configuration."""
    if _config is None:
        initialize_config()
    return _config.copy()


def reset_config():
    """Drop every override."""
    global _config
    _config = None
    initialize_config()


def _parse_value(raw: str) -> Any:
    raw = raw.strip()
    if raw.lower() in ("none", "null", ""):
        return None
    if raw.lower() in ("true", "false"):
        return raw.lower() == "true"
    if "," in raw:
        return [_parse_value(part) for part in raw.split(",") if part.strip()]
    try:
        return int(raw)
    except ValueError:
        return raw


def parse_config_text(text: str) -> Dict[str, Any]:
    """
    Parse ``key = value`` lines.

    Blank lines and ``#`` comments are skipped, integers and booleans are
    converted, and comma separated values become lists. Dashes in keys are
    normalised to underscores so flag spellings (``gamma-style``) work too.

    Raises:
        ConfigValidationError: on a line without ``=``.
    """
    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigValidationError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, raw = line.split("=", 1)
        values[key.strip().replace("-", "_")] = _parse_value(raw)
    return values


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a key = value file and return its entries."""
    path = Path(path)
    if not path.exists():
        raise ConfigValidationError(f"config file not found: {path}")
    values = parse_config_text(path.read_text(encoding="utf-8"))
    logger.debug("loaded %d config entries from %s", len(values), path)
    return values


# Initialize with default config
initialize_config()
