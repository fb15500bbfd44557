import os

DEFAULT_CONFIG = {
    # On-disk caches (norm enumerations, class sets, witness tables); None disables them
    "cache_dir": os.getenv("QUATFORMS_CACHE_DIR"),
    "log_level": os.getenv("QUATFORMS_LOG_LEVEL", "INFO"),
    "max_workers": int(os.getenv("QUATFORMS_MAX_WORKERS", "4")),
    # Level defaults
    "gamma_style": "unit-column",
    # Precision settings
    "precision": 20,
    "truncation": 20,
    "reliable_cap_offset": 2,
    "lift_recheck_extra": 3,
    # Power iteration
    "iterations": None,  # None means "same as precision"
    "seeds": [1, 2],
    "rank_retries": 3,
    # Hecke convention profile, frozen after calibration against the weight-5 T3 polynomial
    "convention": {"transpose_action": False},
}
