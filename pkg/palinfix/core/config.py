# palinfix/core/config.py
import configparser
import logging
import os
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

# Define constants
APP_NAME = "palinfix"  # Used for config dir name
CONFIG_DIR_ENV = "PALINFIX_CONFIG_DIR"
THREADS_ENV = "PALINFIX_THREADS"
CONFIG_FILENAME = "config.ini"

# Default settings
DEFAULT_SETTINGS = {
    "Delta": {
        "burn_in": "64",  # steps past the table before ratios are trusted
        "window": "256",  # number of ratios in the supremum window
        "tolerance": "1e-6",
        "word_burn_in": "4",  # burn-in for delta measured on raw words
        "infinity_gap": "8",  # horizon / last prefix above this means delta = inf
    },
    "Verify": {
        "seed": "0",
        "cases": "200",
    },
    "Run": {
        "threads": "0",  # 0 = os.cpu_count()
        "log_level": "INFO",
    },
}


def get_config_dir() -> Path:
    """Returns the configuration directory, honouring PALINFIX_CONFIG_DIR."""
    override = os.environ.get(CONFIG_DIR_ENV)
    if override:
        return Path(override).expanduser()
    return Path.home() / ".config" / APP_NAME


def get_config_file() -> Path:
    return get_config_dir() / CONFIG_FILENAME


def ensure_config_dir_exists() -> bool:
    """Ensures only the configuration directory exists."""
    config_dir = get_config_dir()
    try:
        config_dir.mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Error creating config directory {config_dir}: {e}")
        return False


def create_default_config_if_missing() -> bool:
    """Creates the default config file ONLY if it doesn't exist."""
    if not ensure_config_dir_exists():
        return False

    config_file = get_config_file()
    if not config_file.is_file():
        logger.info(f"Config file not found. Creating default config at {config_file}")
        try:
            config = configparser.ConfigParser()
            config.read_dict(DEFAULT_SETTINGS)
            with open(config_file, "w") as configfile:
                config.write(configfile)
            return True
        except (OSError, configparser.Error) as e:
            logger.error(f"Error writing initial default config file {config_file}: {e}")
            return False
    return True


def load_config() -> configparser.ConfigParser:
    """Loads the configuration, creates defaults if missing, and ensures all keys exist."""
    config = configparser.ConfigParser()

    if not create_default_config_if_missing():
        logger.warning("Failed to create or access config file. Using in-memory defaults.")
        config.read_dict(DEFAULT_SETTINGS)
        return config

    config_file = get_config_file()
    try:
        if not config.read(config_file):
            logger.warning(
                f"Config file {config_file} reported as existing but couldn't be read. Using defaults."
            )
            config.read_dict(DEFAULT_SETTINGS)
    except configparser.Error as e:
        logger.error(f"Error reading config file {config_file}: {e}. Using defaults.")
        config = configparser.ConfigParser()
        config.read_dict(DEFAULT_SETTINGS)

    # --- Check for and add missing keys/sections ---
    needs_save = False
    for section, defaults in DEFAULT_SETTINGS.items():
        if not config.has_section(section):
            config.add_section(section)
            logger.info(f"Added missing section [{section}] to config.")
            needs_save = True
        for key, value in defaults.items():
            if not config.has_option(section, key):
                config.set(section, key, value)
                logger.info(f"Added missing key '{key}' to section [{section}] in config.")
                needs_save = True

    if needs_save:
        save_config(config)

    return config


def save_config(config: configparser.ConfigParser) -> bool:
    """Saves the configuration object to the INI file."""
    if not ensure_config_dir_exists():
        logger.error("Cannot save config, directory creation/access failed.")
        return False
    config_file = get_config_file()
    try:
        with open(config_file, "w") as configfile:
            config.write(configfile)
        return True
    except (OSError, configparser.Error) as e:
        logger.error(f"Error writing config file {config_file}: {e}")
        return False


# --- Helper Functions ---
def get_setting(section: str, key: str, fallback: Any = None) -> Any:
    """Helper function to get a specific setting."""
    config = load_config()
    return config.get(section, key, fallback=fallback)


def get_int(section: str, key: str) -> int:
    """Reads an integer setting, falling back to the built-in default on bad values."""
    raw = get_setting(section, key, fallback=DEFAULT_SETTINGS[section][key])
    try:
        return int(raw)
    except (TypeError, ValueError):
        logger.warning(f"Invalid integer [{section}] {key} = {raw!r}; using default.")
        return int(DEFAULT_SETTINGS[section][key])


def get_float(section: str, key: str) -> float:
    """Reads a float setting, falling back to the built-in default on bad values."""
    raw = get_setting(section, key, fallback=DEFAULT_SETTINGS[section][key])
    try:
        return float(raw)
    except (TypeError, ValueError):
        logger.warning(f"Invalid number [{section}] {key} = {raw!r}; using default.")
        return float(DEFAULT_SETTINGS[section][key])


def set_setting(section: str, key: str, value: Any) -> bool:
    """Helper function to set a specific setting and save."""
    config = load_config()
    if not config.has_section(section):
        config.add_section(section)
    config.set(section, key, str(value))
    if save_config(config):
        logger.info(f"Setting [{section}] {key} = {value} saved.")
        return True
    logger.error(f"Failed to save setting [{section}] {key} = {value}.")
    return False


def effective_threads(requested: int | None = None) -> int:
    """Worker count from the argument or config, capped by PALINFIX_THREADS."""
    threads = requested if requested else get_int("Run", "threads")
    if threads <= 0:
        threads = os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            threads = min(threads, max(1, int(cap)))
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV}={cap!r}")
    return threads
