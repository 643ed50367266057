import logging
import logging.config
import os

DEFAULT_LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("LOG_FILE")

LOGGING_CONFIG: dict = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "default": {"format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "default",
            "level": DEFAULT_LOG_LEVEL,
            "stream": "ext://sys.stderr",  # stdout is reserved for tables
        },
    },
    "root": {
        "handlers": ["console"],
        "level": DEFAULT_LOG_LEVEL,
    },
}

if LOG_FILE:
    LOGGING_CONFIG["handlers"]["file"] = {
        "class": "logging.FileHandler",
        "formatter": "default",
        "level": "DEBUG",
        "filename": LOG_FILE,
    }
    LOGGING_CONFIG["root"]["handlers"].append("file")
    LOGGING_CONFIG["root"]["level"] = "DEBUG"

logging.config.dictConfig(LOGGING_CONFIG)
