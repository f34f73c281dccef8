"""
Django settings for the cirLab project.

cirLab has no web surface: Django provides configuration, logging, the
management-command CLI and the ORM used to record Monte Carlo experiments.
"""

from pathlib import Path
import os
import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used for Django's signing machinery; nothing here is served.
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "cirlab-local-only")

DEBUG = os.environ.get("DJANGO_DEBUG", "0") == "1"

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'drift',
    'django.contrib.contenttypes',
    'rest_framework',
]

# Database

if os.environ.get("DATABASE_URL") != None:
    # Shared experiment database
    DATABASES = {
        "default": dj_database_url.config(
            conn_max_age=600,
            conn_health_checks=True,
        )
    }
else:
    # Running locally.
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.sqlite3",
            "NAME": BASE_DIR / "db.sqlite3",
        }
    }

# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Defaults for the drift app. Library code takes explicit arguments;
# management commands fall back to these when a flag is omitted.
DRIFT = {
    "DT": float(os.environ.get("DRIFT_DT", "0.01")),
    "INV_FLOOR": float(os.environ.get("DRIFT_INV_FLOOR", "1e-8")),
    "CHECKPOINTS": [10.0, 50.0, 100.0, 150.0, 200.0],
    "REPLICATIONS": 100,
    "BASE_SEED": int(os.environ.get("DRIFT_BASE_SEED", "20240601")),
    "WORKERS": int(os.environ.get("DRIFT_WORKERS", "1")),
    "SCHEME": "euler_full_truncation",
}

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'INFO',
    },
    'loggers': {
        'drift': {
            'handlers': ['console'],
            'level': os.environ.get("DRIFT_LOG_LEVEL", "INFO"),
            'propagate': False,
        },
    },
}
