"""
Environment overrides loaded from the project root .env file.

All keys are optional; missing values fall back to defaults.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
ENV_PATH = BASE_DIR / ".env"
load_dotenv(ENV_PATH)

THREADS = int(os.getenv("ZNTREE_THREADS", "1"))
OUT_DIR = Path(os.getenv("ZNTREE_OUT_DIR", str(BASE_DIR / "runs")))
LOG_LEVEL = os.getenv("ZNTREE_LOG_LEVEL", "WARNING").upper()
WORKSPACE_DIR = BASE_DIR / "workspaces"

if THREADS < 1:
    raise ValueError(f"ZNTREE_THREADS must be >= 1, got {THREADS}. Fix {ENV_PATH}.")


if __name__ == "__main__":
    print(f"Loaded settings from: {ENV_PATH}")
    print(f"threads={THREADS} out_dir={OUT_DIR} log_level={LOG_LEVEL}")
