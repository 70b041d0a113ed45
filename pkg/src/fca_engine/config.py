# src/fca_engine/config.py
import json
import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Capacity guards
MAX_SUBSET_BASE = int(os.getenv("FCA_MAX_SUBSET_BASE", "20"))
MAX_POWERSET_BASE = int(os.getenv("FCA_MAX_POWERSET_BASE", "12"))
MAX_CARRIER_SIZE = 1 << MAX_POWERSET_BASE
INDUCED_LATTICE_LIMIT = int(os.getenv("FCA_INDUCED_LATTICE_LIMIT", "10"))
CONTINUITY_LIMIT = int(os.getenv("FCA_CONTINUITY_LIMIT", "12"))
DIAGONAL_SEARCH_LIMIT = int(os.getenv("FCA_DIAGONAL_SEARCH_LIMIT", "4"))

# Logging
LOG_LEVEL = os.getenv("FCA_LOG_LEVEL", "INFO")
RUN_TIME_TABLE_LOG_JSON = os.getenv("RUN_TIME_TABLE_LOG_JSON", "")

# Load verify settings
SETTINGS_FILE = os.getenv("FCA_SETTINGS_FILE", "./settings.json")
settings = {}
if os.path.exists(SETTINGS_FILE):
    with open(SETTINGS_FILE, "r") as f:
        settings = json.load(f)

VERIFY_BATCH_SIZE = int(settings.get("verify_batch_size", 100))
VERIFY_MAX_SIDE = int(settings.get("verify_max_side", 5))
DEFAULT_SEED = int(settings.get("default_seed", 7))
CXT_ROUNDTRIP_CASES = int(settings.get("cxt_roundtrip_cases", 50))
