import json
import logging
import threading
from datetime import datetime

from fca_engine.config import RUN_TIME_TABLE_LOG_JSON

logger = logging.getLogger(__name__)
_runtime_table_lock = threading.Lock()


def log_runtime(function_or_name: str, duration: float):
    if RUN_TIME_TABLE_LOG_JSON:
        time_record = {
            "timestamp": datetime.now().isoformat(),
            "function": function_or_name,
            "duration": f"{duration:.4f}",
        }
        line = json.dumps(time_record) + "\n"
        with _runtime_table_lock, open(RUN_TIME_TABLE_LOG_JSON, "a") as file:
            file.write(line)

    logger.info(f"⏰ {function_or_name}() took {duration:.4f} seconds")


def log_law_result(name: str, status: str, cases: int, detail: str = ""):
    status_emojis = {
        "pass": "✅",
        "fail": "❌",
        "skip": "⏭️",
    }
    emoji = status_emojis.get(status, "❓")
    message = f"{emoji} {name} [{status}] over {cases} case(s)"
    if detail:
        message += f": {detail}"
    if status == "fail":
        logger.warning(message)
    else:
        logger.info(message)
