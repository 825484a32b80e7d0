from __future__ import annotations

import logging
from collections import deque
from datetime import datetime
from typing import Any

logger = logging.getLogger(__name__)

_RUN_LOGS: deque[dict[str, Any]] = deque(maxlen=100)


def append_log(
    *,
    operation: str,
    status: str,
    duration_ms: int,
    summary: str,
    error: str = "",
) -> None:
    _RUN_LOGS.appendleft(
        {
            "timestamp": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            "operation": operation,
            "status": status,
            "duration_ms": duration_ms,
            "summary": summary,
            "error": error[:200],
        }
    )
    if status == "success":
        logger.info("%s ok in %d ms: %s", operation, duration_ms, summary)
    else:
        logger.warning("%s %s in %d ms: %s", operation, status, duration_ms, error[:200])


def get_logs(limit: int = 20) -> list[dict[str, Any]]:
    size = max(1, min(limit, 100))
    return list(_RUN_LOGS)[:size]


def clear_logs() -> None:
    _RUN_LOGS.clear()
