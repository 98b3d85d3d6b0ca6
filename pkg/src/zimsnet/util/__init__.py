from .ids import new_run_id
from .time import BlockClock, now_utc, parse_rfc3339, to_rfc3339

__all__ = [
    "new_run_id",
    "BlockClock",
    "now_utc",
    "parse_rfc3339",
    "to_rfc3339",
]
