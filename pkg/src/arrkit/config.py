"""Search bounds.  ``ARR_MAX_HYPERPLANES`` overrides the size bounds."""
from __future__ import annotations

import os

WHITNEY_BOUND = 16
NICE_PARTITION_BOUND = 14
CHAMBER_RANK_BOUND = 6
IDEAL_ROOT_BOUND = 42
PARAM_DEGREE_BOUND = 4


def _override() -> int | None:
    raw = os.environ.get("ARR_MAX_HYPERPLANES")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ARR_MAX_HYPERPLANES must be an integer, got {raw!r}") from None


def whitney_bound() -> int:
    o = _override()
    return WHITNEY_BOUND if o is None else o


def nice_partition_bound() -> int:
    o = _override()
    return NICE_PARTITION_BOUND if o is None else o
