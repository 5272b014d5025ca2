from __future__ import annotations

import enum
from typing import Any, NamedTuple, Optional


class Check(NamedTuple):
    """Boolean verdict plus an optional counterexample."""

    ok: bool
    witness: Optional[Any] = None

    def __bool__(self):
        return self.ok


class Verdict(enum.Enum):
    CERTIFIED = "certified"
    FALSIFIED = "falsified"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


class UnequalTailSlopes(ValueError):
    """Raised when a check needs ``left_tail_slope == right_tail_slope``."""


class NotApproximable(ValueError):
    """The input lies outside what the approximation pipeline can handle."""


def require_equal_tails(f) -> None:
    if f.left_tail_slope != f.right_tail_slope:
        raise UnequalTailSlopes(
            f"tail slopes differ ({f.left_tail_slope} vs {f.right_tail_slope})"
        )
