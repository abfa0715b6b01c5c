"""Injectable millisecond clocks.

Heartbeat expiry, cell timestamps and report ages all read time through one
of these so tests can drive a simulated clock instead of sleeping.
"""

import time


class WallClock:
    def now_ms(self) -> int:
        return int(time.time() * 1000)


class SimClock:
    """Manually advanced clock for deterministic tests."""

    def __init__(self, start_ms: int = 0):
        self._now = int(start_ms)

    def now_ms(self) -> int:
        return self._now

    def advance(self, delta_ms: int) -> None:
        self._now += int(delta_ms)

    def set(self, now_ms: int) -> None:
        self._now = int(now_ms)
