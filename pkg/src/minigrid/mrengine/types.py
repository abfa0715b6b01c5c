"""Engine currency: key/value records, splits, and the 17 named counters."""

import struct
from dataclasses import dataclass, field

from minigrid.util import fnv1a64

_PAIR_HEADER = struct.Struct("<II")

# display names and dump order exactly as the job client prints them
COUNTER_GROUPS: list[tuple[str, list[tuple[str, str]]]] = [
    (
        "Job Counters",
        [
            ("LAUNCHED_REDUCE_TASKS", "Launched reduce tasks"),
            ("LAUNCHED_MAP_TASKS", "Launched map tasks"),
            ("DATA_LOCAL_MAP_TASKS", "Data-local map tasks"),
        ],
    ),
    (
        "FileSystemCounters",
        [
            ("FILE_BYTES_READ", "FILE_BYTES_READ"),
            ("HDFS_BYTES_READ", "HDFS_BYTES_READ"),
            ("FILE_BYTES_WRITTEN", "FILE_BYTES_WRITTEN"),
            ("HDFS_BYTES_WRITTEN", "HDFS_BYTES_WRITTEN"),
        ],
    ),
    (
        "Map-Reduce Framework",
        [
            ("REDUCE_INPUT_GROUPS", "Reduce input groups"),
            ("COMBINE_OUTPUT_RECORDS", "Combine output records"),
            ("MAP_INPUT_RECORDS", "Map input records"),
            ("REDUCE_SHUFFLE_BYTES", "Reduce shuffle bytes"),
            ("REDUCE_OUTPUT_RECORDS", "Reduce output records"),
            ("SPILLED_RECORDS", "Spilled Records"),
            ("MAP_OUTPUT_BYTES", "Map output bytes"),
            ("COMBINE_INPUT_RECORDS", "Combine input records"),
            ("MAP_OUTPUT_RECORDS", "Map output records"),
            ("REDUCE_INPUT_RECORDS", "Reduce input records"),
        ],
    ),
]

COUNTER_NAMES = [name for _, members in COUNTER_GROUPS for name, _ in members]


class CounterSet:
    """Named unsigned counters; monotone within a job, merged by summation."""

    def __init__(self):
        self._values = {name: 0 for name in COUNTER_NAMES}

    def incr(self, name: str, amount: int = 1) -> None:
        if amount < 0:
            raise ValueError(f"counters are monotone; tried {name} += {amount}")
        self._values[name] += amount

    def get(self, name: str) -> int:
        return self._values[name]

    def merge(self, other: "CounterSet") -> None:
        for name, value in other._values.items():
            self._values[name] += value

    def to_dict(self) -> dict[str, int]:
        return dict(self._values)

    def __getitem__(self, name: str) -> int:
        return self._values[name]

    def __repr__(self) -> str:
        nonzero = {k: v for k, v in self._values.items() if v}
        return f"CounterSet({nonzero})"


def format_counters(counters: CounterSet) -> list[str]:
    """The job-completion counter dump, one line per entry plus group headers."""
    lines = [f"Counters: {len(COUNTER_NAMES)}"]
    for group, members in COUNTER_GROUPS:
        lines.append(group)
        for name, display in members:
            lines.append(f"{display}={counters.get(name)}")
    return lines


@dataclass(frozen=True)
class InputSplit:
    path: str
    offset: int
    length: int
    locations: tuple[str, ...] = ()


@dataclass
class SpillIndex:
    """Where each reducer partition lives inside one map task's spill file."""
    path: str
    segments: list[tuple[int, int, int]] = field(default_factory=list)  # offset, nbytes, nrecords


def encode_pair(key: bytes, value: bytes) -> bytes:
    return _PAIR_HEADER.pack(len(key), len(value)) + key + value


def pair_size(key: bytes, value: bytes) -> int:
    return _PAIR_HEADER.size + len(key) + len(value)


def decode_pairs(blob: bytes) -> list[tuple[bytes, bytes]]:
    out = []
    pos = 0
    end = len(blob)
    while pos < end:
        klen, vlen = _PAIR_HEADER.unpack_from(blob, pos)
        pos += _PAIR_HEADER.size
        out.append((blob[pos:pos + klen], blob[pos + klen:pos + klen + vlen]))
        pos += klen + vlen
    return out


def partition_for(key: bytes, reducer_count: int) -> int:
    return fnv1a64(key) % reducer_count
