"""Task-level machinery: splits, record reading, map/combine/spill, shuffle,
merge and reduce. Everything here is a pure building block the scheduler
drives; each piece is unit-testable on its own.
"""

import heapq
import os
from typing import Callable, Iterable, Iterator

from minigrid.blockfs import MiniDfs
from minigrid.errors import NotFound
from minigrid.mrengine.types import (
    CounterSet,
    InputSplit,
    SpillIndex,
    decode_pairs,
    encode_pair,
    pair_size,
    partition_for,
)


def compute_splits(fs: MiniDfs, input_dir: str) -> list[InputSplit]:
    """One split per block, ordered by (path, offset)."""
    if not fs.exists(input_dir):
        raise NotFound(f"input path {input_dir} does not exist")
    splits: list[InputSplit] = []
    for entry in fs.list_files(input_dir):
        offset = 0
        for block_id, length in entry.blocks:
            locations = tuple(sorted(fs.namespace.block_map.get(block_id, set())))
            splits.append(InputSplit(entry.path, offset, length, locations))
            offset += length
    splits.sort(key=lambda s: (s.path, s.offset))
    return splits


def records_for_split(data: bytes, offset: int, length: int) -> list[bytes]:
    """Newline-delimited records whose first byte falls inside the split.

    A record crossing the split boundary is read to completion by the split
    that owns its first byte; the next split skips it.
    """
    end = offset + length
    records = []
    pos = 0
    total = len(data)
    while pos < total:
        nl = data.find(b"\n", pos)
        stop = total if nl < 0 else nl
        if offset <= pos < end:
            records.append(data[pos:stop].rstrip(b"\r"))
        if nl < 0:
            break
        pos = nl + 1
    return records


def run_map(
    records: Iterable[bytes],
    map_fn: Callable,
    counters: CounterSet,
) -> list[tuple[bytes, bytes]]:
    output: list[tuple[bytes, bytes]] = []
    base = 0
    for record in records:
        counters.incr("MAP_INPUT_RECORDS")
        for key, value in map_fn(base, record):
            counters.incr("MAP_OUTPUT_RECORDS")
            counters.incr("MAP_OUTPUT_BYTES", pair_size(key, value))
            output.append((key, value))
        base += len(record) + 1
    return output


def combine(
    run: list[tuple[bytes, bytes]],
    combine_fn: Callable,
    counters: CounterSet,
) -> list[tuple[bytes, bytes]]:
    """Apply the combiner to a key-sorted run; output stays sorted."""
    out: list[tuple[bytes, bytes]] = []
    for key, values in group_sorted(run):
        materialized = list(values)
        counters.incr("COMBINE_INPUT_RECORDS", len(materialized))
        for ckey, cvalue in combine_fn(key, materialized):
            counters.incr("COMBINE_OUTPUT_RECORDS")
            out.append((ckey, cvalue))
    return out


def group_sorted(
    run: Iterable[tuple[bytes, bytes]],
) -> Iterator[tuple[bytes, list[bytes]]]:
    """(key, values) groups over a key-sorted record stream."""
    current: bytes | None = None
    bucket: list[bytes] = []
    for key, value in run:
        if current is None or key != current:
            if current is not None:
                yield current, bucket
            current = key
            bucket = []
        bucket.append(value)
    if current is not None:
        yield current, bucket


def sort_and_spill(
    map_output: list[tuple[bytes, bytes]],
    reducer_count: int,
    spill_path: str,
    counters: CounterSet,
    combine_fn: Callable | None = None,
) -> SpillIndex:
    """The single end-of-map-task sort-combine-spill.

    Partitions are laid out back to back in one file; the index records
    (offset, byte length, record count) per partition.
    """
    run = sorted(map_output, key=lambda kv: kv[0])
    if combine_fn is not None:
        run = combine(run, combine_fn, counters)
    partitions: list[list[tuple[bytes, bytes]]] = [[] for _ in range(reducer_count)]
    for key, value in run:
        partitions[partition_for(key, reducer_count)].append((key, value))
    index = SpillIndex(path=spill_path)
    with open(spill_path, "wb") as fh:
        offset = 0
        for part in partitions:
            blob = b"".join(encode_pair(k, v) for k, v in part)
            fh.write(blob)
            index.segments.append((offset, len(blob), len(part)))
            offset += len(blob)
            counters.incr("SPILLED_RECORDS", len(part))
            counters.incr("FILE_BYTES_WRITTEN", len(blob))
    return index


def fetch_partition(spill: SpillIndex, partition: int, counters: CounterSet) -> bytes:
    """Shuffle: move one partition's bytes toward a reducer."""
    offset, nbytes, _ = spill.segments[partition]
    with open(spill.path, "rb") as fh:
        fh.seek(offset)
        blob = fh.read(nbytes)
    counters.incr("FILE_BYTES_READ", nbytes)
    counters.incr("REDUCE_SHUFFLE_BYTES", nbytes)
    return blob


def merge_runs(
    runs: list[list[tuple[bytes, bytes]]],
    merged_path: str,
    counters: CounterSet,
) -> list[tuple[bytes, bytes]]:
    """Merge sorted runs and materialize the result once (the reduce-side
    spill); ties keep the order of the input runs, so the merged stream is
    independent of task completion order. The reduce pass reads the
    materialized file back."""
    count = 0
    with open(merged_path, "wb") as fh:
        for key, value in heapq.merge(*runs, key=lambda kv: kv[0]):
            fh.write(encode_pair(key, value))
            count += 1
    nbytes = os.path.getsize(merged_path)
    counters.incr("SPILLED_RECORDS", count)
    counters.incr("FILE_BYTES_WRITTEN", nbytes)
    with open(merged_path, "rb") as fh:
        blob = fh.read()
    counters.incr("FILE_BYTES_READ", nbytes)
    return decode_pairs(blob)


def run_reduce(
    merged: list[tuple[bytes, bytes]],
    reduce_fn: Callable,
    counters: CounterSet,
) -> bytes:
    """Reduce a merged, key-sorted stream to `key<TAB>value` output lines."""
    out = bytearray()
    for key, values in group_sorted(merged):
        counters.incr("REDUCE_INPUT_GROUPS")
        counters.incr("REDUCE_INPUT_RECORDS", len(values))
        for rkey, rvalue in reduce_fn(key, values):
            counters.incr("REDUCE_OUTPUT_RECORDS")
            out += rkey + b"\t" + rvalue + b"\n"
    return bytes(out)


def output_file_name(partition: int) -> str:
    return f"part-r-{partition:05d}"


def scratch_file(scratch_dir: str, name: str) -> str:
    os.makedirs(scratch_dir, exist_ok=True)
    return os.path.join(scratch_dir, name)
