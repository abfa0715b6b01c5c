"""TaskTracker: slotted task execution on a bounded worker pool.

Results travel back to the JobTracker as events drained by the engine pump;
there is no shared mutable task state between workers.
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from queue import Empty, Queue

from minigrid.blockfs import MiniDfs
from minigrid.mrengine import registry, tasks
from minigrid.mrengine.jobtracker import Assignment, TrackerInfo
from minigrid.mrengine.types import CounterSet, decode_pairs

DEFAULT_MAP_SLOTS = 2
DEFAULT_REDUCE_SLOTS = 2


class TaskTracker:
    def __init__(
        self,
        tracker_id: str,
        fs: MiniDfs,
        map_slots: int = DEFAULT_MAP_SLOTS,
        reduce_slots: int = DEFAULT_REDUCE_SLOTS,
        datanode_id: str | None = None,
        activity: threading.Event | None = None,
    ):
        self.tracker_id = tracker_id
        self.fs = fs
        self.map_slots = map_slots
        self.reduce_slots = reduce_slots
        self.datanode_id = datanode_id
        self._running = {"map": 0, "reduce": 0}
        self._lock = threading.Lock()
        self._events: Queue = Queue()
        self._pool = ThreadPoolExecutor(
            max_workers=map_slots + reduce_slots,
            thread_name_prefix=f"tt-{tracker_id}",
        )
        self._activity = activity or threading.Event()

    def info(self) -> TrackerInfo:
        with self._lock:
            return TrackerInfo(
                tracker_id=self.tracker_id,
                free_map_slots=self.map_slots - self._running["map"],
                free_reduce_slots=self.reduce_slots - self._running["reduce"],
                datanode_id=self.datanode_id,
            )

    def running_counts(self) -> dict[str, int]:
        with self._lock:
            return dict(self._running)

    def launch(self, assignment: Assignment) -> None:
        with self._lock:
            self._running[assignment.kind] += 1
        self._pool.submit(self._run, assignment)

    def drain_events(self) -> list[dict]:
        out = []
        while True:
            try:
                out.append(self._events.get_nowait())
            except Empty:
                return out

    def wait_activity(self, timeout: float) -> None:
        self._activity.wait(timeout)
        self._activity.clear()

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True, cancel_futures=True)

    # --- execution ---

    def _run(self, assignment: Assignment) -> None:
        try:
            if assignment.kind == "map":
                event = self._run_map(assignment)
            else:
                event = self._run_reduce(assignment)
        except Exception as exc:  # any task error costs one attempt
            event = {
                "type": "task_failed",
                "job_id": assignment.job_id,
                "task_id": assignment.task_id,
                "error": f"{type(exc).__name__}: {exc}",
            }
        finally:
            with self._lock:
                self._running[assignment.kind] -= 1
        self._events.put(event)
        self._activity.set()

    def _run_map(self, assignment: Assignment) -> dict:
        counters = CounterSet()
        split = assignment.split
        data = self.fs.cat(split.path)
        counters.incr("HDFS_BYTES_READ", split.length)
        records = tasks.records_for_split(data, split.offset, split.length)
        map_fn = registry.get_function(assignment.mapper)
        output = tasks.run_map(records, map_fn, counters)
        combine_fn = (
            registry.get_function(assignment.combiner) if assignment.combiner else None
        )
        spill_path = tasks.scratch_file(
            assignment.scratch_dir,
            f"{assignment.job_id}_{assignment.task_id}_a{assignment.attempt}.spill",
        )
        spill = tasks.sort_and_spill(
            output, assignment.reducers, spill_path, counters, combine_fn
        )
        return {
            "type": "map_done",
            "job_id": assignment.job_id,
            "task_id": assignment.task_id,
            "spill": spill,
            "counters": counters,
        }

    def _run_reduce(self, assignment: Assignment) -> dict:
        counters = CounterSet()
        runs = [
            decode_pairs(tasks.fetch_partition(spill, assignment.partition, counters))
            for spill in assignment.spills
        ]
        self._progress(assignment, 1)
        merged_path = tasks.scratch_file(
            assignment.scratch_dir,
            f"{assignment.job_id}_{assignment.task_id}_a{assignment.attempt}.merged",
        )
        merged = tasks.merge_runs(runs, merged_path, counters)
        self._progress(assignment, 2)
        reduce_fn = registry.get_function(assignment.reducer)
        out_bytes = tasks.run_reduce(merged, reduce_fn, counters)
        self.fs.put(out_bytes, assignment.output_path)
        counters.incr("HDFS_BYTES_WRITTEN", len(out_bytes))
        return {
            "type": "reduce_done",
            "job_id": assignment.job_id,
            "task_id": assignment.task_id,
            "counters": counters,
        }

    def _progress(self, assignment: Assignment, thirds: int) -> None:
        self._events.put(
            {
                "type": "reduce_progress",
                "job_id": assignment.job_id,
                "task_id": assignment.task_id,
                "thirds": thirds,
            }
        )
        self._activity.set()
