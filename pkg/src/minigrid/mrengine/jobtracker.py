"""JobTracker: job lifecycle, slotted scheduling with data locality, counters.

All state here is mutated under one lock by heartbeat and task-event
messages; task execution itself happens on the TaskTrackers' worker pools.
The JobTracker is deliberately a single point of failure: there is no
recovery of running jobs.
"""

import threading
from dataclasses import dataclass, field

from minigrid.blockfs import MiniDfs
from minigrid.errors import InputMissing, OutputExists
from minigrid.mrengine import registry, tasks
from minigrid.mrengine.types import CounterSet, InputSplit, SpillIndex

PHASE_SETUP = "Setup"
PHASE_MAP = "Map"
PHASE_REDUCE = "Reduce"
PHASE_CLEANUP = "Cleanup"
PHASE_SUCCEEDED = "Succeeded"
PHASE_FAILED = "Failed"

PENDING = "pending"
RUNNING = "running"
COMPLETE = "complete"
KILLED = "killed"

DEFAULT_TASK_RETRIES = 2  # attempts allowed = retries + 1


@dataclass
class JobSpec:
    input_dir: str
    output_dir: str
    mapper: str
    reducer: str
    combiner: str | None = None
    reducers: int = 1
    name: str = ""


@dataclass
class Task:
    task_id: str
    kind: str  # "map" | "reduce"
    split: InputSplit | None = None
    partition: int | None = None
    status: str = PENDING
    failed_attempts: int = 0


@dataclass
class TrackerInfo:
    tracker_id: str
    free_map_slots: int
    free_reduce_slots: int
    datanode_id: str | None = None


@dataclass
class Assignment:
    job_id: str
    task_id: str
    kind: str
    mapper: str = ""
    reducer: str = ""
    combiner: str | None = None
    reducers: int = 1
    split: InputSplit | None = None
    partition: int | None = None
    spills: list[SpillIndex] = field(default_factory=list)
    output_path: str = ""
    scratch_dir: str = ""
    attempt: int = 0


class JobState:
    def __init__(self, job_id: str, spec: JobSpec, started_at: int):
        self.job_id = job_id
        self.spec = spec
        self.name = spec.name or "job"
        self.phase = PHASE_SETUP
        self.map_tasks: list[Task] = []
        self.reduce_tasks: list[Task] = []
        self.counters = CounterSet()
        self.started_at = started_at
        self.finished_at: int | None = None
        self.progress_log: list[str] = []
        self.error: str | None = None
        self.spill_by_task: dict[str, SpillIndex] = {}
        self.reduce_thirds: dict[str, int] = {}
        self._last_progress: tuple[int, int] | None = None

    @property
    def map_pct(self) -> int:
        if not self.map_tasks:
            return 100
        done = sum(1 for t in self.map_tasks if t.status == COMPLETE)
        return (100 * done) // len(self.map_tasks)

    @property
    def reduce_pct(self) -> int:
        if not self.reduce_tasks:
            return 100 if self.phase in (PHASE_SUCCEEDED,) else 0
        thirds = sum(self.reduce_thirds.get(t.task_id, 0) for t in self.reduce_tasks)
        return (100 * thirds) // (3 * len(self.reduce_tasks))

    def task_table(self) -> list[dict]:
        rows = []
        for kind, group in (("map", self.map_tasks), ("reduce", self.reduce_tasks)):
            pct = self.map_pct if kind == "map" else self.reduce_pct
            rows.append(
                {
                    "kind": kind,
                    "pct_complete": pct,
                    "num_tasks": len(group),
                    "pending": sum(1 for t in group if t.status == PENDING),
                    "running": sum(1 for t in group if t.status == RUNNING),
                    "complete": sum(1 for t in group if t.status == COMPLETE),
                    "killed": sum(1 for t in group if t.status == KILLED),
                    "failed_attempts": sum(t.failed_attempts for t in group),
                }
            )
        return rows

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "name": self.name,
            "phase": self.phase,
            "map_pct": self.map_pct,
            "reduce_pct": self.reduce_pct,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "tasks": self.task_table(),
            "counters": self.counters.to_dict(),
            "error": self.error,
        }

    def is_active(self) -> bool:
        return self.phase not in (PHASE_SUCCEEDED, PHASE_FAILED)


class JobTracker:
    def __init__(
        self,
        fs: MiniDfs,
        clock,
        scratch_dir: str,
        task_retries: int = DEFAULT_TASK_RETRIES,
        progress_fn=None,
    ):
        self.fs = fs
        self.clock = clock
        self.scratch_dir = scratch_dir
        self.task_retries = task_retries
        self.progress_fn = progress_fn
        self._jobs: dict[str, JobState] = {}
        self._order: list[str] = []
        self._seq = 0
        self._lock = threading.RLock()

    # --- submission ---

    def submit_job(self, spec: JobSpec) -> str:
        with self._lock:
            if not self.fs.exists(spec.input_dir):
                raise InputMissing(f"input path {spec.input_dir} does not exist")
            if self.fs.exists(spec.output_dir):
                raise OutputExists(f"output path {spec.output_dir} already exists")
            registry.get_function(spec.mapper)
            registry.get_function(spec.reducer)
            if spec.combiner:
                registry.get_function(spec.combiner)
            if spec.reducers < 1:
                raise ValueError("reducers must be >= 1")
            self._seq += 1
            stamp = _format_job_stamp(self.clock.now_ms())
            job_id = f"job_{stamp}_{self._seq:04d}"
            job = JobState(job_id, spec, self.clock.now_ms())
            splits = tasks.compute_splits(self.fs, spec.input_dir)
            job.map_tasks = [
                Task(task_id=f"m_{i:06d}", kind="map", split=s)
                for i, s in enumerate(splits)
            ]
            job.reduce_tasks = [
                Task(task_id=f"r_{i:06d}", kind="reduce", partition=i)
                for i in range(spec.reducers)
            ]
            job.phase = PHASE_MAP if job.map_tasks else PHASE_REDUCE
            self._jobs[job_id] = job
            self._order.append(job_id)
            self._emit_progress(job)
            return job_id

    # --- scheduling ---

    def schedule(self, tracker: TrackerInfo) -> list[Assignment]:
        with self._lock:
            assignments: list[Assignment] = []
            free_map = tracker.free_map_slots
            free_reduce = tracker.free_reduce_slots
            for job_id in self._order:
                job = self._jobs[job_id]
                if not job.is_active():
                    continue
                if job.phase == PHASE_MAP:
                    while free_map > 0:
                        task = self._pick_map_task(job, tracker.datanode_id)
                        if task is None:
                            break
                        task.status = RUNNING
                        job.counters.incr("LAUNCHED_MAP_TASKS")
                        if (
                            tracker.datanode_id
                            and task.split
                            and tracker.datanode_id in task.split.locations
                        ):
                            job.counters.incr("DATA_LOCAL_MAP_TASKS")
                        assignments.append(self._map_assignment(job, task))
                        free_map -= 1
                elif job.phase == PHASE_REDUCE:
                    while free_reduce > 0:
                        task = next(
                            (t for t in job.reduce_tasks if t.status == PENDING), None
                        )
                        if task is None:
                            break
                        task.status = RUNNING
                        job.counters.incr("LAUNCHED_REDUCE_TASKS")
                        assignments.append(self._reduce_assignment(job, task))
                        free_reduce -= 1
            return assignments

    def _pick_map_task(self, job: JobState, datanode_id: str | None) -> Task | None:
        pending = [t for t in job.map_tasks if t.status == PENDING]
        if not pending:
            return None
        if datanode_id:
            for task in pending:
                if task.split and datanode_id in task.split.locations:
                    return task
        return pending[0]

    def _map_assignment(self, job: JobState, task: Task) -> Assignment:
        return Assignment(
            job_id=job.job_id,
            task_id=task.task_id,
            kind="map",
            mapper=job.spec.mapper,
            combiner=job.spec.combiner,
            reducers=job.spec.reducers,
            split=task.split,
            scratch_dir=self.scratch_dir,
            attempt=task.failed_attempts,
        )

    def _reduce_assignment(self, job: JobState, task: Task) -> Assignment:
        spills = [job.spill_by_task[t.task_id] for t in job.map_tasks]
        return Assignment(
            job_id=job.job_id,
            task_id=task.task_id,
            kind="reduce",
            reducer=job.spec.reducer,
            reducers=job.spec.reducers,
            partition=task.partition,
            spills=spills,
            output_path=job.spec.output_dir + "/" + tasks.output_file_name(task.partition),
            scratch_dir=self.scratch_dir,
            attempt=task.failed_attempts,
        )

    # --- task events, reported by trackers ---

    def handle_event(self, event: dict) -> None:
        with self._lock:
            job = self._jobs.get(event["job_id"])
            if job is None or not job.is_active():
                return
            kind = event["type"]
            if kind == "map_done":
                task = self._task(job, event["task_id"])
                task.status = COMPLETE
                job.spill_by_task[task.task_id] = event["spill"]
                job.counters.merge(event["counters"])
                if all(t.status == COMPLETE for t in job.map_tasks):
                    job.phase = PHASE_REDUCE
            elif kind == "reduce_progress":
                job.reduce_thirds[event["task_id"]] = max(
                    job.reduce_thirds.get(event["task_id"], 0), event["thirds"]
                )
            elif kind == "reduce_done":
                task = self._task(job, event["task_id"])
                task.status = COMPLETE
                job.reduce_thirds[task.task_id] = 3
                job.counters.merge(event["counters"])
                if all(t.status == COMPLETE for t in job.reduce_tasks):
                    self._finish_job(job)
            elif kind == "task_failed":
                task = self._task(job, event["task_id"])
                task.failed_attempts += 1
                if task.failed_attempts > self.task_retries:
                    self._fail_job(job, event.get("error", "task failed"))
                else:
                    task.status = PENDING
            else:
                raise ValueError(f"unknown event type {kind!r}")
            self._emit_progress(job)

    def _task(self, job: JobState, task_id: str) -> Task:
        for task in job.map_tasks + job.reduce_tasks:
            if task.task_id == task_id:
                return task
        raise KeyError(task_id)

    def _finish_job(self, job: JobState) -> None:
        job.phase = PHASE_CLEANUP
        self.fs.put(b"", job.spec.output_dir + "/_SUCCESS")
        job.phase = PHASE_SUCCEEDED
        job.finished_at = self.clock.now_ms()

    def _fail_job(self, job: JobState, error: str) -> None:
        job.phase = PHASE_FAILED
        job.error = error
        job.finished_at = self.clock.now_ms()
        for task in job.map_tasks + job.reduce_tasks:
            if task.status in (PENDING, RUNNING):
                task.status = KILLED

    def _emit_progress(self, job: JobState) -> None:
        mark = (job.map_pct, job.reduce_pct)
        if mark != job._last_progress:
            job._last_progress = mark
            line = f"map {mark[0]}% reduce {mark[1]}%"
            job.progress_log.append(line)
            if self.progress_fn is not None:
                self.progress_fn(job.job_id, line)

    # --- queries ---

    def job(self, job_id: str) -> JobState | None:
        with self._lock:
            return self._jobs.get(job_id)

    def jobs(self) -> list[JobState]:
        with self._lock:
            return [self._jobs[jid] for jid in self._order]


def _format_job_stamp(epoch_ms: int) -> str:
    import time

    return time.strftime("%Y%m%d%H%M", time.localtime(epoch_ms / 1000))
