"""The engine pump: drives heartbeats between trackers and the JobTracker
until jobs settle. Heartbeat processing is serial; only task bodies run on
the trackers' pools.
"""

import threading
import time

from minigrid.errors import TaskFailed
from minigrid.mrengine.jobtracker import JobSpec, JobState, JobTracker
from minigrid.mrengine.tasktracker import TaskTracker


class Engine:
    def __init__(self, jobtracker: JobTracker, trackers: list[TaskTracker]):
        self.jobtracker = jobtracker
        self.trackers = sorted(trackers, key=lambda t: t.tracker_id)
        self._activity = threading.Event()
        for tracker in self.trackers:
            tracker._activity = self._activity

    def submit(self, spec: JobSpec) -> str:
        return self.jobtracker.submit_job(spec)

    def pump_once(self) -> None:
        for tracker in self.trackers:
            for event in tracker.drain_events():
                self.jobtracker.handle_event(event)
            for assignment in self.jobtracker.schedule(tracker.info()):
                tracker.launch(assignment)

    def wait(self, job_id: str, timeout_s: float = 300.0) -> JobState:
        deadline = time.monotonic() + timeout_s
        job = self.jobtracker.job(job_id)
        while job.is_active():
            self.pump_once()
            if not job.is_active():
                break
            if time.monotonic() > deadline:
                raise TimeoutError(f"job {job_id} still active after {timeout_s}s")
            self._activity.wait(0.005)
            self._activity.clear()
        self.pump_once()  # drain any trailing events
        return job

    def run_job(self, spec: JobSpec, timeout_s: float = 300.0) -> JobState:
        """Submit, drive to completion, raise TaskFailed if the job failed."""
        job = self.wait(self.submit(spec), timeout_s)
        if job.phase == "Failed":
            raise TaskFailed(f"{job.job_id} failed: {job.error}")
        return job

    def shutdown(self) -> None:
        for tracker in self.trackers:
            tracker.shutdown()
