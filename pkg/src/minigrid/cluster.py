"""One-process cluster: NameNode, DataNode, SecondaryNameNode, JobTracker and
TaskTracker wired together, with an optional heartbeat pump thread and the
HTTP status surface.

Tests drive a simulated clock and call tick() themselves; the CLI daemon
runs the pump on the wall clock.
"""

import hashlib
import json
import os
import threading

from minigrid.blockfs import MiniDfs, format_namespace
from minigrid.blockfs.filesystem import Checkpoint
from minigrid.clock import WallClock
from minigrid.config import Config
from minigrid.errors import AlreadyRunning, NotFormatted, RootLocked
from minigrid.mrengine import Engine, JobSpec, JobState, JobTracker, TaskTracker

COMPONENTS = ("NameNode", "DataNode", "SecondaryNameNode", "JobTracker", "TaskTracker")

DEFAULT_DATANODE_ID = "127.0.0.1:50010"
CHECKPOINT_EVERY_PUMPS = 30


class Cluster:
    def __init__(
        self,
        config: Config,
        clock=None,
        start_http: bool = True,
        pump: bool = False,
        progress_fn=None,
    ):
        self.config = config
        self.clock = clock or WallClock()
        self.root = config.get("hadoop.tmp.dir")
        self.stopping = False
        self._pump_thread: threading.Thread | None = None
        self._pump_stop = threading.Event()

        try:
            self.fs = MiniDfs(
                self.root,
                clock=self.clock,
                datanode_specs=[
                    (
                        DEFAULT_DATANODE_ID,
                        config.get_size("dfs.datanode.capacity"),
                        config.get_size("dfs.datanode.nondfs"),
                    )
                ],
                default_block_size=config.get_size("dfs.block.size"),
                default_replication=config.get_int("dfs.replication"),
            )
        except RootLocked as exc:
            raise AlreadyRunning(str(exc)) from None

        scratch = os.path.join(self.root, "mapred")
        self.jobtracker = JobTracker(
            self.fs,
            self.clock,
            scratch,
            task_retries=config.get_int("mapred.task.retries"),
            progress_fn=progress_fn,
        )
        self.tasktracker = TaskTracker(
            f"tracker_{DEFAULT_DATANODE_ID}",
            self.fs,
            map_slots=config.get_int("mapred.tasktracker.map.slots"),
            reduce_slots=config.get_int("mapred.tasktracker.reduce.slots"),
            datanode_id=DEFAULT_DATANODE_ID,
        )
        self.engine = Engine(self.jobtracker, [self.tasktracker])
        self.region_server = None

        self.statusd = None
        if start_http:
            from minigrid.statusd import StatusServer

            ports = [config.get_int("status.port")]
            if config.get_bool("status.multiport"):
                ports += [50030, 50060]
            self.statusd = StatusServer(self, ports)

        if pump:
            self._pump_thread = threading.Thread(
                target=self._pump_loop, name="cluster-pump", daemon=True
            )
            self._pump_thread.start()

    # --- component roster (jps style) ---

    def components(self) -> list[str]:
        names = list(COMPONENTS)
        if self.region_server is not None:
            names.append("RegionServer")
        return names

    def component_lines(self) -> list[str]:
        pid = os.getpid()
        return [f"{pid} {name}" for name in self.components()]

    # --- heartbeats ---

    def tick(self) -> None:
        """One heartbeat round: datanode report plus engine pump."""
        for node_id in list(self.fs._nodes):
            node = self.fs.datanode(node_id)
            self.fs.heartbeat(node_id, node.block_ids())
        self.engine.pump_once()

    def _pump_loop(self) -> None:
        pumps = 0
        interval_s = self.fs.heartbeat_interval_ms / 1000.0
        while not self._pump_stop.wait(interval_s):
            self.tick()
            pumps += 1
            if pumps % CHECKPOINT_EVERY_PUMPS == 0:
                self.fs.checkpoint()  # the Secondary NameNode role

    # --- jobs ---

    def run_job(self, spec: JobSpec, timeout_s: float = 300.0) -> JobState:
        job = self.engine.run_job(spec, timeout_s)
        self._persist_job_history(job)
        return job

    def _persist_job_history(self, job: JobState) -> None:
        path = f"/system/jobhistory/{job.job_id}.json"
        if not self.fs.exists(path):
            self.fs.put(json.dumps(job.to_dict(), sort_keys=True).encode(), path)

    # --- hbase ---

    def open_region_server(self, registry=None):
        from minigrid.kvtable import open_region_server

        self.region_server = open_region_server(
            self.config, registry=registry, clock=self.clock, fs=self.fs
        )
        return self.region_server

    # --- state digest (read-only surface verification) ---

    def state_hash(self) -> str:
        fs = self.fs
        with fs._lock:
            doc = {
                "namespace": fs.namespace.to_dict(),
                "block_map": {
                    str(bid): sorted(holders)
                    for bid, holders in fs.namespace.block_map.items()
                },
                "datanodes": [
                    {
                        "id": node_id,
                        "capacity": slot.node.capacity,
                        "non_dfs": slot.node.non_dfs_used,
                        "dfs_used": slot.node.dfs_used,
                        "blocks": sorted(slot.node.block_ids()),
                        "status": slot.status,
                    }
                    for node_id, slot in sorted(fs._nodes.items())
                ],
                "jobs": [job.to_dict() for job in self.jobtracker.jobs()],
                "trackers": [
                    {
                        "id": self.tasktracker.tracker_id,
                        "map_slots": self.tasktracker.map_slots,
                        "reduce_slots": self.tasktracker.reduce_slots,
                    }
                ],
            }
        blob = json.dumps(doc, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    # --- checkpointing ---

    def checkpoint(self) -> Checkpoint:
        return self.fs.checkpoint()

    # --- lifecycle ---

    def status_ports(self) -> list[int]:
        return self.statusd.ports() if self.statusd else []

    def stop(self) -> None:
        self.stopping = True
        if self._pump_thread is not None:
            self._pump_stop.set()
            self._pump_thread.join(timeout=10)
        if self.statusd is not None:
            self.statusd.shutdown()
        self.engine.shutdown()
        self.fs.checkpoint()
        self.fs.close()


def format_cluster(config: Config, clock=None) -> None:
    format_namespace(config.get("hadoop.tmp.dir"), clock)


def ensure_formatted(config: Config) -> None:
    from minigrid.blockfs import editlog

    if not editlog.is_formatted(config.get("hadoop.tmp.dir")):
        raise NotFormatted(
            f"{config.get('hadoop.tmp.dir')} is not formatted; run `minigrid namenode -format`"
        )
