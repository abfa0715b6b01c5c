"""Read-only HTTP status surface.

One listener serves the NameNode, JobTracker and TaskTracker pages as path
prefixes (/dfshealth, /jobtracker, /tasktracker, /browse); an optional
multiport mode binds the classic three ports for fidelity. GET only; the
Accept header switches between plain text and JSON renderings of the same
snapshot.
"""

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from minigrid.blockfs import format_listing_row
from minigrid.errors import MinigridError, NotFound, PortInUse
from minigrid.mrengine.types import format_counters
from minigrid.util import human_bytes, pct


def _fmt_when(epoch_ms: int | None) -> str:
    if not epoch_ms:
        return "-"
    return time.strftime("%a %b %d %H:%M:%S %Z %Y", time.localtime(epoch_ms / 1000))


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, *args):  # keep the test output quiet
        pass

    @property
    def cluster(self):
        return self.server.cluster

    def _wants_json(self) -> bool:
        return "application/json" in self.headers.get("Accept", "")

    def _send(self, code: int, body: bytes, content_type: str) -> None:
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _reply(self, code: int, text_lines: list[str], doc) -> None:
        if self._wants_json():
            self._send(code, json.dumps(doc, sort_keys=True).encode() + b"\n",
                       "application/json")
        else:
            self._send(code, ("\n".join(text_lines) + "\n").encode(), "text/plain")

    def _not_found(self, what: str) -> None:
        self._reply(404, [f"not found: {what}"], {"error": f"not found: {what}"})

    def do_GET(self):
        if self.cluster.stopping:
            self._reply(503, ["cluster stopping"], {"error": "cluster stopping"})
            return
        path = self.path.split("?", 1)[0].rstrip("/") or "/"
        try:
            if path == "/components":
                self._components()
            elif path == "/dfshealth":
                self._dfshealth()
            elif path == "/jobtracker":
                self._jobtracker()
            elif path.startswith("/jobtracker/job/"):
                self._job_detail(path[len("/jobtracker/job/"):])
            elif path == "/tasktracker":
                self._tasktracker()
            elif path == "/browse" or path.startswith("/browse/"):
                self._browse(path[len("/browse"):] or "/")
            elif path == "/":
                self._index()
            else:
                self._not_found(path)
        except NotFound as exc:
            self._not_found(str(exc))
        except MinigridError as exc:
            self._reply(500, [f"error: {exc}"], {"error": str(exc)})

    # --- pages ---

    def _index(self):
        lines = ["minigrid status", "", "/dfshealth", "/jobtracker",
                 "/tasktracker", "/browse/<path>", "/components"]
        self._reply(200, lines, {"endpoints": lines[2:]})

    def _components(self):
        lines = self.cluster.component_lines()
        self._reply(200, lines, {"components": self.cluster.components()})

    def _dfshealth(self):
        fs = self.cluster.fs
        report = fs.admin_report()
        summary = fs.summary()
        fd = summary["files"] + summary["directories"]
        doc = {
            "files_and_directories": fd,
            "blocks": summary["blocks"],
            "configured_capacity": report.configured_capacity,
            "present_capacity": report.present_capacity,
            "dfs_remaining": report.dfs_remaining,
            "dfs_used": report.dfs_used,
            "non_dfs_used": report.non_dfs_used,
            "under_replicated": report.under_replicated,
            "missing_blocks": report.missing_blocks,
            "live": report.live,
            "dead": report.dead,
        }
        lines = [
            "NameNode status",
            "",
            "Cluster Summary",
            f"{fd} files and directories, {summary['blocks']} blocks = "
            f"{fd + summary['blocks']} total.",
            f"Configured Capacity: {report.configured_capacity} "
            f"({human_bytes(report.configured_capacity)})",
            f"Present Capacity: {report.present_capacity} "
            f"({human_bytes(report.present_capacity)})",
            f"DFS Remaining: {report.dfs_remaining} ({human_bytes(report.dfs_remaining)})",
            f"DFS Used: {report.dfs_used} ({human_bytes(report.dfs_used)})",
            f"DFS Used%: {pct(report.dfs_used, report.configured_capacity)}",
            f"DFS Remaining%: {pct(report.dfs_remaining, report.configured_capacity)}",
            f"Under replicated blocks: {report.under_replicated}",
            f"Missing blocks: {report.missing_blocks}",
            f"Live Nodes : {report.live}",
            f"Dead Nodes : {report.dead}",
        ]
        self._reply(200, lines, doc)

    def _jobtracker(self):
        jobs = self.cluster.jobtracker.jobs()
        doc = {"jobs": [job.to_dict() for job in jobs]}
        lines = ["JobTracker status", ""]
        if not jobs:
            lines.append("no jobs")
        for job in jobs:
            lines.append(
                f"{job.job_id} {job.name} {job.phase} "
                f"map {job.map_pct}% reduce {job.reduce_pct}%"
            )
        self._reply(200, lines, doc)

    def _job_detail(self, job_id: str):
        job = self.cluster.jobtracker.job(job_id)
        if job is None:
            self._not_found(f"job {job_id}")
            return
        doc = job.to_dict()
        lines = [
            f"Job: {job.job_id}",
            "User: hadoop",
            f"Job Name: {job.name}",
            f"Status: {job.phase}",
            f"Started at: {_fmt_when(job.started_at)}",
            f"Finished at: {_fmt_when(job.finished_at)}",
        ]
        if job.finished_at is not None:
            lines.append(f"Finished in: {(job.finished_at - job.started_at) // 1000}sec")
        lines += [
            "",
            "Kind\t% Complete\tNum Tasks\tPending\tRunning\tComplete\tKilled",
        ]
        for row in job.task_table():
            lines.append(
                f"{row['kind']}\t{row['pct_complete']:.2f}%\t{row['num_tasks']}\t"
                f"{row['pending']}\t{row['running']}\t{row['complete']}\t{row['killed']}"
            )
        lines.append("")
        lines.extend(format_counters(job.counters))
        self._reply(200, lines, doc)

    def _tasktracker(self):
        tracker = self.cluster.tasktracker
        running = tracker.running_counts()
        doc = {
            "tracker_id": tracker.tracker_id,
            "map_slots": tracker.map_slots,
            "reduce_slots": tracker.reduce_slots,
            "running_map_tasks": running["map"],
            "running_reduce_tasks": running["reduce"],
        }
        lines = [
            f"TaskTracker {tracker.tracker_id}",
            f"map slots: {tracker.map_slots}",
            f"reduce slots: {tracker.reduce_slots}",
            f"running map tasks: {running['map']}",
            f"running reduce tasks: {running['reduce']}",
        ]
        self._reply(200, lines, doc)

    def _browse(self, dfs_path: str):
        fs = self.cluster.fs
        if fs.namespace.is_file(dfs_path):
            self._send(200, fs.cat(dfs_path), "application/octet-stream")
            return
        rows = fs.lsr(dfs_path)  # NotFound propagates to the 404 handler
        doc = {
            "path": dfs_path,
            "entries": [
                {
                    "path": r.path,
                    "dir": r.is_dir,
                    "replication": r.replication,
                    "size": r.size,
                }
                for r in rows
            ],
        }
        self._reply(200, [format_listing_row(r) for r in rows], doc)


class StatusServer:
    """Bound listener set; every port serves every page."""

    def __init__(self, cluster, ports: list[int], host: str = "127.0.0.1"):
        self._servers: list[ThreadingHTTPServer] = []
        self._threads: list[threading.Thread] = []
        for port in ports:
            try:
                server = ThreadingHTTPServer((host, port), _Handler)
            except OSError as exc:
                self.shutdown()
                raise PortInUse(f"cannot bind status port {port}: {exc}") from None
            server.cluster = cluster
            server.daemon_threads = True
            thread = threading.Thread(
                target=server.serve_forever, name=f"statusd-{port}", daemon=True
            )
            thread.start()
            self._servers.append(server)
            self._threads.append(thread)

    def ports(self) -> list[int]:
        return [server.server_address[1] for server in self._servers]

    def shutdown(self) -> None:
        for server in self._servers:
            server.shutdown()
            server.server_close()
        for thread in self._threads:
            thread.join(timeout=5)
        self._servers = []
        self._threads = []
