"""Cluster report arithmetic and the dfsadmin/lsr presentation formats."""

import time
from dataclasses import dataclass

from minigrid.util import human_bytes, pct

OWNER = "hadoop"
GROUP = "supergroup"
DIR_PERMS = "drwxr-xr-x"
FILE_PERMS = "-rw-r--r--"


@dataclass
class NodeReport:
    node_id: str
    status: str  # Normal | Dead
    configured_capacity: int
    dfs_used: int
    non_dfs_used: int
    last_contact_ms: int

    @property
    def dfs_remaining(self) -> int:
        return self.configured_capacity - self.dfs_used - self.non_dfs_used


@dataclass
class ClusterReport:
    configured_capacity: int
    dfs_used: int
    non_dfs_used: int
    under_replicated: int
    corrupt_replica_blocks: int
    missing_blocks: int
    live: int
    dead: int
    datanodes: list[NodeReport]

    @property
    def present_capacity(self) -> int:
        return self.configured_capacity - self.non_dfs_used

    @property
    def dfs_remaining(self) -> int:
        return self.configured_capacity - self.dfs_used - self.non_dfs_used

    def to_dict(self) -> dict:
        return {
            "configured_capacity": self.configured_capacity,
            "present_capacity": self.present_capacity,
            "dfs_remaining": self.dfs_remaining,
            "dfs_used": self.dfs_used,
            "non_dfs_used": self.non_dfs_used,
            "under_replicated": self.under_replicated,
            "corrupt_replica_blocks": self.corrupt_replica_blocks,
            "missing_blocks": self.missing_blocks,
            "live": self.live,
            "dead": self.dead,
            "datanodes": [
                {
                    "name": n.node_id,
                    "status": n.status,
                    "configured_capacity": n.configured_capacity,
                    "dfs_used": n.dfs_used,
                    "non_dfs_used": n.non_dfs_used,
                    "dfs_remaining": n.dfs_remaining,
                    "last_contact_ms": n.last_contact_ms,
                }
                for n in self.datanodes
            ],
        }


def _size_line(label: str, value: int) -> str:
    return f"{label}: {value} ({human_bytes(value)})"


def format_report(report: ClusterReport) -> str:
    """The dfsadmin -report text block."""
    lines = [
        _size_line("Configured Capacity", report.configured_capacity),
        _size_line("Present Capacity", report.present_capacity),
        _size_line("DFS Remaining", report.dfs_remaining),
        _size_line("DFS Used", report.dfs_used),
        f"DFS Used%: {pct(report.dfs_used, report.configured_capacity)}",
        f"Under replicated blocks: {report.under_replicated}",
        f"Blocks with corrupt replicas: {report.corrupt_replica_blocks}",
        f"Missing blocks: {report.missing_blocks}",
        "",
        "-------------------------------------------------",
        f"Datanodes available: {report.live} ({report.live + report.dead} total, {report.dead} dead)",
        "",
    ]
    for node in report.datanodes:
        lines += [
            f"Name: {node.node_id}",
            f"Decommission Status : {node.status}",
            _size_line("Configured Capacity", node.configured_capacity),
            _size_line("DFS Used", node.dfs_used),
            _size_line("Non DFS Used", node.non_dfs_used),
            _size_line("DFS Remaining", node.dfs_remaining),
            f"DFS Used%: {pct(node.dfs_used, node.configured_capacity)}",
            f"DFS Remaining%: {pct(node.dfs_remaining, node.configured_capacity)}",
            f"Last contact: {format_contact(node.last_contact_ms)}",
            "",
        ]
    return "\n".join(lines).rstrip("\n")


def format_contact(epoch_ms: int) -> str:
    return time.strftime("%a %b %d %H:%M:%S %Z %Y", time.localtime(epoch_ms / 1000))


@dataclass
class ListingRow:
    path: str
    is_dir: bool
    replication: int
    size: int
    mtime_ms: int


def format_listing_row(row: ListingRow) -> str:
    perms = DIR_PERMS if row.is_dir else FILE_PERMS
    repl = "-" if row.is_dir else str(row.replication)
    stamp = time.strftime("%Y-%m-%d %H:%M", time.localtime(row.mtime_ms / 1000))
    return f"{perms} {repl:>3} {OWNER} {GROUP} {row.size:>10} {stamp} {row.path}"
