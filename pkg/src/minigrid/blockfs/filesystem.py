"""MiniDfs: the write-once filesystem facade tying namespace, edit log and
datanodes together.

Namespace mutations are serialized through one lock (single logical writer);
block payload IO goes straight to the datanodes. Every mutation is an edit
record appended and flushed before the call returns.
"""

import os
import threading
from dataclasses import dataclass

from minigrid.blockfs import editlog, paths
from minigrid.blockfs.datanode import STATUS_DEAD, STATUS_NORMAL, DataNode
from minigrid.blockfs.namespace import FileEntry, Namespace, split_lengths
from minigrid.blockfs.report import ClusterReport, ListingRow, NodeReport
from minigrid.clock import WallClock
from minigrid.errors import (
    FileExists,
    InsufficientSpace,
    InvalidReplication,
    IsDirectory,
    MissingBlock,
    NotFormatted,
    NotFound,
    PathIsFile,
    RootLocked,
    UnknownDataNode,
)

DEFAULT_BLOCK_SIZE = 64 * 1024 * 1024
DEFAULT_HEARTBEAT_INTERVAL_MS = 3000
DEAD_AFTER_MISSED = 10

LOCK_FILE = "in_use.lock"


@dataclass
class Checkpoint:
    image: bytes
    edit_log_offset: int
    taken_at: int


def _lock_path(root: str) -> str:
    return os.path.join(root, LOCK_FILE)


def _pid_alive(pid: int) -> bool:
    try:
        os.kill(pid, 0)
    except ProcessLookupError:
        return False
    except PermissionError:
        return True
    return True


def acquire_root_lock(root: str) -> None:
    path = _lock_path(root)
    while True:
        try:
            fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            try:
                with open(path) as fh:
                    holder = int(fh.read().strip() or "0")
            except (OSError, ValueError):
                holder = 0
            if holder and holder != os.getpid() and _pid_alive(holder):
                raise RootLocked(f"{root} is in use by pid {holder}") from None
            os.remove(path)  # stale lock from a dead process
            continue
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        return


def release_root_lock(root: str) -> None:
    try:
        os.remove(_lock_path(root))
    except FileNotFoundError:
        pass


def check_root_unlocked(root: str) -> None:
    path = _lock_path(root)
    if os.path.exists(path):
        try:
            with open(path) as fh:
                holder = int(fh.read().strip() or "0")
        except (OSError, ValueError):
            holder = 0
        if holder and _pid_alive(holder):
            raise RootLocked(f"{root} is in use by pid {holder}")
        os.remove(path)


@dataclass
class _NodeSlot:
    node: DataNode
    last_heartbeat: int
    status: str


class MiniDfs:
    """Single-writer namespace over simulated datanodes. Thread-safe."""

    def __init__(
        self,
        root: str,
        clock=None,
        datanode_specs: list[tuple[str, int, int]] | None = None,
        default_block_size: int = DEFAULT_BLOCK_SIZE,
        default_replication: int = 1,
        heartbeat_interval_ms: int = DEFAULT_HEARTBEAT_INTERVAL_MS,
        acquire_lock: bool = True,
    ):
        if not editlog.is_formatted(root):
            raise NotFormatted(f"{root} has no namespace image; run namenode -format")
        self.root = root
        self.clock = clock or WallClock()
        self.default_block_size = default_block_size
        self.default_replication = default_replication
        self.heartbeat_interval_ms = heartbeat_interval_ms
        self.expiry_ms = heartbeat_interval_ms * DEAD_AFTER_MISSED
        self._lock = threading.RLock()
        self._holds_root_lock = False
        if acquire_lock:
            acquire_root_lock(root)
            self._holds_root_lock = True
        self.namespace = editlog.recover_namespace(root)
        self._editlog = editlog.EditLog(root)
        self._nodes: dict[str, _NodeSlot] = {}
        for node_id, capacity, non_dfs in datanode_specs or []:
            self.register_datanode(node_id, capacity, non_dfs)

    # --- datanode membership ---

    def register_datanode(self, node_id: str, capacity: int, non_dfs_used: int) -> DataNode:
        with self._lock:
            storage = os.path.join(self.root, "data", node_id.replace(":", "_"))
            node = DataNode(node_id, storage, capacity, non_dfs_used)
            self._nodes[node_id] = _NodeSlot(node, self.clock.now_ms(), STATUS_NORMAL)
            self._sync_block_report(node)
            return node

    def _sync_block_report(self, node: DataNode) -> list[dict]:
        """Adopt known replicas, order deletion of unknown blocks."""
        commands = []
        stale = [bid for bid in node.block_ids() if not self.namespace.known_block(bid)]
        if stale:
            commands.append({"action": "delete", "blocks": sorted(stale)})
            for bid in stale:
                node.delete_block(bid)
        for bid in node.block_ids():
            self.namespace.add_replica(bid, node.node_id)
        return commands

    def heartbeat(self, node_id: str, blocks: set[int] | None = None) -> list[dict]:
        with self._lock:
            slot = self._nodes.get(node_id)
            if slot is None:
                raise UnknownDataNode(node_id)
            revived = slot.status == STATUS_DEAD
            slot.last_heartbeat = self.clock.now_ms()
            slot.status = STATUS_NORMAL
            commands = []
            if revived or blocks is not None:
                commands.extend(self._sync_block_report(slot.node))
            self._expire_silent_nodes()
            commands.extend(self._replication_work(slot.node))
            return commands

    def _replication_work(self, node: DataNode) -> list[dict]:
        live = self._live_node_ids()
        commands = []
        for path_entry in self.namespace.files.values():
            for bid, _ in path_entry.blocks:
                if not node.has_block(bid):
                    continue
                holders = self.namespace.block_map.get(bid, set())
                deficit = path_entry.replication - len(holders & set(live))
                targets = sorted(set(live) - holders)
                if deficit > 0 and targets:
                    commands.append(
                        {"action": "replicate", "block": bid, "targets": targets[:deficit]}
                    )
        return commands

    def _expire_silent_nodes(self) -> None:
        now = self.clock.now_ms()
        for slot in self._nodes.values():
            if slot.status == STATUS_NORMAL and now - slot.last_heartbeat > self.expiry_ms:
                slot.status = STATUS_DEAD
                self.namespace.drop_node_replicas(slot.node.node_id)

    def _live_node_ids(self) -> list[str]:
        return sorted(
            node_id for node_id, slot in self._nodes.items() if slot.status == STATUS_NORMAL
        )

    def datanode(self, node_id: str) -> DataNode:
        return self._nodes[node_id].node

    # --- namespace operations ---

    def mkdir(self, path: str) -> str:
        path = paths.normalize(path)
        with self._lock:
            if self.namespace.is_dir(path):
                return path  # idempotent
            if self.namespace.is_file(path):
                raise PathIsFile(f"{path} is a file")
            for anc in paths.ancestors(path):
                if self.namespace.is_file(anc):
                    raise PathIsFile(f"{anc} is a file")
            self._commit({"op": "mkdir", "path": path, "at": self.clock.now_ms()})
            return path

    def put(
        self,
        data: bytes,
        dfs_path: str,
        replication: int | None = None,
        block_size: int | None = None,
    ) -> FileEntry:
        dfs_path = paths.normalize(dfs_path)
        replication = self.default_replication if replication is None else replication
        block_size = self.default_block_size if block_size is None else block_size
        if replication < 1:
            raise InvalidReplication(f"replication must be >= 1, got {replication}")
        if block_size < 1:
            raise ValueError(f"block size must be >= 1, got {block_size}")
        with self._lock:
            if self.namespace.is_file(dfs_path):
                raise FileExists(f"{dfs_path} already exists (files are write-once)")
            if self.namespace.is_dir(dfs_path):
                raise PathIsFile(f"{dfs_path} is a directory")
            for anc in paths.ancestors(dfs_path):
                if self.namespace.is_file(anc):
                    raise PathIsFile(f"{anc} is a file")
            self._expire_silent_nodes()
            live = self._live_node_ids()
            lengths = split_lengths(len(data), block_size)
            if lengths and not live:
                raise InsufficientSpace("no live datanodes to hold block replicas")
            targets = live[: max(1, min(replication, len(live)))] if lengths else []
            block_ids = self.namespace.allocate_blocks(len(lengths))
            stored: list[tuple[str, int]] = []
            try:
                offset = 0
                for bid, length in zip(block_ids, lengths):
                    chunk = data[offset:offset + length]
                    offset += length
                    for node_id in targets:
                        self._nodes[node_id].node.store_block(bid, chunk)
                        stored.append((node_id, bid))
            except InsufficientSpace:
                for node_id, bid in stored:
                    self._nodes[node_id].node.delete_block(bid)
                raise
            entry = FileEntry(
                path=dfs_path,
                blocks=list(zip(block_ids, lengths)),
                replication=replication,
                block_size=block_size,
                created_at=self.clock.now_ms(),
                sealed=True,
            )
            self._commit({"op": "create_file", "entry": entry.to_dict()})
            for node_id, bid in stored:
                self.namespace.add_replica(bid, node_id)
            return entry

    def cat(self, dfs_path: str) -> bytes:
        dfs_path = paths.normalize(dfs_path)
        with self._lock:
            if self.namespace.is_dir(dfs_path):
                raise IsDirectory(f"{dfs_path} is a directory")
            entry = self.namespace.files.get(dfs_path)
            if entry is None:
                raise NotFound(dfs_path)
            self._expire_silent_nodes()
            live = set(self._live_node_ids())
            parts = []
            for bid, length in entry.blocks:
                holders = sorted(self.namespace.block_map.get(bid, set()) & live)
                payload = None
                for node_id in holders:
                    node = self._nodes[node_id].node
                    if node.has_block(bid):
                        payload = node.read_block(bid)
                        break
                if payload is None or len(payload) != length:
                    raise MissingBlock(f"no replica holds block {bid} of {dfs_path}")
                parts.append(payload)
            return b"".join(parts)

    def exists(self, dfs_path: str) -> bool:
        return self.namespace.exists(paths.normalize(dfs_path))

    def list_files(self, dir_path: str) -> list[FileEntry]:
        """Plain files directly inside dir_path, sorted by path."""
        dir_path = paths.normalize(dir_path)
        with self._lock:
            if not self.namespace.is_dir(dir_path):
                raise NotFound(dir_path)
            out = []
            for name in self.namespace.children(dir_path):
                child = paths.join(dir_path, name)
                if self.namespace.is_file(child):
                    out.append(self.namespace.files[child])
            return out

    def lsr(self, path: str = "/") -> list[ListingRow]:
        path = paths.normalize(path)
        with self._lock:
            if self.namespace.is_file(path):
                return [self._row_for(path)]
            if not self.namespace.is_dir(path):
                raise NotFound(path)
            rows: list[ListingRow] = []

            def walk(dir_path: str) -> None:
                for name in self.namespace.children(dir_path):
                    child = paths.join(dir_path, name)
                    rows.append(self._row_for(child))
                    if self.namespace.is_dir(child):
                        walk(child)

            walk(path)
            return rows

    def _row_for(self, path: str) -> ListingRow:
        if self.namespace.is_dir(path):
            return ListingRow(path=path, is_dir=True, replication=0, size=0,
                              mtime_ms=self.clock.now_ms())
        entry = self.namespace.files[path]
        return ListingRow(
            path=path,
            is_dir=False,
            replication=entry.replication,
            size=entry.length,
            mtime_ms=entry.created_at,
        )

    def set_replication(self, dfs_path: str, replication: int) -> FileEntry:
        dfs_path = paths.normalize(dfs_path)
        if replication < 1:
            raise InvalidReplication(f"replication must be >= 1, got {replication}")
        with self._lock:
            if dfs_path not in self.namespace.files:
                raise NotFound(dfs_path)
            self._commit(
                {"op": "set_replication", "path": dfs_path, "replication": replication}
            )
            return self.namespace.files[dfs_path]

    # --- reporting ---

    def admin_report(self) -> ClusterReport:
        with self._lock:
            self._expire_silent_nodes()
            live_ids = set(self._live_node_ids())
            under = 0
            missing = 0
            for entry in self.namespace.files.values():
                for bid, _ in entry.blocks:
                    replicas = len(self.namespace.block_map.get(bid, set()) & live_ids)
                    if replicas < entry.replication:
                        under += 1
                    if replicas == 0:
                        missing += 1
            nodes = [
                NodeReport(
                    node_id=node_id,
                    status=slot.status,
                    configured_capacity=slot.node.capacity,
                    dfs_used=slot.node.dfs_used,
                    non_dfs_used=slot.node.non_dfs_used,
                    last_contact_ms=slot.last_heartbeat,
                )
                for node_id, slot in sorted(self._nodes.items())
            ]
            live_nodes = [n for n in nodes if n.status == STATUS_NORMAL]
            return ClusterReport(
                configured_capacity=sum(n.configured_capacity for n in live_nodes),
                dfs_used=sum(n.dfs_used for n in live_nodes),
                non_dfs_used=sum(n.non_dfs_used for n in live_nodes),
                under_replicated=under,
                corrupt_replica_blocks=0,
                missing_blocks=missing,
                live=len(live_nodes),
                dead=len(nodes) - len(live_nodes),
                datanodes=nodes,
            )

    def summary(self) -> dict:
        with self._lock:
            return {
                "files": self.namespace.file_count(),
                "directories": self.namespace.dir_count(),
                "blocks": self.namespace.block_count(),
            }

    # --- checkpointing ---

    def checkpoint(self) -> Checkpoint:
        with self._lock:
            offset = self._editlog.offset()
            payload = editlog.write_image(self.root, self.namespace, offset,
                                          self.clock.now_ms())
            return Checkpoint(image=payload, edit_log_offset=offset,
                              taken_at=self.clock.now_ms())

    # --- lifecycle ---

    def _commit(self, edit: dict) -> None:
        self._editlog.append(edit)
        self.namespace.apply_edit(edit)

    def close(self) -> None:
        with self._lock:
            self._editlog.close()
            if self._holds_root_lock:
                release_root_lock(self.root)
                self._holds_root_lock = False

    def crash(self) -> None:
        """Test hook: die without clean shutdown (edits keep their torn tail)."""
        self._editlog.close()
        if self._holds_root_lock:
            release_root_lock(self.root)
            self._holds_root_lock = False


def format_namespace(root: str, clock=None) -> Namespace:
    """Erase and re-create the namespace under root; refuses while locked."""
    clock = clock or WallClock()
    check_root_unlocked(root)
    os.makedirs(root, exist_ok=True)
    name = editlog.name_dir(root)
    data = os.path.join(root, "data")
    for directory in (name, data):
        if os.path.isdir(directory):
            _rmtree(directory)
        os.makedirs(directory, exist_ok=True)
    ns = Namespace()
    with open(os.path.join(name, "edits"), "wb"):
        pass
    editlog.write_image(root, ns, 0, clock.now_ms())
    return ns


def _rmtree(path: str) -> None:
    import shutil

    shutil.rmtree(path)


def recover(root: str) -> Namespace:
    """Rebuild the committed namespace from the latest image plus edit replay."""
    return editlog.recover_namespace(root)
