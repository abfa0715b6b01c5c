"""In-memory namespace state: directory tree, file entries, block locations.

This is the NameNode's data structure. It is mutated only through apply_edit
so that live operation, edit-log replay and crash recovery share one code
path. Block locations are soft state rebuilt from datanode block reports,
never written to the edit log.
"""

from dataclasses import dataclass, field

from minigrid.blockfs import paths
from minigrid.errors import FileExists, InvalidReplication, NotFound, PathIsFile


@dataclass
class FileEntry:
    path: str
    blocks: list[tuple[int, int]]  # (block id, length in bytes), in file order
    replication: int
    block_size: int
    created_at: int  # epoch ms
    sealed: bool = True

    @property
    def length(self) -> int:
        return sum(length for _, length in self.blocks)

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "blocks": [[bid, length] for bid, length in self.blocks],
            "replication": self.replication,
            "block_size": self.block_size,
            "created_at": self.created_at,
            "sealed": self.sealed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FileEntry":
        return cls(
            path=d["path"],
            blocks=[(int(b), int(l)) for b, l in d["blocks"]],
            replication=int(d["replication"]),
            block_size=int(d["block_size"]),
            created_at=int(d["created_at"]),
            sealed=bool(d["sealed"]),
        )


def split_lengths(total: int, block_size: int) -> list[int]:
    """Block lengths for a file: all full except a short final block."""
    if total == 0:
        return []
    full, rest = divmod(total, block_size)
    out = [block_size] * full
    if rest:
        out.append(rest)
    return out


@dataclass
class Namespace:
    directories: set[str] = field(default_factory=lambda: {"/"})
    files: dict[str, FileEntry] = field(default_factory=dict)
    block_map: dict[int, set[str]] = field(default_factory=dict)  # block id -> datanode ids
    next_block_id: int = 1

    # --- queries ---

    def is_dir(self, path: str) -> bool:
        return path in self.directories

    def is_file(self, path: str) -> bool:
        return path in self.files

    def exists(self, path: str) -> bool:
        return self.is_dir(path) or self.is_file(path)

    def children(self, dir_path: str) -> list[str]:
        prefix = "/" if dir_path == "/" else dir_path + "/"
        names = set()
        for p in list(self.directories) + list(self.files):
            if p != dir_path and p.startswith(prefix):
                names.add(p[len(prefix):].split("/", 1)[0])
        return sorted(names)

    def file_count(self) -> int:
        return len(self.files)

    def dir_count(self) -> int:
        return len(self.directories)

    def block_count(self) -> int:
        return sum(len(f.blocks) for f in self.files.values())

    def owning_file(self, block_id: int) -> FileEntry | None:
        for entry in self.files.values():
            for bid, _ in entry.blocks:
                if bid == block_id:
                    return entry
        return None

    # --- edits ---

    def apply_edit(self, edit: dict) -> None:
        op = edit["op"]
        if op == "mkdir":
            path = edit["path"]
            if path in self.files:
                raise PathIsFile(f"{path} is a file")
            for anc in paths.ancestors(path):
                if anc in self.files:
                    raise PathIsFile(f"{anc} is a file")
                self.directories.add(anc)
            self.directories.add(path)
        elif op == "create_file":
            entry = FileEntry.from_dict(edit["entry"])
            if entry.path in self.files:
                raise FileExists(entry.path)
            if entry.path in self.directories:
                raise PathIsFile(f"{entry.path} is a directory")
            for anc in paths.ancestors(entry.path):
                if anc in self.files:
                    raise PathIsFile(f"{anc} is a file")
                self.directories.add(anc)
            self.files[entry.path] = entry
            for bid, _ in entry.blocks:
                self.block_map.setdefault(bid, set())
                if bid >= self.next_block_id:
                    self.next_block_id = bid + 1
        elif op == "set_replication":
            path = edit["path"]
            if path not in self.files:
                raise NotFound(path)
            r = int(edit["replication"])
            if r < 1:
                raise InvalidReplication(f"replication must be >= 1, got {r}")
            self.files[path].replication = r
        else:
            raise ValueError(f"unknown edit op {op!r}")

    def allocate_blocks(self, count: int) -> list[int]:
        ids = list(range(self.next_block_id, self.next_block_id + count))
        self.next_block_id += count
        return ids

    # --- block location soft state ---

    def add_replica(self, block_id: int, node_id: str) -> None:
        if block_id in self.block_map:
            self.block_map[block_id].add(node_id)

    def drop_node_replicas(self, node_id: str) -> None:
        for holders in self.block_map.values():
            holders.discard(node_id)

    def known_block(self, block_id: int) -> bool:
        return block_id in self.block_map

    # --- serialization (checkpoint image payload) ---

    def to_dict(self) -> dict:
        return {
            "directories": sorted(self.directories),
            "files": {p: f.to_dict() for p, f in sorted(self.files.items())},
            "next_block_id": self.next_block_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Namespace":
        ns = cls(
            directories=set(d["directories"]),
            files={p: FileEntry.from_dict(fd) for p, fd in d["files"].items()},
            next_block_id=int(d["next_block_id"]),
        )
        for entry in ns.files.values():
            for bid, _ in entry.blocks:
                ns.block_map.setdefault(bid, set())
        return ns

    def snapshot(self) -> dict:
        """Canonical comparable view of the committed namespace."""
        return self.to_dict()
