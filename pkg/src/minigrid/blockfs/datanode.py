"""Simulated block-storage node: one file per block under <root>/data/<node>/.

Capacity and non-DFS usage come from configuration, not the host disk, so
reports stay deterministic.
"""

import os

from minigrid.errors import InsufficientSpace, MissingBlock

STATUS_NORMAL = "Normal"
STATUS_DEAD = "Dead"


class DataNode:
    def __init__(self, node_id: str, storage_dir: str, capacity: int, non_dfs_used: int):
        self.node_id = node_id
        self.capacity = capacity
        self.non_dfs_used = non_dfs_used
        self._dir = storage_dir
        os.makedirs(self._dir, exist_ok=True)
        self._lengths: dict[int, int] = {}
        for name in os.listdir(self._dir):
            if name.startswith("blk_"):
                bid = int(name[4:])
                self._lengths[bid] = os.path.getsize(os.path.join(self._dir, name))

    @property
    def dfs_used(self) -> int:
        return sum(self._lengths.values())

    @property
    def dfs_remaining(self) -> int:
        return self.capacity - self.dfs_used - self.non_dfs_used

    def block_ids(self) -> set[int]:
        return set(self._lengths)

    def has_block(self, block_id: int) -> bool:
        return block_id in self._lengths

    def _block_path(self, block_id: int) -> str:
        return os.path.join(self._dir, f"blk_{block_id}")

    def store_block(self, block_id: int, payload: bytes) -> None:
        if self.dfs_used + self.non_dfs_used + len(payload) > self.capacity:
            raise InsufficientSpace(
                f"datanode {self.node_id}: {len(payload)} bytes exceed remaining capacity"
            )
        with open(self._block_path(block_id), "wb") as fh:
            fh.write(payload)
        self._lengths[block_id] = len(payload)

    def read_block(self, block_id: int) -> bytes:
        if block_id not in self._lengths:
            raise MissingBlock(f"datanode {self.node_id} does not hold block {block_id}")
        with open(self._block_path(block_id), "rb") as fh:
            return fh.read()

    def delete_block(self, block_id: int) -> None:
        if block_id in self._lengths:
            os.remove(self._block_path(block_id))
            del self._lengths[block_id]

    # test hook: replica loss without bookkeeping anywhere else
    def drop_block(self, block_id: int) -> None:
        self.delete_block(block_id)
