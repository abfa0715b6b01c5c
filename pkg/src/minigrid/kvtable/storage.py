"""Storage backends for table data: a local directory or a MiniDfs tree.

Store files are written once and never rewritten, so both backends satisfy
the write-once filesystem's contract.
"""

import os

from minigrid.blockfs import MiniDfs
from minigrid.errors import NotFound


class LocalStorage:
    def __init__(self, base_dir: str):
        self.base = base_dir
        os.makedirs(base_dir, exist_ok=True)

    def _path(self, rel: str) -> str:
        return os.path.join(self.base, rel)

    def write_file(self, rel: str, data: bytes) -> None:
        path = self._path(rel)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "wb") as fh:
            fh.write(data)

    def read_file(self, rel: str) -> bytes:
        try:
            with open(self._path(rel), "rb") as fh:
                return fh.read()
        except FileNotFoundError:
            raise NotFound(rel) from None

    def exists(self, rel: str) -> bool:
        return os.path.exists(self._path(rel))

    def list_dir(self, rel: str) -> list[str]:
        path = self._path(rel)
        if not os.path.isdir(path):
            return []
        return sorted(os.listdir(path))


class DfsStorage:
    def __init__(self, fs: MiniDfs, base_path: str):
        self.fs = fs
        self.base = base_path.rstrip("/") or "/"
        fs.mkdir(self.base)

    def _path(self, rel: str) -> str:
        return self.base.rstrip("/") + "/" + rel

    def write_file(self, rel: str, data: bytes) -> None:
        self.fs.put(data, self._path(rel))

    def read_file(self, rel: str) -> bytes:
        return self.fs.cat(self._path(rel))

    def exists(self, rel: str) -> bool:
        return self.fs.exists(self._path(rel))

    def list_dir(self, rel: str) -> list[str]:
        path = self._path(rel)
        if not self.fs.exists(path):
            return []
        return [e.path.rsplit("/", 1)[-1] for e in self.fs.list_files(path)]
