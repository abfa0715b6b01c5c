"""key=value configuration files.

Format: one ``key=value`` per line, ``#`` starts a comment, blank lines are
ignored. ``--config <path>`` on the CLI wins over the MINIGRID_CONF
environment variable; built-in defaults fill the rest.
"""

import os

DEFAULTS = {
    "fs.default.name": "dfs://localhost:9000",
    "hadoop.tmp.dir": "/tmp/minigrid-${user.name}",
    "dfs.replication": "1",
    "dfs.block.size": str(64 * 1024 * 1024),
    "dfs.datanode.capacity": str(302827593728),
    "dfs.datanode.nondfs": str(19106844657),
    "mapred.job.tracker": "localhost:9001",
    "mapred.tasktracker.map.slots": "2",
    "mapred.tasktracker.reduce.slots": "2",
    "mapred.task.retries": "2",
    "hbase.rootdir": "",
    "hbase.regionserver.codecs": "",
    "hbase.zookeeper.property.dataDir": "",
    "status.port": "50070",
    "status.multiport": "false",
}

_SIZE_SUFFIXES = {
    "k": 1024,
    "kb": 1024,
    "kib": 1024,
    "m": 1024 ** 2,
    "mb": 1024 ** 2,
    "mib": 1024 ** 2,
    "g": 1024 ** 3,
    "gb": 1024 ** 3,
    "gib": 1024 ** 3,
}


def parse_size(text: str) -> int:
    """Parse '64MiB', '1m', '1048576' ... into bytes."""
    s = text.strip().lower()
    for suffix in sorted(_SIZE_SUFFIXES, key=len, reverse=True):
        if s.endswith(suffix):
            return int(float(s[: -len(suffix)]) * _SIZE_SUFFIXES[suffix])
    return int(s)


class Config:
    def __init__(self, values: dict[str, str] | None = None):
        self._values = dict(DEFAULTS)
        if values:
            self._values.update(values)

    @classmethod
    def load(cls, path: str | None = None) -> "Config":
        """Load from `path`, else $MINIGRID_CONF, else defaults only."""
        if path is None:
            path = os.environ.get("MINIGRID_CONF")
        values = {}
        if path:
            with open(path, "r", encoding="utf-8") as fh:
                for lineno, raw in enumerate(fh, 1):
                    line = raw.split("#", 1)[0].strip()
                    if not line:
                        continue
                    if "=" not in line:
                        raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
                    key, value = line.split("=", 1)
                    values[key.strip()] = value.strip()
        return cls(values)

    def get(self, key: str, default: str | None = None) -> str:
        value = self._values.get(key, default)
        if value is None:
            raise KeyError(key)
        return self._expand(value)

    def get_int(self, key: str) -> int:
        return int(self.get(key))

    def get_size(self, key: str) -> int:
        return parse_size(self.get(key))

    def get_bool(self, key: str) -> bool:
        return self.get(key).strip().lower() in ("1", "true", "yes", "on")

    def set(self, key: str, value: str) -> None:
        self._values[key] = value

    @staticmethod
    def _expand(value: str) -> str:
        return value.replace("${user.name}", os.environ.get("USER", "hadoop"))

    def as_dict(self) -> dict[str, str]:
        return {k: self._expand(v) for k, v in self._values.items()}
