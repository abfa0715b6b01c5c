"""Single region server: tables, memstores, flushes and the codec gate.

Startup probes every codec named in hbase.regionserver.codecs with a
round-trip self-test and refuses to run if any is missing or broken, so a
server that started is guaranteed to have all configured codecs working.
"""

import json
import logging
import threading
from dataclasses import dataclass

from minigrid.clock import WallClock
from minigrid.codec import CodecRegistry, default_registry
from minigrid.errors import (
    CodecUnavailable,
    IoFailure,
    TableExists,
    UnknownFamily,
    UnknownTable,
)
from minigrid.kvtable.cells import Cell
from minigrid.kvtable.storefile import StoreFileReader, write_store_file

logger = logging.getLogger(__name__)

PROBE_PAYLOAD = (b"minigrid codec self-test \x00\x01\x02\xfe\xff " * 64) + bytes(range(256))


@dataclass(frozen=True)
class TableSchema:
    name: str
    families: tuple[tuple[str, str], ...]  # (family name, codec name)

    def codec_for(self, family: str) -> str:
        for fam, codec_name in self.families:
            if fam == family:
                return codec_name
        raise UnknownFamily(f"table {self.name!r} has no family {family!r}")

    def family_names(self) -> list[str]:
        return [fam for fam, _ in self.families]

    def to_dict(self) -> dict:
        return {"name": self.name, "families": [list(f) for f in self.families]}

    @classmethod
    def from_dict(cls, d: dict) -> "TableSchema":
        return cls(d["name"], tuple((f, c) for f, c in d["families"]))


class _Table:
    def __init__(self, schema: TableSchema):
        self.schema = schema
        self.memstore: list[tuple[Cell, int]] = []  # (cell, insertion seq)
        self.readers: list[StoreFileReader] = []  # oldest first
        self.next_seq = 0
        self.next_file = 0


def probe_codec(name: str, registry: CodecRegistry) -> None:
    """Round-trip self-test; CodecUnavailable if missing or broken."""
    try:
        codec = registry.get(name)
        restored = codec.decompress(codec.compress(PROBE_PAYLOAD))
    except Exception:
        raise CodecUnavailable(name) from None
    if restored != PROBE_PAYLOAD:
        raise CodecUnavailable(name)


class RegionServer:
    def __init__(
        self,
        storage,
        codecs: list[str] | None = None,
        registry: CodecRegistry | None = None,
        clock=None,
    ):
        self.storage = storage
        self.registry = registry if registry is not None else default_registry()
        self.clock = clock or WallClock()
        self._lock = threading.RLock()
        for name in codecs or []:
            probe_codec(name, self.registry)
        self._tables: dict[str, _Table] = {}
        self._load_tables()

    def _load_tables(self) -> None:
        for name in self.storage.list_dir(""):
            schema_rel = f"{name}/schema.json"
            if not self.storage.exists(schema_rel):
                continue
            schema = TableSchema.from_dict(json.loads(self.storage.read_file(schema_rel)))
            table = _Table(schema)
            for fam in schema.family_names():
                codec = self.registry.get(schema.codec_for(fam))
                for file_name in self.storage.list_dir(f"{name}/{fam}"):
                    blob = self.storage.read_file(f"{name}/{fam}/{file_name}")
                    table.readers.append(StoreFileReader(blob, codec))
                    table.next_file += 1
            self._tables[name] = table

    # --- DDL ---

    def create_table(self, name: str, families: list[tuple[str, str]]) -> TableSchema:
        with self._lock:
            if name in self._tables:
                raise TableExists(name)
            for fam, codec_name in families:
                self.registry.get(codec_name)  # UnknownCodec if unregistered
            schema = TableSchema(name, tuple(families))
            self.storage.write_file(
                f"{name}/schema.json", json.dumps(schema.to_dict()).encode()
            )
            self._tables[name] = _Table(schema)
            return schema

    def table_names(self) -> list[str]:
        with self._lock:
            return sorted(self._tables)

    def schema(self, table: str) -> TableSchema:
        return self._table(table).schema

    def _table(self, name: str) -> _Table:
        table = self._tables.get(name)
        if table is None:
            raise UnknownTable(name)
        return table

    # --- writes ---

    def put_cell(
        self,
        table: str,
        row: bytes,
        family: str,
        qualifier: bytes,
        value: bytes,
        timestamp: int | None = None,
    ) -> Cell:
        with self._lock:
            t = self._table(table)
            t.schema.codec_for(family)  # UnknownFamily check
            ts = self.clock.now_ms() if timestamp is None else timestamp
            cell = Cell(row, family, qualifier, ts, value)
            t.memstore.append((cell, t.next_seq))
            t.next_seq += 1
            return cell

    def flush(self, table: str) -> list[str]:
        """Write one store file per family holding memstore cells; returns
        the new file names."""
        with self._lock:
            t = self._table(table)
            if not t.memstore:
                return []
            written = []
            by_family: dict[str, list[tuple[Cell, int]]] = {}
            for cell, seq in t.memstore:
                by_family.setdefault(cell.family, []).append((cell, seq))
            try:
                for fam in t.schema.family_names():
                    entries = by_family.get(fam)
                    if not entries:
                        continue
                    entries.sort(key=lambda e: (*e[0].sort_key(), -e[1]))
                    codec = self.registry.get(t.schema.codec_for(fam))
                    blob = write_store_file([c for c, _ in entries], fam, codec)
                    rel = f"{table}/{fam}/sf-{t.next_file:06d}.msf"
                    t.next_file += 1
                    self.storage.write_file(rel, blob)
                    t.readers.append(StoreFileReader(blob, codec))
                    written.append(rel)
            except OSError as exc:
                raise IoFailure(str(exc)) from exc
            t.memstore.clear()
            return written

    # --- reads ---

    def scan(
        self,
        table: str,
        start: bytes | None = None,
        stop: bytes | None = None,
        all_versions: bool = False,
    ) -> list[Cell]:
        """Merged view of memstore and store files in cell order, newest
        version per coordinate unless all_versions is set."""
        with self._lock:
            t = self._table(table)
            candidates: list[tuple[tuple, int, Cell]] = []
            # source priority breaks timestamp ties: memstore (0) is newest,
            # then store files from newest to oldest
            for cell, seq in t.memstore:
                if start is not None and cell.row < start:
                    continue
                if stop is not None and cell.row >= stop:
                    continue
                candidates.append(((*cell.sort_key(), 0, -seq), 0, cell))
            for age, reader in enumerate(reversed(t.readers), start=1):
                for pos, cell in enumerate(reader.cells(start, stop)):
                    candidates.append(((*cell.sort_key(), age, pos), age, cell))
            candidates.sort(key=lambda item: item[0])
            if all_versions:
                return [cell for _, _, cell in candidates]
            out: list[Cell] = []
            seen: set[tuple] = set()
            for _, _, cell in candidates:
                coord = cell.coordinate()
                if coord in seen:
                    continue
                seen.add(coord)
                out.append(cell)
            return out

    def get(self, table: str, row: bytes) -> list[Cell]:
        return self.scan(table, start=row, stop=row + b"\x00")


def open_region_server(
    config,
    storage=None,
    registry: CodecRegistry | None = None,
    clock=None,
    fs=None,
) -> RegionServer:
    """Build a RegionServer from config keys; the startup codec gate runs here."""
    from minigrid.kvtable.storage import DfsStorage, LocalStorage

    rootdir = config.get("hbase.rootdir")
    if not rootdir:
        raise ValueError("hbase.rootdir is not configured")
    zk_dir = config.get("hbase.zookeeper.property.dataDir", "")
    if zk_dir:
        logger.warning(
            "hbase.zookeeper.property.dataDir=%s accepted but unused "
            "(coordination is in-process)", zk_dir
        )
    if storage is None:
        if rootdir.startswith(("dfs://", "hdfs://")):
            if fs is None:
                raise ValueError(f"{rootdir} requires a running filesystem handle")
            path = "/" + rootdir.split("://", 1)[1].split("/", 1)[-1]
            storage = DfsStorage(fs, path)
        else:
            storage = LocalStorage(rootdir)
    codecs = [c.strip() for c in config.get("hbase.regionserver.codecs").split(",") if c.strip()]
    return RegionServer(storage, codecs=codecs, registry=registry, clock=clock)
