"""Column-family table store with per-family block compression."""

from minigrid.kvtable.cells import Cell, decode_cells, encode_cell
from minigrid.kvtable.region import (
    RegionServer,
    TableSchema,
    open_region_server,
    probe_codec,
)
from minigrid.kvtable.storage import DfsStorage, LocalStorage
from minigrid.kvtable.storefile import StoreFileReader, write_store_file

__all__ = [
    "Cell",
    "DfsStorage",
    "LocalStorage",
    "RegionServer",
    "StoreFileReader",
    "TableSchema",
    "decode_cells",
    "encode_cell",
    "open_region_server",
    "probe_codec",
    "write_store_file",
]
