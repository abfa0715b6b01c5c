"""Write-once block filesystem: namespace, datanodes, edit log, reports."""

from minigrid.blockfs.datanode import DataNode
from minigrid.blockfs.filesystem import (
    Checkpoint,
    MiniDfs,
    format_namespace,
    recover,
)
from minigrid.blockfs.namespace import FileEntry, Namespace, split_lengths
from minigrid.blockfs.report import (
    ClusterReport,
    ListingRow,
    NodeReport,
    format_listing_row,
    format_report,
)

__all__ = [
    "Checkpoint",
    "ClusterReport",
    "DataNode",
    "FileEntry",
    "ListingRow",
    "MiniDfs",
    "Namespace",
    "NodeReport",
    "format_listing_row",
    "format_namespace",
    "format_report",
    "recover",
    "split_lengths",
]
