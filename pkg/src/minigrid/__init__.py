"""minigrid: a single-process Hadoop-style mini stack.

Write-once block filesystem, counter-accurate MapReduce engine, column-family
table store, MLZO1/gzip codecs with a benchmark harness, and a read-only HTTP
status surface, all hosted in one process.
"""

__version__ = "0.1.0"
