"""Immutable, block-compressed store files of sorted cells.

Layout:

    magic 'MSF1' | u8 version | family | codec name
    data blocks, back to back (each: codec-compressed run of encoded cells,
        uncompressed size <= 64 KiB)
    index: u32 count, then per block (first row key, u64 file offset,
        u32 compressed length)
    trailer: u64 index offset | u32 crc32(index) | magic

Cells are in storage order within and across blocks.
"""

import struct
import zlib

from minigrid.codec import Codec
from minigrid.errors import IoFailure
from minigrid.kvtable.cells import Cell, decode_cells, encode_cell

MAGIC = b"MSF1"
VERSION = 1
BLOCK_LIMIT = 64 * 1024  # uncompressed bytes

_U8 = struct.Struct("<B")
_U16 = struct.Struct("<H")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
_TRAILER = struct.Struct("<QI4s")
_INDEX_ENTRY = struct.Struct("<QI")


def write_store_file(cells: list[Cell], family: str, codec: Codec) -> bytes:
    """Serialize sorted cells into the MSF1 byte format."""
    fam = family.encode()
    name = codec.name.encode()
    out = bytearray()
    out += MAGIC
    out += _U8.pack(VERSION)
    out += _U16.pack(len(fam)) + fam
    out += _U16.pack(len(name)) + name

    index_entries: list[tuple[bytes, int, int]] = []
    block: list[Cell] = []
    block_bytes = 0

    def close_block() -> None:
        nonlocal block, block_bytes
        if not block:
            return
        raw = b"".join(encode_cell(c) for c in block)
        compressed = codec.compress(raw)
        index_entries.append((block[0].row, len(out), len(compressed)))
        out.extend(compressed)
        block = []
        block_bytes = 0

    for cell in cells:
        size = len(encode_cell(cell))
        if block and block_bytes + size > BLOCK_LIMIT:
            close_block()
        block.append(cell)
        block_bytes += size
    close_block()

    index = bytearray(_U32.pack(len(index_entries)))
    for first_row, offset, clen in index_entries:
        index += _U32.pack(len(first_row)) + first_row
        index += _INDEX_ENTRY.pack(offset, clen)
    index_offset = len(out)
    out += index
    out += _TRAILER.pack(index_offset, zlib.crc32(bytes(index)), MAGIC)
    return bytes(out)


class StoreFileReader:
    def __init__(self, blob: bytes, codec: Codec):
        self._blob = blob
        self._codec = codec
        if blob[:4] != MAGIC:
            raise IoFailure("store file does not start with MSF1")
        pos = 4 + _U8.size
        (fam_len,) = _U16.unpack_from(blob, pos)
        pos += _U16.size
        self.family = blob[pos:pos + fam_len].decode()
        pos += fam_len
        (codec_len,) = _U16.unpack_from(blob, pos)
        pos += _U16.size
        self.codec_name = blob[pos:pos + codec_len].decode()
        pos += codec_len
        index_offset, crc, trailer_magic = _TRAILER.unpack_from(
            blob, len(blob) - _TRAILER.size
        )
        if trailer_magic != MAGIC:
            raise IoFailure("store file trailer damaged")
        index = blob[index_offset:len(blob) - _TRAILER.size]
        if zlib.crc32(index) != crc:
            raise IoFailure("store file index checksum mismatch")
        self.index: list[tuple[bytes, int, int]] = []
        (count,) = _U32.unpack_from(index, 0)
        pos = _U32.size
        for _ in range(count):
            (row_len,) = _U32.unpack_from(index, pos)
            pos += _U32.size
            first_row = index[pos:pos + row_len]
            pos += row_len
            offset, clen = _INDEX_ENTRY.unpack_from(index, pos)
            pos += _INDEX_ENTRY.size
            self.index.append((first_row, offset, clen))

    def block_cells(self, block_no: int) -> list[Cell]:
        _, offset, clen = self.index[block_no]
        return decode_cells(self._codec.decompress(self._blob[offset:offset + clen]))

    def cells(self, start: bytes | None = None, stop: bytes | None = None) -> list[Cell]:
        """Cells in storage order, optionally bounded to [start, stop) rows."""
        out: list[Cell] = []
        for block_no, (first_row, _, _) in enumerate(self.index):
            # a block can be skipped when it begins at or past the stop row
            if stop is not None and first_row >= stop:
                break
            for cell in self.block_cells(block_no):
                if stop is not None and cell.row >= stop:
                    break
                if start is None or cell.row >= start:
                    out.append(cell)
        return out
