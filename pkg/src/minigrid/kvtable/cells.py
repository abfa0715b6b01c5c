"""Timestamped column-family cells and their storage ordering."""

import struct
from dataclasses import dataclass

_U32 = struct.Struct("<I")
_CELL_FIXED = struct.Struct("<IHIqI")  # row len, family len, qualifier len, ts, value len


@dataclass(frozen=True)
class Cell:
    row: bytes
    family: str
    qualifier: bytes
    timestamp: int  # epoch ms
    value: bytes

    def coordinate(self) -> tuple[bytes, str, bytes]:
        return (self.row, self.family, self.qualifier)

    def sort_key(self) -> tuple:
        # newest version of a coordinate sorts first
        return (self.row, self.family, self.qualifier, -self.timestamp)


def encode_cell(cell: Cell) -> bytes:
    fam = cell.family.encode()
    return (
        _CELL_FIXED.pack(
            len(cell.row), len(fam), len(cell.qualifier), cell.timestamp, len(cell.value)
        )
        + cell.row
        + fam
        + cell.qualifier
        + cell.value
    )


def decode_cells(blob: bytes) -> list[Cell]:
    cells = []
    pos = 0
    end = len(blob)
    while pos < end:
        row_len, fam_len, qual_len, ts, value_len = _CELL_FIXED.unpack_from(blob, pos)
        pos += _CELL_FIXED.size
        row = blob[pos:pos + row_len]
        pos += row_len
        family = blob[pos:pos + fam_len].decode()
        pos += fam_len
        qualifier = blob[pos:pos + qual_len]
        pos += qual_len
        value = blob[pos:pos + value_len]
        pos += value_len
        cells.append(Cell(row, family, qualifier, ts, value))
    return cells
