"""Durable namespace state: checksummed image plus append-only edit log.

Layout under <root>/name/:
    fsimage  - 4-byte CRC32 + JSON payload (namespace + edit log offset)
    edits    - sequence of [u32 length][u32 crc][JSON payload] records

Edits are appended and flushed before the operation is acknowledged, so a
crash leaves at worst a truncated final record, which replay detects and
discards. Recovery = load image, replay edits from the recorded offset.
"""

import json
import os
import struct
import zlib

from minigrid.blockfs.namespace import Namespace
from minigrid.errors import CorruptImage, NoCheckpoint

_REC_HEADER = struct.Struct("<II")  # length, crc32 of payload


def name_dir(root: str) -> str:
    return os.path.join(root, "name")


def _image_path(root: str) -> str:
    return os.path.join(name_dir(root), "fsimage")


def _edits_path(root: str) -> str:
    return os.path.join(name_dir(root), "edits")


class EditLog:
    def __init__(self, root: str):
        self._path = _edits_path(root)
        self._fh = open(self._path, "ab")

    def append(self, edit: dict) -> None:
        payload = json.dumps(edit, sort_keys=True, separators=(",", ":")).encode()
        self._fh.write(_REC_HEADER.pack(len(payload), zlib.crc32(payload)))
        self._fh.write(payload)
        self._fh.flush()

    def offset(self) -> int:
        return self._fh.tell()

    def close(self) -> None:
        self._fh.close()


def read_edits(root: str, from_offset: int) -> list[dict]:
    """Valid records after from_offset; a torn tail record is dropped."""
    edits = []
    with open(_edits_path(root), "rb") as fh:
        fh.seek(from_offset)
        data = fh.read()
    pos = 0
    while pos + _REC_HEADER.size <= len(data):
        length, crc = _REC_HEADER.unpack_from(data, pos)
        start = pos + _REC_HEADER.size
        payload = data[start:start + length]
        if len(payload) < length or zlib.crc32(payload) != crc:
            break  # crash tail: record was never fully written
        try:
            edits.append(json.loads(payload))
        except ValueError:
            break
        pos = start + length
    return edits


def write_image(root: str, namespace: Namespace, edit_offset: int, taken_at: int) -> bytes:
    payload = json.dumps(
        {
            "namespace": namespace.to_dict(),
            "edit_offset": edit_offset,
            "taken_at": taken_at,
        },
        sort_keys=True,
    ).encode()
    blob = struct.pack("<I", zlib.crc32(payload)) + payload
    target = _image_path(root)
    tmp = target + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(blob)
    os.replace(tmp, target)
    return payload


def read_image(root: str) -> tuple[Namespace, int, int]:
    """Returns (namespace, edit_offset, taken_at); CorruptImage on damage."""
    path = _image_path(root)
    if not os.path.exists(path):
        raise NoCheckpoint(f"no image under {name_dir(root)}")
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 4:
        raise CorruptImage(f"{path} shorter than its checksum")
    (crc,) = struct.unpack_from("<I", blob)
    payload = blob[4:]
    if zlib.crc32(payload) != crc:
        raise CorruptImage(f"{path} checksum mismatch")
    doc = json.loads(payload)
    return (
        Namespace.from_dict(doc["namespace"]),
        int(doc["edit_offset"]),
        int(doc["taken_at"]),
    )


def recover_namespace(root: str) -> Namespace:
    """Image plus committed edit replay = namespace at crash time."""
    ns, offset, _ = read_image(root)
    for edit in read_edits(root, offset):
        ns.apply_edit(edit)
    return ns


def is_formatted(root: str) -> bool:
    return os.path.exists(_image_path(root))
