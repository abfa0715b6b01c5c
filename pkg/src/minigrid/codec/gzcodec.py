"""gzip (RFC 1952) codec bound to zlib's DEFLATE.

Any conformant gzip tool must accept our output; the conformance test in the
suite pipes samples through the system ``gzip`` binary.
"""

import zlib

from minigrid.codec.errors import CorruptStream

_LEVEL = 6
_GZIP_WBITS = 31  # 15-bit window plus gzip framing


def compress(data: bytes) -> bytes:
    co = zlib.compressobj(_LEVEL, zlib.DEFLATED, _GZIP_WBITS)
    return co.compress(data) + co.flush()


def decompress(stream: bytes) -> bytes:
    try:
        do = zlib.decompressobj(_GZIP_WBITS)
        out = do.decompress(stream)
        tail = do.flush()
    except zlib.error as exc:
        raise CorruptStream(str(exc)) from exc
    if not do.eof:
        raise CorruptStream("gzip member ended prematurely")
    return out + tail
