"""Pure-Python MLZO1 kernels.

This is the fallback twin of the Cython extension in _mlzo1.pyx; both must
produce byte-identical streams. Keep the two in lockstep — the test suite
diffs their output on a fuzz corpus.

Stream layout:

    magic 'MLZ1' | original length, 8-byte LE | tokens...

Token: one control byte C. The high nibble is the literal-run length
(15 means: keep adding continuation bytes until one is < 255), followed by
that many literal bytes. Unless this is the last token of the stream, a
2-byte little-endian match distance and a match length of (low nibble)+4
follow, the low nibble extended the same way. The last token carries only
literals and has a zero low nibble.
"""

import struct

from minigrid.codec.errors import BadDistance, BadMagic, LengthMismatch, TruncatedStream

MAGIC = b"MLZ1"
MIN_MATCH = 4
MAX_DISTANCE = 65535
HASH_SHIFT = 17
HASH_SIZE = 1 << 15
HASH_MUL = 2654435761

_HEADER = struct.Struct("<4sQ")


def _put_length(out: bytearray, value: int) -> None:
    # continuation bytes for a nibble that saturated at 15
    value -= 15
    while value >= 255:
        out.append(255)
        value -= 255
    out.append(value)


def compress(data: bytes) -> bytes:
    n = len(data)
    out = bytearray(_HEADER.pack(MAGIC, n))
    table = [-1] * HASH_SIZE
    i = 0
    anchor = 0
    # local bindings, this loop dominates the fallback's runtime
    d = data
    while i + MIN_MATCH <= n:
        seq = d[i] | (d[i + 1] << 8) | (d[i + 2] << 16) | (d[i + 3] << 24)
        h = ((seq * HASH_MUL) & 0xFFFFFFFF) >> HASH_SHIFT
        cand = table[h]
        table[h] = i
        if (
            cand >= 0
            and i - cand <= MAX_DISTANCE
            and d[cand] == d[i]
            and d[cand + 1] == d[i + 1]
            and d[cand + 2] == d[i + 2]
            and d[cand + 3] == d[i + 3]
        ):
            mlen = MIN_MATCH
            while i + mlen < n and d[cand + mlen] == d[i + mlen]:
                mlen += 1
            _emit(out, d, anchor, i, i - cand, mlen)
            i += mlen
            anchor = i
        else:
            i += 1
    # final token: remaining literals, zero low nibble, no distance
    lit_len = n - anchor
    if lit_len < 15:
        out.append(lit_len << 4)
    else:
        out.append(0xF0)
        _put_length(out, lit_len)
    out += d[anchor:n]
    return bytes(out)


def _emit(out: bytearray, data: bytes, anchor: int, i: int, dist: int, mlen: int) -> None:
    lit_len = i - anchor
    ml = mlen - MIN_MATCH
    c = (min(lit_len, 15) << 4) | min(ml, 15)
    out.append(c)
    if lit_len >= 15:
        _put_length(out, lit_len)
    out += data[anchor:i]
    out.append(dist & 0xFF)
    out.append(dist >> 8)
    if ml >= 15:
        _put_length(out, ml)


def decompress(stream: bytes) -> bytes:
    size = len(stream)
    if size < 4 or stream[:4] != MAGIC:
        raise BadMagic("stream does not start with MLZ1")
    if size < _HEADER.size:
        raise TruncatedStream("stream shorter than header")
    _, n = _HEADER.unpack_from(stream)
    out = bytearray()
    src = _HEADER.size
    while True:
        if src >= size:
            raise TruncatedStream("token expected")
        c = stream[src]
        src += 1
        lit_len = c >> 4
        if lit_len == 15:
            while True:
                if src >= size:
                    raise TruncatedStream("literal length continuation expected")
                b = stream[src]
                src += 1
                lit_len += b
                if b < 255:
                    break
        if src + lit_len > size:
            raise TruncatedStream("literal run overruns stream")
        out += stream[src:src + lit_len]
        src += lit_len
        if src == size:
            # last token of the stream
            if c & 15:
                raise TruncatedStream("match promised but stream ended")
            break
        if src + 2 > size:
            raise TruncatedStream("match distance expected")
        dist = stream[src] | (stream[src + 1] << 8)
        src += 2
        produced = len(out)
        if dist == 0 or dist > produced:
            raise BadDistance(f"distance {dist} with {produced} bytes produced")
        mlen = c & 15
        if mlen == 15:
            while True:
                if src >= size:
                    raise TruncatedStream("match length continuation expected")
                b = stream[src]
                src += 1
                mlen += b
                if b < 255:
                    break
        mlen += MIN_MATCH
        if dist >= mlen:
            start = produced - dist
            out += out[start:start + mlen]
        else:
            # overlapping copy replicates bytes one at a time
            pos = produced - dist
            for _ in range(mlen):
                out.append(out[pos])
                pos += 1
    if len(out) != n:
        raise LengthMismatch(f"header says {n} bytes, decoded {len(out)}")
    return bytes(out)
