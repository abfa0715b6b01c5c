# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled MLZO1 kernels.

Byte-for-byte the same algorithm and output as _mlzo1_py.py; only the inner
loops are lowered to C. The fuzz suite diffs the two backends.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset
from libc.stdint cimport uint8_t, uint32_t, uint64_t, int32_t

from minigrid.codec.errors import BadDistance, BadMagic, LengthMismatch, TruncatedStream

cdef size_t MIN_MATCH = 4
cdef size_t MAX_DISTANCE = 65535
cdef int HASH_SHIFT = 17
cdef size_t HASH_SIZE = 32768
cdef size_t HEADER_SIZE = 12


cdef inline uint32_t _read32(const uint8_t* p) noexcept nogil:
    return p[0] | (<uint32_t>p[1] << 8) | (<uint32_t>p[2] << 16) | (<uint32_t>p[3] << 24)


cdef inline uint8_t* _put_length(uint8_t* op, size_t value) noexcept nogil:
    value -= 15
    while value >= 255:
        op[0] = 255
        op += 1
        value -= 255
    op[0] = <uint8_t>value
    op += 1
    return op


def compress(bytes data not None):
    cdef size_t n = len(data)
    cdef const uint8_t* d = <const uint8_t*>PyBytes_AS_STRING(data)
    # worst case: header + one all-literal token; matches only ever shrink it
    cdef size_t cap = n + n // 255 + 16
    cdef uint8_t* buf = <uint8_t*>malloc(cap)
    cdef int32_t* table = NULL
    cdef uint8_t* op
    cdef size_t i = 0, anchor = 0, mlen, lit_len, ml, dist
    cdef uint32_t seq, h
    cdef int32_t cand
    cdef uint64_t length64 = n
    cdef int k
    if buf == NULL:
        raise MemoryError()
    table = <int32_t*>malloc(HASH_SIZE * sizeof(int32_t))
    if table == NULL:
        free(buf)
        raise MemoryError()
    memset(table, 0xFF, HASH_SIZE * sizeof(int32_t))

    buf[0] = 77  # 'M'
    buf[1] = 76  # 'L'
    buf[2] = 90  # 'Z'
    buf[3] = 49  # '1'
    op = buf + 4
    for k in range(8):
        op[0] = <uint8_t>(length64 >> (8 * k))
        op += 1

    with nogil:
        while i + MIN_MATCH <= n:
            seq = _read32(d + i)
            h = (seq * <uint32_t>2654435761u) >> HASH_SHIFT
            cand = table[h]
            table[h] = <int32_t>i
            if cand >= 0 and i - <size_t>cand <= MAX_DISTANCE and _read32(d + cand) == seq:
                mlen = MIN_MATCH
                while i + mlen < n and d[cand + mlen] == d[i + mlen]:
                    mlen += 1
                # token: literals since anchor, then distance and match length
                lit_len = i - anchor
                ml = mlen - MIN_MATCH
                op[0] = <uint8_t>(((lit_len if lit_len < 15 else 15) << 4)
                                  | (ml if ml < 15 else 15))
                op += 1
                if lit_len >= 15:
                    op = _put_length(op, lit_len)
                memcpy(op, d + anchor, lit_len)
                op += lit_len
                dist = i - <size_t>cand
                op[0] = <uint8_t>(dist & 0xFF)
                op[1] = <uint8_t>(dist >> 8)
                op += 2
                if ml >= 15:
                    op = _put_length(op, ml)
                i += mlen
                anchor = i
            else:
                i += 1
        # final token: remaining literals, zero low nibble, no distance
        lit_len = n - anchor
        if lit_len < 15:
            op[0] = <uint8_t>(lit_len << 4)
            op += 1
        else:
            op[0] = 0xF0
            op += 1
            op = _put_length(op, lit_len)
        memcpy(op, d + anchor, lit_len)
        op += lit_len

    result = PyBytes_FromStringAndSize(<char*>buf, op - buf)
    free(table)
    free(buf)
    return result


def decompress(bytes stream not None):
    cdef size_t size = len(stream)
    cdef const uint8_t* src = <const uint8_t*>PyBytes_AS_STRING(stream)
    cdef size_t sp, produced = 0, lit_len, mlen, pos, j, dist
    cdef uint64_t n = 0
    cdef uint8_t c, b
    cdef int k
    if size < 4 or not (src[0] == 77 and src[1] == 76 and src[2] == 90 and src[3] == 49):
        raise BadMagic("stream does not start with MLZ1")
    if size < HEADER_SIZE:
        raise TruncatedStream("stream shorter than header")
    for k in range(8):
        n |= <uint64_t>src[4 + k] << (8 * k)
    # tokens cannot expand a stream byte into more than 255 output bytes, so a
    # header length beyond that can never be satisfied; refuse before allocating
    if n > <uint64_t>size * 255:
        raise LengthMismatch(f"header claims {n} bytes from a {size}-byte stream")
    out_obj = PyBytes_FromStringAndSize(NULL, <Py_ssize_t>n)
    cdef uint8_t* out = <uint8_t*>PyBytes_AS_STRING(out_obj)
    sp = HEADER_SIZE
    while True:
        if sp >= size:
            raise TruncatedStream("token expected")
        c = src[sp]
        sp += 1
        lit_len = c >> 4
        if lit_len == 15:
            while True:
                if sp >= size:
                    raise TruncatedStream("literal length continuation expected")
                b = src[sp]
                sp += 1
                lit_len += b
                if b < 255:
                    break
        if sp + lit_len > size:
            raise TruncatedStream("literal run overruns stream")
        if produced + lit_len > n:
            raise LengthMismatch("decoded output exceeds header length")
        memcpy(out + produced, src + sp, lit_len)
        produced += lit_len
        sp += lit_len
        if sp == size:
            # last token of the stream
            if c & 15:
                raise TruncatedStream("match promised but stream ended")
            break
        if sp + 2 > size:
            raise TruncatedStream("match distance expected")
        dist = src[sp] | (<size_t>src[sp + 1] << 8)
        sp += 2
        if dist == 0 or dist > produced:
            raise BadDistance(f"distance {dist} with {produced} bytes produced")
        mlen = c & 15
        if mlen == 15:
            while True:
                if sp >= size:
                    raise TruncatedStream("match length continuation expected")
                b = src[sp]
                sp += 1
                mlen += b
                if b < 255:
                    break
        mlen += MIN_MATCH
        if produced + mlen > n:
            raise LengthMismatch("decoded output exceeds header length")
        pos = produced - dist
        if dist >= mlen:
            memcpy(out + produced, out + pos, mlen)
            produced += mlen
        else:
            # overlapping copy replicates bytes one at a time
            for j in range(mlen):
                out[produced] = out[pos]
                produced += 1
                pos += 1
    if produced != n:
        raise LengthMismatch(f"header says {n} bytes, decoded {produced}")
    return out_obj
