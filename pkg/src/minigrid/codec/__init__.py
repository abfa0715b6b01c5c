"""Named codec registry: "none", "lzo" (MLZO1) and "gz" out of the box.

Codecs are stateless pairs of pure functions; lookups of unregistered names
fail closed with UnknownCodec.
"""

from dataclasses import dataclass
from typing import Callable

from minigrid.codec import gzcodec, mlzo1
from minigrid.codec.errors import (
    BadDistance,
    BadMagic,
    CorruptStream,
    LengthMismatch,
    MismatchAfterRoundTrip,
    TruncatedStream,
    UnknownCodec,
)

__all__ = [
    "BenchRow",
    "Codec",
    "CodecRegistry",
    "default_registry",
    "get_codec",
    "UnknownCodec",
    "BadMagic",
    "TruncatedStream",
    "BadDistance",
    "LengthMismatch",
    "CorruptStream",
    "MismatchAfterRoundTrip",
    "mlzo1",
]


@dataclass(frozen=True)
class Codec:
    name: str
    compress: Callable[[bytes], bytes]
    decompress: Callable[[bytes], bytes]


@dataclass
class BenchRow:
    codec: str
    compressed_size: int
    compress_time: float  # seconds, median over repetitions
    decompress_time: float


class CodecRegistry:
    def __init__(self):
        self._codecs: dict[str, Codec] = {}

    def register(self, codec: Codec) -> None:
        self._codecs[codec.name] = codec

    def unregister(self, name: str) -> None:
        self._codecs.pop(name, None)

    def get(self, name: str) -> Codec:
        try:
            return self._codecs[name]
        except KeyError:
            raise UnknownCodec(name) from None

    def names(self) -> list[str]:
        return sorted(self._codecs)

    def __contains__(self, name: str) -> bool:
        return name in self._codecs


def _identity(data: bytes) -> bytes:
    return data


def standard_codecs() -> list[Codec]:
    return [
        Codec("none", _identity, _identity),
        Codec("lzo", mlzo1.compress, mlzo1.decompress),
        Codec("gz", gzcodec.compress, gzcodec.decompress),
    ]


def default_registry() -> CodecRegistry:
    registry = CodecRegistry()
    for codec in standard_codecs():
        registry.register(codec)
    return registry


_DEFAULT = default_registry()


def get_codec(name: str) -> Codec:
    return _DEFAULT.get(name)
