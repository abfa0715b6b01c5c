"""Round-trip self-test for a named codec against a real file.

Mirrors the region-server setup check: compress the file, decompress, compare
byte for byte, and print SUCCESS on the last line when everything holds.
"""

from typing import Callable

from minigrid.codec import CodecRegistry, default_registry
from minigrid.codec.errors import MismatchAfterRoundTrip, UnknownCodec


def compression_test(
    path: str,
    codec_name: str,
    registry: CodecRegistry | None = None,
    emit: Callable[[str], None] = print,
) -> None:
    """Raises UnknownCodec / MismatchAfterRoundTrip / OSError on failure."""
    registry = registry if registry is not None else default_registry()
    codec = registry.get(codec_name)  # fails closed before touching the file
    with open(path, "rb") as fh:
        original = fh.read()
    emit(f"checking codec '{codec.name}' on {path}")
    emit(f"read {len(original)} bytes")
    compressed = codec.compress(original)
    emit(f"compressed to {len(compressed)} bytes")
    restored = codec.decompress(compressed)
    if restored != original:
        raise MismatchAfterRoundTrip(
            f"codec {codec.name!r} did not reproduce {path} after round trip"
        )
    emit("round-trip verified")
    emit("SUCCESS")
