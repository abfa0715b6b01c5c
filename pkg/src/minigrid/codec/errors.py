"""Codec failure modes, shared by the compiled and pure-Python MLZO1 kernels."""

from minigrid.errors import MinigridError


class UnknownCodec(MinigridError):
    def __init__(self, name: str):
        super().__init__(f"could not load codec {name!r}: not registered")
        self.codec_name = name


class BadMagic(MinigridError):
    pass


class TruncatedStream(MinigridError):
    pass


class BadDistance(MinigridError):
    pass


class LengthMismatch(MinigridError):
    pass


class CorruptStream(MinigridError):
    pass


class MismatchAfterRoundTrip(MinigridError):
    pass
