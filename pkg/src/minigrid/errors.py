"""Exception hierarchy shared by all minigrid components.

Every domain error raised by the package derives from MinigridError so the
CLI can map "expected" failures to exit code 1 and everything else stays a
genuine crash.
"""


class MinigridError(Exception):
    """Base class for all expected, user-facing failures."""


# --- block filesystem ---

class InvalidPath(MinigridError):
    pass


class RootLocked(MinigridError):
    pass


class PathIsFile(MinigridError):
    pass


class FileExists(MinigridError):
    pass


class InsufficientSpace(MinigridError):
    pass


class NotFound(MinigridError):
    pass


class IsDirectory(NotFound):
    """The path names a directory where a file was required."""


class MissingBlock(MinigridError):
    pass


class InvalidReplication(MinigridError):
    pass


class UnknownDataNode(MinigridError):
    pass


class NoCheckpoint(MinigridError):
    pass


class CorruptImage(MinigridError):
    pass


# --- MapReduce engine ---

class OutputExists(MinigridError):
    pass


class InputMissing(MinigridError):
    pass


class TaskFailed(MinigridError):
    pass


class NonNumericValue(MinigridError):
    pass


class UnknownJob(MinigridError):
    pass


# --- kvtable ---

class TableExists(MinigridError):
    pass


class UnknownTable(MinigridError):
    pass


class UnknownFamily(MinigridError):
    pass


class CodecUnavailable(MinigridError):
    def __init__(self, codec_name: str):
        super().__init__(f"codec {codec_name!r} failed its startup self-test")
        self.codec_name = codec_name


class IoFailure(MinigridError):
    pass


# --- cluster / shell ---

class NotFormatted(MinigridError):
    pass


class AlreadyRunning(MinigridError):
    pass


class PortInUse(AlreadyRunning):
    pass
