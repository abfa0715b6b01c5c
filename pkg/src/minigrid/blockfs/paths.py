"""DFS path grammar: absolute, slash-separated, no '.' or '..' segments."""

from minigrid.errors import InvalidPath


def normalize(path: str) -> str:
    """Validate and canonicalize; raises InvalidPath."""
    if not isinstance(path, str) or not path.startswith("/"):
        raise InvalidPath(f"path must be absolute: {path!r}")
    if path == "/":
        return path
    segments = path.rstrip("/").split("/")[1:]
    for seg in segments:
        if seg in ("", ".", ".."):
            raise InvalidPath(f"illegal segment {seg!r} in {path!r}")
    return "/" + "/".join(segments)


def parent(path: str) -> str:
    if path == "/":
        return "/"
    head = path.rsplit("/", 1)[0]
    return head or "/"


def ancestors(path: str) -> list[str]:
    """All proper ancestors, root first: '/a/b/c' -> ['/', '/a', '/a/b']."""
    if path == "/":
        return []
    parts = path.split("/")[1:]
    out = ["/"]
    for i in range(1, len(parts)):
        out.append("/" + "/".join(parts[:i]))
    return out


def basename(path: str) -> str:
    return path.rsplit("/", 1)[-1] or "/"


def join(dir_path: str, name: str) -> str:
    return dir_path.rstrip("/") + "/" + name
