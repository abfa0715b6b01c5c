"""In-process registries for user functions and named jobs.

Mappers, reducers and combiners are registered under string ids (there is no
jar loading); a named job bundles the three for the CLI.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from minigrid.errors import UnknownJob

MapFn = Callable[[int, bytes], Iterator[tuple[bytes, bytes]]]
ReduceFn = Callable[[bytes, Iterable[bytes]], Iterator[tuple[bytes, bytes]]]

_functions: dict[str, Callable] = {}
_jobs: dict[str, "NamedJob"] = {}


@dataclass(frozen=True)
class NamedJob:
    name: str
    mapper: str
    reducer: str
    combiner: str | None


def register_function(fn_id: str, fn: Callable) -> None:
    _functions[fn_id] = fn


def get_function(fn_id: str) -> Callable:
    try:
        return _functions[fn_id]
    except KeyError:
        raise UnknownJob(f"no registered function {fn_id!r}") from None


def register_job(name: str, mapper: str, reducer: str, combiner: str | None = None) -> None:
    _jobs[name] = NamedJob(name, mapper, reducer, combiner)


def get_job(name: str) -> NamedJob:
    try:
        return _jobs[name]
    except KeyError:
        raise UnknownJob(
            f"no registered job {name!r}; available: {', '.join(sorted(_jobs))}"
        ) from None


def job_names() -> list[str]:
    return sorted(_jobs)
