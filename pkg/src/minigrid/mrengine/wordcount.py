"""The built-in wordcount job.

Tokens are split on ASCII space/tab/CR/LF only; punctuation stays attached
and case is preserved, so "computing." and "computing" are different words.
"""

import re
from typing import Iterable, Iterator

from minigrid.errors import NonNumericValue
from minigrid.mrengine import registry

_DELIMITERS = re.compile(rb"[ \t\r\n]+")


def tokenize(data: bytes) -> list[bytes]:
    return [tok for tok in _DELIMITERS.split(data) if tok]


def wordcount_map(offset: int, line: bytes) -> Iterator[tuple[bytes, bytes]]:
    for token in tokenize(line):
        yield token, b"1"


def sum_values(key: bytes, values: Iterable[bytes]) -> Iterator[tuple[bytes, bytes]]:
    total = 0
    for value in values:
        try:
            total += int(value)
        except ValueError:
            raise NonNumericValue(
                f"value {value!r} for key {key!r} is not a decimal count"
            ) from None
    yield key, b"%d" % total


registry.register_function("wordcount.map", wordcount_map)
registry.register_function("wordcount.reduce", sum_values)
registry.register_job("wordcount", "wordcount.map", "wordcount.reduce", "wordcount.reduce")
