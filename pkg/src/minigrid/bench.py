"""Compression benchmark: deterministic log-style corpus, timed codec runs,
and the comparison table.

Times come from a monotonic clock, median of >= 3 repetitions after a
warm-up pass, and every timed run is round-trip verified before its numbers
count. Absolute seconds depend on the machine; the interesting outputs are
the size and time ratios between codecs from the same run.
"""

import json
import random
import statistics
import time
from dataclasses import dataclass, field

from minigrid.codec import BenchRow, CodecRegistry, default_registry
from minigrid.codec import mlzo1
from minigrid.codec.errors import MismatchAfterRoundTrip

_VOCAB_SIZE = 500
_LEVELS = [b"INFO"] * 6 + [b"WARN"] * 2 + [b"ERROR", b"DEBUG"]
_FILE_SUFFIX = {"none": "", "gz": ".gz", "lzo": ".lzo"}
_DISPLAY = {"none": "None", "gz": "Gzip", "lzo": "LZO"}


@dataclass(frozen=True)
class CorpusSpec:
    size: int
    seed: int = 42
    style: str = "log_text"


def _build_vocab(rng: random.Random) -> list[bytes]:
    syllables = [
        "ra", "mo", "ti", "ler", "pen", "dis", "vak", "sol", "une", "gra",
        "bi", "cat", "dor", "mu", "sta", "ke", "zo", "fin", "har", "lux",
    ]
    vocab = []
    seen = set()
    while len(vocab) < _VOCAB_SIZE:
        word = "".join(rng.choice(syllables) for _ in range(rng.randint(2, 4)))
        if word not in seen:
            seen.add(word)
            vocab.append(word.encode())
    return vocab


def generate_corpus(spec: CorpusSpec) -> bytes:
    """Pseudo-log lines (timestamp, level, Zipf-weighted words) totaling
    exactly spec.size bytes."""
    if spec.size < 0:
        raise ValueError("corpus size must be >= 0")
    if spec.size == 0:
        return b""
    rng = random.Random(spec.seed)
    vocab = _build_vocab(rng)
    cum_weights = []
    total = 0.0
    for rank in range(_VOCAB_SIZE):
        total += 1.0 / (rank + 1)  # Zipf-like repetition
        cum_weights.append(total)

    out = bytearray()
    line_no = 0
    batch: list[bytes] = []
    batch_pos = 0
    while len(out) < spec.size:
        if batch_pos + 12 > len(batch):
            batch = rng.choices(vocab, cum_weights=cum_weights, k=8192)
            batch_pos = 0
        nwords = rng.randint(6, 12)
        words = batch[batch_pos:batch_pos + nwords]
        batch_pos += nwords
        seconds = line_no // 1000
        stamp = (
            f"2026-01-01 {(seconds // 3600) % 24:02d}:{(seconds // 60) % 60:02d}:"
            f"{seconds % 60:02d}.{line_no % 1000:03d}"
        ).encode()
        out += stamp + b" " + rng.choice(_LEVELS) + b" " + b" ".join(words) + b"\n"
        line_no += 1
    return bytes(out[:spec.size])


@dataclass
class BenchReport:
    corpus: CorpusSpec
    reps: int
    rows: list[BenchRow] = field(default_factory=list)

    def row(self, codec: str) -> BenchRow:
        for r in self.rows:
            if r.codec == codec:
                return r
        raise KeyError(codec)

    def ratio(self, codec: str) -> float:
        return self.row(codec).compressed_size / self.corpus.size

    def to_dict(self) -> dict:
        return {
            "corpus": {
                "size": self.corpus.size,
                "seed": self.corpus.seed,
                "style": self.corpus.style,
            },
            "reps": self.reps,
            "mlzo1_backend": mlzo1.BACKEND,
            "rows": [
                {
                    "codec": r.codec,
                    "compressed_size": r.compressed_size,
                    "ratio": r.compressed_size / self.corpus.size,
                    "compress_time_s": r.compress_time,
                    "decompress_time_s": r.decompress_time,
                }
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        header = ("Compression", "File", "Size (bytes)",
                  "Compression Time (s)", "Decompression Time (s)")
        table = [header]
        for r in self.rows:
            name = _DISPLAY.get(r.codec, r.codec)
            file_name = "corpus" + _FILE_SUFFIX.get(r.codec, f".{r.codec}")
            if r.codec == "none":
                ctime = dtime = "-"
            else:
                ctime = f"{r.compress_time:.2f}"
                dtime = f"{r.decompress_time:.2f}"
            table.append((name, file_name, str(r.compressed_size), ctime, dtime))
        widths = [max(len(row[col]) for row in table) for col in range(len(header))]
        lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
                 for row in table]
        lines.insert(0, f"corpus: {self.corpus.size} bytes, seed {self.corpus.seed}, "
                        f"median of {self.reps} (mlzo1 backend: {mlzo1.BACKEND})")
        return "\n".join(lines)


def _timed(fn, arg):
    start = time.perf_counter()
    result = fn(arg)
    return result, time.perf_counter() - start


def bench_codec(corpus: bytes, name: str, compress, decompress, reps: int) -> BenchRow:
    compressed = compress(corpus)  # warm-up, also fixes the expected output
    if decompress(compressed) != corpus:
        raise MismatchAfterRoundTrip(f"codec {name!r} failed its warm-up round trip")
    ctimes, dtimes = [], []
    for _ in range(reps):
        blob, elapsed = _timed(compress, corpus)
        ctimes.append(elapsed)
        restored, elapsed = _timed(decompress, blob)
        dtimes.append(elapsed)
        if restored != corpus:
            raise MismatchAfterRoundTrip(f"codec {name!r} round trip failed")
    return BenchRow(
        codec=name,
        compressed_size=len(compressed),
        compress_time=statistics.median(ctimes),
        decompress_time=statistics.median(dtimes),
    )


def run_benchmark(
    corpus: bytes,
    codec_names: list[str],
    reps: int = 3,
    registry: CodecRegistry | None = None,
    spec: CorpusSpec | None = None,
) -> BenchReport:
    registry = registry if registry is not None else default_registry()
    spec = spec or CorpusSpec(size=len(corpus), seed=0, style="raw")
    report = BenchReport(corpus=spec, reps=reps)
    for name in codec_names:
        codec = registry.get(name)
        report.rows.append(
            bench_codec(corpus, name, codec.compress, codec.decompress, reps)
        )
    return report


def compare_backends(corpus: bytes, reps: int = 3, spec: CorpusSpec | None = None) -> BenchReport:
    """Same corpus through every built MLZO1 backend (compiled vs pure)."""
    spec = spec or CorpusSpec(size=len(corpus), seed=0, style="raw")
    report = BenchReport(corpus=spec, reps=reps)
    for backend_name, module in sorted(mlzo1.backends().items()):
        report.rows.append(
            bench_codec(
                corpus, f"lzo[{backend_name}]", module.compress, module.decompress, reps
            )
        )
    return report
