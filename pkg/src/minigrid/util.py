"""Small shared helpers: human-readable sizes, percentages, stable hashing."""

_UNITS = ["B", "KB", "MB", "GB", "TB", "PB"]


def human_bytes(n: int) -> str:
    """302827593728 -> '282.03 GB' (binary multiples, two decimals)."""
    value = float(n)
    for unit in _UNITS:
        if value < 1024 or unit == _UNITS[-1]:
            if unit == "B":
                return f"{int(value)} B"
            return f"{value:.2f} {unit}"
        value /= 1024
    raise AssertionError("unreachable")


def pct(numerator: int, denominator: int) -> str:
    """Percentage with up to two decimals, trailing zeros trimmed: '93.69%', '0%'."""
    if denominator == 0:
        return "0%"
    text = f"{100.0 * numerator / denominator:.2f}".rstrip("0").rstrip(".")
    return text + "%"


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a; the cross-platform partitioning hash."""
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h
