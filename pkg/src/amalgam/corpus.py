"""Access to the bundled corpus of example shapes and diagrams."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def _root():
    return resources.files(__package__) / "corpus"


def names() -> list[str]:
    return sorted(
        p.name[: -len(".json")]
        for p in _root().iterdir()
        if p.name.endswith(".json")
    )


def path(name: str) -> Path:
    entry = _root() / f"{name}.json"
    if not entry.is_file():
        raise FileNotFoundError(f"no corpus entry named '{name}'")
    return Path(str(entry))


def resolve(ref: str) -> Path:
    """Interpret a CLI argument as a filesystem path or a corpus name."""
    p = Path(ref)
    if p.is_file():
        return p
    stem = Path(ref).stem
    try:
        return path(stem)
    except FileNotFoundError:
        raise FileNotFoundError(f"no such file or corpus entry: {ref}") from None
