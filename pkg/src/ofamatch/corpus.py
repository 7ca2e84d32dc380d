"""Benchmark corpus preparation.

Sizes are in UTF-8 bytes. Repeated text is cut on a code-point boundary, so
a target that falls inside a multi-byte character yields a file one
character short of it; ASCII corpora always land exactly on the target.
"""

from __future__ import annotations

import random
from pathlib import Path

TRANSFORMS = ("lowercase", "strip-newlines", "none")

# GC content of the H. influenzae Rd KW20 genome is about 38%.
HINF_BASE_WEIGHTS = {"A": 0.31, "C": 0.19, "G": 0.19, "T": 0.31}


def apply_transform(text: str, transform: str) -> str:
    if transform == "lowercase":
        return text.lower()
    if transform == "strip-newlines":
        return text.replace("\r", "").replace("\n", "")
    if transform == "none":
        return text
    raise ValueError(f"unknown transform {transform!r}; expected one of {TRANSFORMS}")


def repeat_to_size(text: str, target_bytes: int) -> bytes:
    data = text.encode("utf-8")
    if not data:
        raise ValueError("cannot repeat empty text")
    reps = -(-target_bytes // len(data))
    out = (data * reps)[:target_bytes]
    # drop a partial trailing character
    return out.decode("utf-8", errors="ignore").encode("utf-8")


def make_corpus(source: str | Path, target: str | Path, target_bytes: int,
                transform: str = "none") -> Path:
    text = Path(source).read_text(encoding="utf-8")
    data = repeat_to_size(apply_transform(text, transform), target_bytes)
    target = Path(target)
    target.write_bytes(data)
    return target


def synthetic_dna(length: int, seed: int = 0, weights: dict[str, float] | None = None) -> str:
    """Random nucleotide text; stands in for a genome when none is available."""
    weights = weights or HINF_BASE_WEIGHTS
    rng = random.Random(seed)
    return "".join(rng.choices(list(weights), weights=list(weights.values()), k=length))
