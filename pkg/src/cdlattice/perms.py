"""Cycle notation and the generator file format.

A generator file looks like::

    # the symmetric group on 3 points
    degree: 3
    (1 2 3)
    (1 2)

Points are 1-based and fixed points may be omitted.  A line holding only
``()`` is the identity.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import InvalidPermutation

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Cycle notation to a 1-based image tuple of length ``degree``."""
    images = list(range(1, degree + 1))
    stripped = text.strip()
    if not stripped:
        raise InvalidPermutation("empty permutation")
    pos = 0
    seen: set[int] = set()
    for m in _CYCLE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise InvalidPermutation(f"unexpected text {stripped[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            points = [int(tok) for tok in body]
        except ValueError:
            raise InvalidPermutation(f"non-integer point in {text!r}") from None
        for pt in points:
            if not 1 <= pt <= degree:
                raise InvalidPermutation(f"point {pt} outside 1..{degree} in {text!r}")
            if pt in seen:
                raise InvalidPermutation(f"point {pt} repeated in {text!r}")
            seen.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
    if stripped[pos:].strip():
        raise InvalidPermutation(f"unexpected text {stripped[pos:]!r} in {text!r}")
    return tuple(images)


def format_cycles(images) -> str:
    """1-based image sequence back to cycle notation (``()`` for identity)."""
    n = len(images)
    done = [False] * n
    parts = []
    for start in range(n):
        if done[start] or images[start] == start + 1:
            done[start] = True
            continue
        cycle = []
        x = start
        while not done[x]:
            done[x] = True
            cycle.append(x + 1)
            x = images[x] - 1
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"


def parse_generator_text(text: str) -> tuple[int, list[tuple[int, ...]]]:
    """Return ``(degree, generators)`` from generator-file contents."""
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s*:\s*(\d+)", line)
            if not m:
                raise InvalidPermutation(f"line {lineno}: expected 'degree: <d>', got {raw!r}")
            degree = int(m.group(1))
            if degree < 1:
                raise InvalidPermutation(f"line {lineno}: degree must be positive")
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except InvalidPermutation as exc:
            raise InvalidPermutation(f"line {lineno}: {exc}") from None
    if degree is None:
        raise InvalidPermutation("missing 'degree: <d>' header")
    return degree, gens


def read_generator_file(path) -> tuple[int, list[tuple[int, ...]]]:
    return parse_generator_text(Path(path).read_text(encoding="utf-8"))
