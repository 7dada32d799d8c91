"""Text and JSON serialisation of set families.

Text format, one member per line::

    # comment
    n=9
    {}
    1,2,7,8

``{}`` is the empty set; the optional ``n=<int>`` line must come before any
member. Without it, ``n`` is the largest element that occurs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .family import MAX_N, FamilyError, SetFamily, elements_of


class FamilyParseError(FamilyError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def parse_family(text: str) -> SetFamily:
    n_header: int | None = None
    masks: list[int] = []
    max_elem = 0
    seen_member = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            if seen_member or n_header is not None:
                raise FamilyParseError("n= header must precede all members", lineno)
            try:
                n_header = int(line[2:])
            except ValueError:
                raise FamilyParseError(f"bad header {line!r}", lineno) from None
            if not 1 <= n_header <= MAX_N:
                raise FamilyParseError(f"n={n_header} outside 1..{MAX_N}", lineno)
            continue
        seen_member = True
        if line == "{}":
            masks.append(0)
            continue
        mask = 0
        for tok in line.split(","):
            tok = tok.strip()
            if not tok.isdigit():
                raise FamilyParseError(f"malformed member {line!r}", lineno)
            e = int(tok)
            if not 1 <= e <= MAX_N:
                raise FamilyParseError(f"element {e} outside 1..{MAX_N}", lineno)
            max_elem = max(max_elem, e)
            mask |= 1 << (e - 1)
        masks.append(mask)
    if not masks:
        raise FamilyParseError("no members")
    n = n_header if n_header is not None else max(max_elem, 1)
    if max_elem > n:
        raise FamilyParseError(f"element {max_elem} exceeds header n={n}")
    return SetFamily.from_masks(n, masks)


def format_family(f: SetFamily) -> str:
    lines = [f"n={f.n}"]
    for s in f.as_sets():
        lines.append(",".join(map(str, s)) if s else "{}")
    return "\n".join(lines) + "\n"


def family_to_json(f: SetFamily) -> dict[str, Any]:
    return {"n": f.n, "sets": [list(s) for s in f.as_sets()]}


def family_from_json(obj: Any) -> SetFamily:
    if not isinstance(obj, dict) or "sets" not in obj:
        raise FamilyParseError('JSON family needs a "sets" list')
    sets = obj["sets"]
    if not isinstance(sets, list) or not sets:
        raise FamilyParseError('"sets" must be a nonempty list')
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in s):
            raise FamilyParseError(f"bad member {s!r}")
    n = obj.get("n")
    if n is None:
        n = max((max(s) for s in sets if s), default=1)
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise FamilyParseError(f"bad ground-set size {n!r}")
    return SetFamily.from_sets(n, sets)


def loads_family(text: str) -> SetFamily:
    """Parse either format; JSON is recognised by a top-level object with ``sets``."""
    stripped = text.lstrip()
    if stripped.startswith("{") and '"sets"' in stripped:
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError:
            pass
        else:
            return family_from_json(obj)
    return parse_family(text)


def read_family(path: str | Path) -> SetFamily:
    return loads_family(Path(path).read_text(encoding="utf-8"))
