"""Set families over a small ground set, stored as sorted integer bitmasks.

Element ``i`` (1-based) of the ground set ``{1, ..., n}`` is bit ``i - 1`` of a
mask. A :class:`SetFamily` keeps its members unique and sorted by numeric
value, which is the canonical storage order used everywhere in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

MAX_N = 16
CANONICAL_MAX_N = 8

# type aliases; plain ints are the cheapest representation in CPython
SetMask = int
ElementId = int


class FamilyError(ValueError):
    """Raised when a family or mask violates the representation invariants."""


class PreconditionError(ValueError):
    """Raised when an operation's precondition on its input family is not met."""


def mask_of(elements: Iterable[int]) -> SetMask:
    mask = 0
    for e in elements:
        if not 1 <= e <= MAX_N:
            raise FamilyError(f"element {e} outside 1..{MAX_N}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: SetMask) -> tuple[ElementId, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> SetMask:
    return (1 << n) - 1


@dataclass(frozen=True, slots=True)
class SetFamily:
    """A family of subsets of ``{1, ..., n}``.

    Use :meth:`from_masks` or :meth:`from_sets` to build one from unsorted
    input; the constructor itself expects canonical storage order and checks it.
    """

    n: int
    members: tuple[SetMask, ...]
    _counts: tuple[int, ...] | None = field(default=None, init=False, repr=False, compare=False)
    _closed: bool | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise FamilyError(f"ground-set size n={self.n} outside 1..{MAX_N}")
        if not self.members:
            raise FamilyError("a family needs at least one member")
        limit = 1 << self.n
        prev = -1
        for a in self.members:
            if a <= prev:
                raise FamilyError("members must be unique and strictly ascending")
            prev = a
        if prev >= limit:
            raise FamilyError(f"member {prev:#x} does not fit in n={self.n} bits")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[SetMask]) -> SetFamily:
        return cls(n, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        masks = []
        for s in sets:
            mask = mask_of(s)
            if mask >> n:
                raise FamilyError(f"set {sorted(s)} has an element above n={n}")
            masks.append(mask)
        return cls.from_masks(n, masks)

    @classmethod
    def _trusted(cls, n: int, members: tuple[SetMask, ...], closed: bool | None = None) -> SetFamily:
        # skips validation; callers guarantee canonical order (and closedness if given)
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "members", members)
        object.__setattr__(obj, "_counts", None)
        object.__setattr__(obj, "_closed", closed)
        return obj

    @property
    def m(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._member_set()

    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def as_sets(self) -> list[tuple[int, ...]]:
        return [elements_of(a) for a in self.members]

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_sets())
        return f"{{{body}}} (n={self.n})"


@lru_cache(maxsize=None)
def _spread_table(n: int) -> tuple[int, ...]:
    # bit i of a mask -> field i of width 17 (counts never exceed 2**16)
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        table[mask] = table[mask ^ low] + (1 << (17 * (low.bit_length() - 1)))
    return tuple(table)


def is_union_closed(f: SetFamily) -> bool:
    closed = f._closed
    if closed is None:
        closed = find_union_violation(f) is None
        object.__setattr__(f, "_closed", closed)
    return closed


def find_union_violation(f: SetFamily) -> tuple[SetMask, SetMask] | None:
    """Return the first pair ``(A, B)`` whose union is missing, or ``None``."""
    members = f.members
    present = set(members)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if (a | b) not in present:
                return a, b
    return None


def union_closure(generators: SetFamily) -> SetFamily:
    """Smallest union-closed family containing every generator."""
    n = generators.n
    seen = bytearray(1 << n)
    closed: list[int] = []
    for g in generators.members:
        if seen[g]:
            continue
        # every union involving g is g | c for some c already closed
        fresh = [g]
        seen[g] = 1
        for c in closed:
            u = c | g
            if not seen[u]:
                seen[u] = 1
                fresh.append(u)
        closed.extend(fresh)
    return SetFamily._trusted(n, tuple(sorted(closed)), closed=True)


def universe(f: SetFamily) -> SetMask:
    u = 0
    for a in f.members:
        u |= a
    return u


def t_value(f: SetFamily) -> int:
    """Smallest cardinality of a nonempty member."""
    sizes = [a.bit_count() for a in f.members if a]
    if not sizes:
        raise PreconditionError("T(F) is undefined for a family with no nonempty member")
    return min(sizes)


def frequency_profile(f: SetFamily) -> tuple[int, ...]:
    """``counts[i - 1]`` is the number of members containing element ``i``."""
    counts = f._counts
    if counts is None:
        table = _spread_table(f.n)
        packed = sum(map(table.__getitem__, f.members))
        field_mask = (1 << 17) - 1
        counts = tuple((packed >> (17 * i)) & field_mask for i in range(f.n))
        object.__setattr__(f, "_counts", counts)
    return counts


def abundant_elements(f: SetFamily, *, strict: bool = False) -> tuple[ElementId, ...]:
    """Elements lying in at least half of the members.

    With ``strict=True`` the test becomes "more than half".
    """
    m = f.m
    counts = frequency_profile(f)
    if strict:
        return tuple(i + 1 for i, c in enumerate(counts) if 2 * c > m)
    return tuple(i + 1 for i, c in enumerate(counts) if 2 * c >= m)


def size_profile(f: SetFamily) -> tuple[int, ...]:
    by_size = [0] * (f.n + 1)
    for a in f.members:
        by_size[a.bit_count()] += 1
    return tuple(by_size)


def _check_perm(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise FamilyError(f"{list(perm)} is not a permutation of 1..{n}")


def permute_mask(mask: SetMask, perm: Sequence[int]) -> SetMask:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[i] - 1)
        mask >>= 1
        i += 1
    return out


def permute(f: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Relabel every member: element ``i`` becomes ``perm[i - 1]``."""
    _check_perm(perm, f.n)
    image = tuple(sorted(permute_mask(a, perm) for a in f.members))
    return SetFamily._trusted(f.n, image, closed=f._closed)


def canonical_form(f: SetFamily) -> SetFamily:
    """Lexicographically least member sequence over all relabelings of ``1..n``."""
    n = f.n
    if n > CANONICAL_MAX_N:
        raise FamilyError(f"canonical_form is limited to n <= {CANONICAL_MAX_N}, got n={n}")
    bits = [[(a >> i) & 1 for i in range(n)] for a in f.members]
    best = f.members
    for perm in itertools.permutations(range(n)):
        weights = [1 << p for p in perm]
        image = sorted(sum(w for w, b in zip(weights, row) if b) for row in bits)
        cand = tuple(image)
        if cand < best:
            best = cand
    return SetFamily._trusted(n, best, closed=f._closed)
