"""Verdicts for Frankl's conjecture and its two strengthenings.

The S1 variant asks for at least ``T(F)`` abundant elements whenever
``T(F) >= 2``; the S2 variant asks for at least two. Both are scoped to
families without singletons, so ``T(F) = 1`` gives ``NOT_APPLICABLE``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any

from .family import (
    ElementId,
    PreconditionError,
    SetFamily,
    SetMask,
    abundant_elements,
    find_union_violation,
    frequency_profile,
    is_union_closed,
    full_mask,
    t_value,
    universe,
)


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class Verdict:
    conjecture: str
    status: Status
    m: int
    n: int
    t_value: int | None = None
    witnesses: tuple[ElementId, ...] = ()
    required: int | None = None
    achieved: int | None = None
    reason: str | None = None

    def __post_init__(self) -> None:
        if self.status is Status.HOLDS and not self.witnesses:
            raise ValueError("a holding verdict needs witnesses")
        if self.status is Status.FAILS and not self.achieved < self.required:
            raise ValueError("a failing verdict needs achieved < required")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"conjecture": self.conjecture, "status": self.status.value}
        if self.t_value is not None:
            out["t_value"] = self.t_value
        out["m"] = self.m
        out["n"] = self.n
        if self.status is Status.HOLDS:
            out["witnesses"] = list(self.witnesses)
        if self.required is not None:
            out["required"] = self.required
            out["achieved"] = self.achieved
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Verdict:
        return cls(
            conjecture=obj["conjecture"],
            status=Status(obj["status"]),
            m=obj["m"],
            n=obj["n"],
            t_value=obj.get("t_value"),
            witnesses=tuple(obj.get("witnesses", ())),
            required=obj.get("required"),
            achieved=obj.get("achieved"),
            reason=obj.get("reason"),
        )


VERDICT_SCHEMA = {
    "type": "object",
    "required": ["conjecture", "status", "m", "n"],
    "properties": {
        "conjecture": {"enum": ["frankl", "s1", "s2"]},
        "status": {"enum": ["holds", "fails", "not_applicable"]},
        "t_value": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "witnesses": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "required": {"type": "integer"},
        "achieved": {"type": "integer"},
        "reason": {"type": "string"},
    },
    "additionalProperties": False,
}


def check_preconditions(f: SetFamily) -> None:
    """Raise :class:`PreconditionError` unless ``f`` is union-closed, holds the
    empty set and has a nonempty member."""
    if f.members[0] != 0:
        raise PreconditionError("family must contain the empty set")
    if f.members[-1] == 0:
        raise PreconditionError("family {∅} is excluded")
    if not is_union_closed(f):
        bad = find_union_violation(f)
        raise PreconditionError(f"not union-closed: {bad[0]:#x} | {bad[1]:#x} missing")


def check_frankl(f: SetFamily, *, strict: bool = False) -> Verdict:
    check_preconditions(f)
    t = t_value(f)
    ab = abundant_elements(f, strict=strict)
    if ab:
        return Verdict("frankl", Status.HOLDS, f.m, f.n, t, witnesses=ab)
    return Verdict("frankl", Status.FAILS, f.m, f.n, t, required=1, achieved=0)


def _strengthened(f: SetFamily, name: str, required_for_t, strict: bool) -> Verdict:
    check_preconditions(f)
    t = t_value(f)
    if f.n < 2:
        return Verdict(name, Status.NOT_APPLICABLE, f.m, f.n, t, reason="n=1")
    if t == 1:
        return Verdict(name, Status.NOT_APPLICABLE, f.m, f.n, t, reason="T(F)=1 (Remark 1.1)")
    ab = abundant_elements(f, strict=strict)
    required = required_for_t(t)
    if len(ab) >= required:
        return Verdict(name, Status.HOLDS, f.m, f.n, t, witnesses=ab)
    return Verdict(name, Status.FAILS, f.m, f.n, t, required=required, achieved=len(ab))


def check_s1(f: SetFamily, *, strict: bool = False) -> Verdict:
    """At least ``T(F)`` abundant elements."""
    return _strengthened(f, "s1", lambda t: t, strict)


def check_s2(f: SetFamily, *, strict: bool = False) -> Verdict:
    """At least two abundant elements."""
    return _strengthened(f, "s2", lambda t: 2, strict)


CHECKERS = {"frankl": check_frankl, "s1": check_s1, "s2": check_s2}


def lemma_1_2_witness(f: SetFamily) -> tuple[SetMask, SetMask] | None:
    """First disjoint pair of 2-element members when ``T(F) = 2``.

    Such a pair forces two distinct abundant elements in a union-closed family.
    """
    pairs = [a for a in f.members if a.bit_count() == 2]
    if not pairs or any(a.bit_count() == 1 for a in f.members):
        return None
    for i, a in enumerate(pairs):
        for b in pairs[i + 1:]:
            if not a & b:
                if is_union_closed(f):
                    assert len(abundant_elements(f)) >= 2, "disjoint pair without two abundant elements"
                return a, b
    return None


def averaging_argument(f: SetFamily) -> ElementId | None:
    """Element certified abundant by an average-frequency bound, or ``None``.

    Over the proper members (neither empty nor the whole ground set) some
    element lies in at least ``ceil(S / n)`` of them, ``S`` being their total
    size. When twice that bound reaches the number ``c`` of proper members,
    the most frequent element is in at least half of ``F``. ``None`` means
    the bound is inconclusive, not that the family fails.
    """
    check_preconditions(f)
    n = f.n
    top = full_mask(n)
    if universe(f) != top:
        raise PreconditionError("averaging argument needs the union of F to be the whole ground set")
    proper = [a for a in f.members if a and a != top]
    c = len(proper)
    if c == 0:
        return 1
    total = sum(a.bit_count() for a in proper)
    if 2 * math.ceil(total / n) < c:
        return None
    # frequencies over proper members = full frequencies minus the top set
    counts = frequency_profile(f)
    best = max(range(n), key=lambda i: (counts[i], -i))
    return best + 1


@dataclass(frozen=True)
class QuestionReport:
    """Applicability and outcome of the three open questions on one family.

    ``q*_holds`` is ``None`` when the question does not apply.
    """

    t_value: int
    n: int
    abundant: int
    q1_applicable: bool
    q1_holds: bool | None
    q2_applicable: bool
    q2_holds: bool | None
    q3_applicable: bool
    q3_holds: bool | None

    def to_json(self) -> dict[str, Any]:
        return {
            "t_value": self.t_value,
            "n": self.n,
            "abundant": self.abundant,
            "q1": {"applicable": self.q1_applicable, "holds": self.q1_holds},
            "q2": {"applicable": self.q2_applicable, "holds": self.q2_holds},
            "q3": {"applicable": self.q3_applicable, "holds": self.q3_holds},
        }


def evaluate_questions(f: SetFamily, *, strict: bool = False) -> QuestionReport:
    check_preconditions(f)
    t = t_value(f)
    if t < 2:
        raise PreconditionError("questions are posed for T(F) >= 2")
    k = len(abundant_elements(f, strict=strict))
    q1 = t == 3
    q2 = t == 2
    q3 = 2 * t > f.n
    return QuestionReport(
        t_value=t,
        n=f.n,
        abundant=k,
        q1_applicable=q1,
        q1_holds=(k >= 3) if q1 else None,
        q2_applicable=q2,
        q2_holds=(k >= 2) if q2 else None,
        q3_applicable=q3,
        q3_holds=(k >= t) if q3 else None,
    )
