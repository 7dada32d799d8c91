import math

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucsc import (
    PreconditionError,
    Status,
    averaging_argument,
    check_frankl,
    check_s1,
    check_s2,
    evaluate_questions,
    lemma_1_2_witness,
    mask_of,
    permute,
)
from ucsc.checkers import VERDICT_SCHEMA, Verdict

from .conftest import closed_families, fam, oracle_counts, perms, powerset


class TestFrankl:
    def test_paper(self, paper):
        v = check_frankl(paper)
        assert v.status is Status.HOLDS and v.witnesses == (7, 8, 9)

    def test_singleton(self):
        v = check_frankl(fam(1, (), (1,)))
        assert v.holds and v.witnesses == (1,)

    def test_powerset(self):
        assert check_frankl(powerset(3)).witnesses == (1, 2, 3)

    @pytest.mark.parametrize(
        "f",
        [fam(2, (1,), (1, 2)), fam(2, ()), fam(2, (), (1,), (2,))],
        ids=["no-empty", "only-empty", "not-closed"],
    )
    def test_preconditions(self, f):
        with pytest.raises(PreconditionError):
            check_frankl(f)

    def test_strict_can_fail(self):
        v = check_frankl(fam(2, (), (1, 2)), strict=True)
        assert v.fails and (v.required, v.achieved) == (1, 0)


class TestS1S2:
    def test_paper(self, paper):
        v = check_s1(paper)
        assert v.fails and (v.required, v.achieved) == (4, 3)
        assert check_s2(paper).holds

    def test_two_sets(self):
        v = check_s1(fam(3, (), (1, 2, 3)))
        assert v.holds and v.witnesses == (1, 2, 3)
        v = check_s2(fam(2, (), (1, 2)))
        assert v.holds and v.witnesses == (1, 2)

    def test_t1_not_applicable(self):
        f = fam(2, (), (1,), (1, 2))
        for chk in (check_s1, check_s2):
            v = chk(f)
            assert v.status is Status.NOT_APPLICABLE
            assert "Remark 1.1" in v.reason

    def test_n1_not_applicable(self):
        assert check_s1(fam(1, (), (1,))).reason == "n=1"


class TestVerdictSchema:
    def test_invariants(self):
        with pytest.raises(ValueError):
            Verdict("s1", Status.HOLDS, 2, 2)
        with pytest.raises(ValueError):
            Verdict("s1", Status.FAILS, 2, 2, required=2, achieved=2)

    @given(closed_families())
    def test_json_validates_and_roundtrips(self, f):
        for chk in (check_frankl, check_s1, check_s2):
            v = chk(f)
            obj = v.to_json()
            jsonschema.validate(obj, VERDICT_SCHEMA)
            assert Verdict.from_json(obj) == v


class TestLemma:
    def test_only_pair(self):
        f = fam(4, (), (1, 2), (3, 4), (1, 2, 3, 4))
        assert lemma_1_2_witness(f) == (mask_of([1, 2]), mask_of([3, 4]))

    def test_paper_absent(self, paper):
        assert lemma_1_2_witness(paper) is None

    def test_intersecting_pairs(self):
        assert lemma_1_2_witness(fam(3, (), (1, 2), (1, 3), (1, 2, 3))) is None

    def test_t1_absent(self):
        assert lemma_1_2_witness(fam(4, (), (1,), (1, 2), (3, 4), (1, 3, 4), (1, 2, 3, 4))) is None


def _averaging_oracle(f):
    """Direct sums over the listed proper sets."""
    n = f.n
    sets = [set(s) for s in f.as_sets()]
    proper = [s for s in sets if s and len(s) != n]
    if not proper:
        return 1
    total = sum(len(s) for s in proper)
    if 2 * -(-total // n) < len(proper):
        return None
    pc = oracle_counts(proper, n)
    return pc.index(max(pc)) + 1


class TestAveraging:
    def test_degenerate(self):
        assert averaging_argument(fam(3, (), (1, 2, 3))) == 1

    def test_paper(self, paper):
        proper = [s for s in paper.as_sets() if s and len(s) != 9]
        assert (sum(map(len, proper)), len(proper)) == (48, 9)
        assert 2 * math.ceil(48 / 9) == 12
        assert _averaging_oracle(paper) == 7
        assert averaging_argument(paper) == 7

    def test_inconclusive(self):
        f = fam(9, (), (1,), (2,), (1, 2), tuple(range(1, 10)))
        assert _averaging_oracle(f) is None
        assert averaging_argument(f) is None
        assert check_frankl(f).witnesses[0] == 1

    def test_needs_full_universe(self):
        with pytest.raises(PreconditionError):
            averaging_argument(fam(3, (), (1, 2)))

    @given(closed_families(n_max=9))
    def test_oracle_and_soundness(self, f):
        got = averaging_argument(f)
        assert got == _averaging_oracle(f)
        if got is not None:
            assert got in check_frankl(f).witnesses


class TestQuestions:
    def test_paper(self, paper):
        r = evaluate_questions(paper)
        assert not (r.q1_applicable or r.q2_applicable or r.q3_applicable)
        assert r.q1_holds is r.q2_holds is r.q3_holds is None

    def test_q3(self):
        r = evaluate_questions(fam(5, (), (1, 2, 3, 4, 5)))
        assert r.q3_applicable and r.q3_holds

    def test_q2(self):
        f = fam(5, (), (1, 2), (1, 2, 3), (1, 2, 3, 4, 5))
        assert oracle_counts(f.as_sets(), 5)[:2] == [3, 3]
        r = evaluate_questions(f)
        assert r.q2_applicable and r.q2_holds
        assert not r.q1_applicable and not r.q3_applicable

    def test_t1_rejected(self):
        with pytest.raises(PreconditionError):
            evaluate_questions(fam(2, (), (1,), (1, 2)))

    @given(closed_families())
    def test_applicability(self, f):
        v = check_s1(f)
        if v.t_value < 2:
            return
        r = evaluate_questions(f)
        t = v.t_value
        assert r.q1_applicable == (t == 3)
        assert r.q2_applicable == (t == 2)
        assert r.q3_applicable == (2 * t > f.n)
        if r.q3_applicable:
            assert r.q3_holds == v.holds


@given(closed_families())
def test_implication_chain(f):
    s1, s2, fr = check_s1(f), check_s2(f), check_frankl(f)
    if s1.holds:
        assert s2.holds
    if s2.holds:
        assert fr.holds


@settings(max_examples=50)
@given(st.data())
def test_verdicts_permutation_invariant(data):
    f = data.draw(closed_families())
    p = data.draw(perms(f.n))
    g = permute(f, p)
    for chk in (check_frankl, check_s1, check_s2):
        a, b = chk(f), chk(g)
        assert (a.status, a.required, a.achieved, a.t_value) == (b.status, b.required, b.achieved, b.t_value)
        assert set(b.witnesses) == {p[e - 1] for e in a.witnesses}
