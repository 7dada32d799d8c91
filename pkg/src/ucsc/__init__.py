"""Verification and counterexample search for the union-closed sets conjecture."""

from .checkers import (
    QuestionReport,
    Status,
    Verdict,
    averaging_argument,
    check_frankl,
    check_s1,
    check_s2,
    evaluate_questions,
    lemma_1_2_witness,
)
from .enumeration import (
    EnumCheckpoint,
    EnumFilter,
    enumerate_union_closed,
    iter_union_closed,
    naive_enumerate,
    partition_tasks,
    resume,
)
from .family import (
    FamilyError,
    PreconditionError,
    SetFamily,
    abundant_elements,
    canonical_form,
    elements_of,
    find_union_violation,
    frequency_profile,
    is_union_closed,
    mask_of,
    permute,
    size_profile,
    t_value,
    union_closure,
    universe,
)
from .io import format_family, parse_family, read_family
from .search import (
    Finding,
    SearchTarget,
    exhaustive_scan,
    paper_example,
    question_scan,
    random_closure_search,
    verify_paper_example,
)

__version__ = "0.1.0"
