"""Tests for the spectral sequence engine."""

import json
import random
from pathlib import Path

import pytest

from sseqlab.errors import UsageError, ValidationError
from sseqlab.gauge import g2_fibration_spec
from sseqlab.graded import Monomial, PolyAlgebraSpec, Polynomial
from sseqlab.specseq import (
    FibrationSpec,
    UNIT_GEN,
    UnknownScalar,
    admissible_differentials,
    build_e2,
    initial_page,
    leibniz_extend,
    resolve_assignment,
    run_to_einfty,
    sweep_unknowns,
    total_dims,
    turn_page,
)

DATA = Path(__file__).parent / "data"

SPEC = g2_fibration_spec()
X4 = Monomial((1, 0, 0))
X6 = Monomial((0, 1, 0))
UNIT = Monomial((0, 0, 0))


def assignment_for(value):
    return resolve_assignment(SPEC, {"eps": value})


# ---------------------------------------------------------------- E_2


def test_e2_first_fibre_class():
    basis = build_e2(SPEC)
    assert basis.labels(0, 5) == ((UNIT, "u_5"),)


def test_e2_fibre_class_times_base_generator():
    basis = build_e2(SPEC)
    assert basis.labels(4, 5) == ((X4, "u_5"),)


def test_e2_vanishing_bidegree():
    basis = build_e2(SPEC)
    assert basis.dim(2, 4) == 0


def test_e2_dims_are_products():
    basis = build_e2(SPEC)
    for (s, t), labels in basis.groups.items():
        assert len(labels) == SPEC.base_dim(s) * SPEC.fibre_dim(t)
        assert s + t <= SPEC.degree_bound


def test_e2_base_row_matches_poincare_dims():
    basis = build_e2(SPEC)
    from sseqlab.graded import poincare_dims

    dims = poincare_dims(SPEC.base, 10)
    for s in range(11):
        assert basis.dim(s, 0) == dims[s]


# ---------------------------------------------------------------- arrows


def test_admissible_differentials_exact_set():
    got = admissible_differentials(SPEC)
    assert got == [
        (6, (0, 5), (6, 0)),
        (6, (4, 5), (10, 0)),
    ]


def test_admissible_source_zero_zero_absent():
    assert all(src != (0, 0) for _, src, _ in admissible_differentials(SPEC))


def test_admissible_only_page_six_for_fibre_degree_five():
    pages = {r for r, (s, t), _ in admissible_differentials(SPEC) if t == 5}
    assert pages == {6}


def test_admissible_respects_window():
    wide = g2_fibration_spec(degree_bound=11)
    got = admissible_differentials(wide)
    assert (6, (4, 5), (10, 0)) in got
    assert (6, (6, 5), (12, 0)) in got  # source total 11 fits the wider window
    assert all(sum(src) <= 11 for _, src, _ in got)


# ---------------------------------------------------------------- leibniz


def test_leibniz_propagates_base_multiplication():
    matrices = leibniz_extend(SPEC, assignment_for(1), 6)
    # d_6(u_5) = x_6 and d_6(x_4*u_5) = x_4*x_6, both rank one
    assert set(matrices) == {(0, 5), (4, 5)}
    for m in matrices.values():
        assert m.rows == 1 and m.cols == 1 and m.row_bits == (1,)


def test_leibniz_zero_assignment_gives_no_matrices():
    assert leibniz_extend(SPEC, assignment_for(0), 6) == {}


def test_leibniz_base_classes_are_permanent_cycles():
    for r in range(2, 8):
        for src in leibniz_extend(SPEC, assignment_for(1), r):
            assert src[1] > 0  # never a base-row source


def test_leibniz_requires_images_for_admissible_generators():
    from sseqlab.specseq import DifferentialAssignment

    empty = DifferentialAssignment({}, {})
    with pytest.raises(UsageError):
        leibniz_extend(SPEC, empty, 6)


def test_resolve_rejects_image_landing_off_base_row():
    with pytest.raises(ValidationError):
        resolve_assignment(
            SPEC, {"eps": 0}, extra_images={("u_5", 3): SPEC.base.gen("x_4")}
        )


def test_hand_built_assignment_with_bad_page_rejected():
    from sseqlab.specseq import DifferentialAssignment

    bad = DifferentialAssignment({"eps": 0}, {("u_5", 4): SPEC.base.gen("x_4")})
    with pytest.raises(ValidationError):
        initial_page(SPEC, bad)


def test_transgression_image_killed_earlier_gives_zero_differential():
    # a rank-one transgression on page 3 kills the target of the later
    # page-6 transgression; the induced page-6 map is then zero and the
    # late fibre class survives
    base = PolyAlgebraSpec.from_pairs([("a", 3)])
    spec = FibrationSpec(
        base,
        {0: (UNIT_GEN,), 2: ("u",), 5: ("w",)},
        8,
        (
            UnknownScalar("alpha", "u", 3, base.gen("a")),
            UnknownScalar("beta", "w", 6, Polynomial.of(Monomial((2,)))),
        ),
    )
    _, report = run_to_einfty(spec, resolve_assignment(spec, {"alpha": 1, "beta": 1}))
    dims = total_dims(report, 8)
    # a (deg 3), u (deg 2), a*u (deg 5), a^2 (deg 6) all cancel in pairs;
    # w (deg 5) survives because its target is already dead
    assert dims == [1, 0, 0, 0, 0, 1, 0, 0, 1]


# ---------------------------------------------------------------- pages


def test_turn_page_with_zero_differentials_keeps_dims():
    page = initial_page(SPEC, assignment_for(0))
    nxt = turn_page(page)
    assert nxt.r == 3
    for bd in page.groups:
        assert nxt.dim(*bd) == page.dim(*bd)


def test_turn_page_kills_target_of_rank_one_differential():
    page = initial_page(SPEC, assignment_for(1))
    while page.r < 6:
        page = turn_page(page)
    assert page.dim(6, 0) == 1
    after = turn_page(page)
    assert after.dim(6, 0) == 0
    assert after.dim(0, 5) == 0


def test_page_rank_accounting_identity():
    # dim E_{r+1} = dim E_r - rank(d out) - rank(d in), at every bidegree
    from sseqlab.f2 import rank as f2_rank

    page = initial_page(SPEC, assignment_for(1))
    for _ in range(6):
        nxt = turn_page(page)
        r = page.r
        for bd in page.groups:
            out_rank = f2_rank(page.differentials[bd]) if bd in page.differentials else 0
            src = (bd[0] - r, bd[1] + r - 1)
            in_rank = f2_rank(page.differentials[src]) if src in page.differentials else 0
            assert nxt.dim(*bd) == page.dim(*bd) - out_rank - in_rank
        page = nxt


def test_turn_page_order_independent():
    rng = random.Random(37)
    page = initial_page(SPEC, assignment_for(1))
    while page.r < 6:
        page = turn_page(page)
    reference = turn_page(page)
    for _ in range(5):
        order = sorted(page.groups)
        rng.shuffle(order)
        shuffled = turn_page(page, order=order)
        for bd in reference.groups:
            assert shuffled.dim(*bd) == reference.dim(*bd)
            assert shuffled.groups[bd].cycles == reference.groups[bd].cycles
            assert shuffled.groups[bd].boundaries == reference.groups[bd].boundaries


def test_composite_of_consecutive_differentials_is_zero():
    page = initial_page(SPEC, assignment_for(1))
    while page.r <= 6:
        for src, m1 in page.differentials.items():
            mid = (src[0] + page.r, src[1] - page.r + 1)
            m2 = page.differentials.get(mid)
            if m2 is not None:
                assert m2.matmul(m1).is_zero()
        page = turn_page(page)


# ---------------------------------------------------------------- limits


def test_collapse_branch_limit_equals_start():
    page, _ = run_to_einfty(SPEC, assignment_for(0))
    start = build_e2(SPEC)
    for s in range(11):
        for t in range(11 - s):
            assert page.dim(s, t) == start.dim(s, t)


def test_nontrivial_branch_matches_hand_fixture():
    fixture = json.loads((DATA / "einfty_nontrivial_branch.json").read_text())
    page, report = run_to_einfty(SPEC, assignment_for(1))
    assert total_dims(report, 10) == fixture["total_dims"]
    got = {
        f"{s},{t}": page.dim(s, t)
        for (s, t) in page.reported_bidegrees()
    }
    assert got == fixture["bidegree_dims"]


def test_nontrivial_branch_survivor_names():
    page, _ = run_to_einfty(SPEC, assignment_for(1))
    assert page.describe(7, 0) == ["x_7"]
    assert page.describe(8, 0) == ["x_4^2"]
    assert page.describe(6, 0) == []
    assert page.describe(0, 5) == []


def test_nontrivial_branch_flags_window_boundary():
    page, _ = run_to_einfty(SPEC, assignment_for(1))
    assert (6, (6, 5), (12, 0)) in page.unevaluated


def test_zero_fibre_gives_base_poincare_dims():
    spec = FibrationSpec(SPEC.base, {0: (UNIT_GEN,)}, 10, ())
    _, report = run_to_einfty(spec, resolve_assignment(spec, {}))
    from sseqlab.graded import poincare_dims

    assert total_dims(report, 10) == poincare_dims(SPEC.base, 10)


def test_base_row_survives_when_scalar_vanishes():
    page, _ = run_to_einfty(SPEC, assignment_for(0))
    from sseqlab.graded import poincare_dims

    dims = poincare_dims(SPEC.base, 10)
    for s in range(11):
        assert page.dim(s, 0) == dims[s]


def test_run_requires_resolved_unknowns():
    from sseqlab.specseq import DifferentialAssignment

    with pytest.raises(UsageError):
        run_to_einfty(SPEC, DifferentialAssignment({}, {}))


# ---------------------------------------------------------------- sweeps


def test_sweep_enumerates_both_branches():
    sweep = sweep_unknowns(SPEC)
    assert list(sweep) == [(("eps", 0),), (("eps", 1),)]
    assert total_dims(sweep[(("eps", 0),)], 10) == [1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1]
    assert total_dims(sweep[(("eps", 1),)], 10) == [1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0]


def test_sweep_no_unknowns_single_branch():
    spec = FibrationSpec(SPEC.base, {0: (UNIT_GEN,)}, 10, ())
    assert list(sweep_unknowns(spec)) == [()]


def test_sweep_two_unknowns_binary_order():
    base = PolyAlgebraSpec.from_pairs([("a", 6), ("b", 8)])
    spec = FibrationSpec(
        base,
        {0: (UNIT_GEN,), 5: ("u",), 7: ("v",)},
        12,
        (
            UnknownScalar("alpha", "u", 6, base.gen("a")),
            UnknownScalar("beta", "v", 8, base.gen("b")),
        ),
    )
    keys = list(sweep_unknowns(spec))
    assert keys == [
        (("alpha", 0), ("beta", 0)),
        (("alpha", 0), ("beta", 1)),
        (("alpha", 1), ("beta", 0)),
        (("alpha", 1), ("beta", 1)),
    ]


def test_two_dimensional_fibre_degree_rank_one_cancellation():
    # two degree-5 classes, each with its own transgressive scalar, both
    # targeting the same base class: any nonzero branch has a rank-one
    # matrix [1 1] or [1 0], so exactly one pair cancels
    base = SPEC.base
    spec = FibrationSpec(
        base,
        {0: (UNIT_GEN,), 5: ("u_5", "v_5")},
        10,
        (
            UnknownScalar("eps_u", "u_5", 6, base.gen("x_6")),
            UnknownScalar("eps_v", "v_5", 6, base.gen("x_6")),
        ),
    )
    sweep = sweep_unknowns(spec)
    assert list(sweep) == [
        (("eps_u", 0), ("eps_v", 0)),
        (("eps_u", 0), ("eps_v", 1)),
        (("eps_u", 1), ("eps_v", 0)),
        (("eps_u", 1), ("eps_v", 1)),
    ]
    collapsed = total_dims(sweep[(("eps_u", 0), ("eps_v", 0))], 10)
    assert collapsed == [1, 0, 0, 0, 1, 2, 1, 1, 1, 2, 1]
    cancelled = [1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0]
    for key in list(sweep)[1:]:
        assert total_dims(sweep[key], 10) == cancelled


def test_diagonal_survivor_is_the_sum_class():
    base = SPEC.base
    spec = FibrationSpec(
        base,
        {0: (UNIT_GEN,), 5: ("u_5", "v_5")},
        10,
        (
            UnknownScalar("eps_u", "u_5", 6, base.gen("x_6")),
            UnknownScalar("eps_v", "v_5", 6, base.gen("x_6")),
        ),
    )
    page, _ = run_to_einfty(spec, resolve_assignment(spec, {"eps_u": 1, "eps_v": 1}))
    assert page.describe(0, 5) == ["u_5 + v_5"]
    assert page.describe(4, 5) == ["x_4*u_5 + x_4*v_5"]


def test_interleaved_pages_with_extra_fibre_generator():
    # wider window, one extra degree-7 fibre class with its own page-8
    # transgression: hand-checked totals for all four branches.  The
    # page-3 arrow (4,7) -> (7,5) is bidegree-admissible but its value
    # is forced to zero by the Leibniz rule (the degree-7 generator has
    # no page-3 target at the fibre column).
    base = SPEC.base
    spec = FibrationSpec(
        base,
        {0: (UNIT_GEN,), 5: ("u_5",), 7: ("v_7",)},
        12,
        (
            UnknownScalar("eps", "u_5", 6, base.gen("x_6")),
            UnknownScalar("nu", "v_7", 8, Polynomial.of(Monomial((2, 0, 0)))),
        ),
    )
    assert (3, (4, 7), (7, 5)) in admissible_differentials(spec)
    sweep = {key: total_dims(rep, 12) for key, rep in sweep_unknowns(spec).items()}
    assert sweep == {
        (("eps", 0), ("nu", 0)): [1, 0, 0, 0, 1, 1, 1, 2, 1, 1, 1, 3, 3],
        (("eps", 0), ("nu", 1)): [1, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 2, 2],
        (("eps", 1), ("nu", 0)): [1, 0, 0, 0, 1, 0, 0, 2, 1, 0, 0, 2, 1],
        (("eps", 1), ("nu", 1)): [1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0],
    }


def test_leibniz_extend_on_a_later_page():
    assignment = assignment_for(1)
    page = initial_page(SPEC, assignment)
    while page.r < 6:
        page = turn_page(page)
    matrices = leibniz_extend(SPEC, assignment, 6, page=page)
    assert set(matrices) == {(0, 5), (4, 5)}
    # after the turn, sources and targets are gone; no page-7 matrices remain
    after = turn_page(page)
    assert leibniz_extend(SPEC, assignment, 7, page=after) == {}


def test_turn_page_detects_nonzero_composite():
    import dataclasses

    from sseqlab.errors import InvariantBreach
    from sseqlab.f2 import F2Matrix

    page = initial_page(SPEC, assignment_for(1))
    while page.r < 6:
        page = turn_page(page)
    # corrupt the page: pretend d_6 also acts out of (6,0) onto (12,0)'s
    # slot so the composite (0,5) -> (6,0) -> ... is nonzero
    fake = dict(page.differentials)
    fake[(6, 0)] = F2Matrix.identity(1)
    corrupted = dataclasses.replace(page, differentials=fake)
    with pytest.raises(InvariantBreach):
        turn_page(corrupted)


# ---------------------------------------------------------------- validation


def test_fibre_degree_zero_must_be_unit():
    with pytest.raises(ValidationError):
        FibrationSpec(SPEC.base, {0: ("1", "extra")}, 10, ())
    with pytest.raises(ValidationError):
        FibrationSpec(SPEC.base, {5: ("u_5",)}, 10, ())


def test_unknown_page_must_match_transgression():
    with pytest.raises(ValidationError):
        FibrationSpec(
            SPEC.base,
            {0: (UNIT_GEN,), 5: ("u_5",)},
            10,
            (UnknownScalar("eps", "u_5", 5, SPEC.base.gen("x_6")),),
        )


def test_unknown_target_degree_checked():
    with pytest.raises(ValidationError):
        FibrationSpec(
            SPEC.base,
            {0: (UNIT_GEN,), 5: ("u_5",)},
            10,
            (UnknownScalar("eps", "u_5", 6, SPEC.base.gen("x_4")),),
        )
