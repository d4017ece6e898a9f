"""The two translation functors, the iterated-substitution engine, round trips."""

import itertools

import pytest

from clone_forge.clone import (
    App,
    Budget,
    FiniteAlgebra,
    FreeClone,
    Signature,
    Var,
    builtin_clone,
    finite_clone_of_algebra,
    free_mu,
)
from clone_forge.fin_cat import FinMap
from clone_forge.iso_bridge import (
    PhiContext,
    c_functor,
    c_on_hom,
    phi,
    roundtrip_alg,
    roundtrip_clone,
    s_functor,
    s_on_hom,
)
from clone_forge.presheaf_f import StageRangeError
from clone_forge.subst_algebra import check_diagrams, check_presentation, truncate_algebra

FREE = FreeClone(Signature({"b": 2}))
FREE_CONST = FreeClone(Signature({"b": 2, "e": 0}))
BUD = Budget(max_depth=2, max_arity=3)


def test_s_image_structure_on_free_clone():
    alg = s_functor(FREE, BUD)
    assert alg.v_at(0) == Var(0)
    assert alg.v_at(2) == Var(2)
    got = alg.s_at(1, App("b", (Var(0), Var(1))), Var(0))
    assert got == App("b", (Var(0), Var(0)))


def test_s_image_action_of_initial_is_lookup():
    alg = s_functor(builtin_clone("initial"))
    for m, n in itertools.product(range(4), repeat=2):
        from clone_forge.fin_cat import enumerate_maps

        for f in enumerate_maps(m, n):
            for i in range(m):
                assert alg.base.act(f, i) == f.table[i]


def test_phi_base_case_returns_subject():
    alg = s_functor(builtin_clone("initial"))
    assert phi(PhiContext(alg, 0, 2, 1, ())) == 1


def test_phi_single_step_on_initial():
    alg = s_functor(builtin_clone("initial"))
    for a in range(2):
        for u in range(1):
            expected = a if a < 1 else u
            assert phi(PhiContext(alg, 1, 1, a, (u,))) == expected


def test_phi_two_steps_on_free_clone():
    alg = s_functor(FREE, BUD)
    a = App("b", (Var(1), Var(2)))
    us = (Var(0), App("b", (Var(0), Var(0))))
    assert phi(PhiContext(alg, 2, 1, a, us)) == App(
        "b", (Var(0), App("b", (Var(0), Var(0))))
    )


def test_phi_unfolds_last_substituend_first():
    alg = s_functor(FREE, BUD)
    a = App("b", (Var(1), Var(2)))
    us = (Var(0), App("b", (Var(0), Var(0))))
    inclusion = FinMap(1, 2, (0,))
    inner = alg.s_at(2, a, alg.base.act(inclusion, us[1]))
    assert phi(PhiContext(alg, 2, 1, a, us)) == phi(
        PhiContext(alg, 1, 1, inner, us[:1])
    )


def test_phi_arity_mismatch():
    alg = s_functor(builtin_clone("initial"))
    with pytest.raises(ValueError):
        PhiContext(alg, 2, 1, 0, (0,))


def test_c_functor_iota():
    back = c_functor(s_functor(FREE, BUD))
    assert back.iota(2, 1) == Var(1)
    assert back.iota(3, 0) == Var(0)
    terminal_back = c_functor(s_functor(builtin_clone("terminal")))
    assert terminal_back.iota(3, 1) == "*"


def test_c_functor_mu_agrees_with_free_substitution():
    back = c_functor(s_functor(FREE, BUD))
    t = App("b", (Var(0), Var(1)))
    us = (Var(0), Var(0))
    assert back.mu(2, 1, t, us) == free_mu(2, 1, t, us)
    for t in FREE.elems(2, Budget(max_depth=1)):
        for us in itertools.product(FREE.elems(1, Budget(max_depth=1)), repeat=2):
            assert back.mu(2, 1, t, us) == free_mu(2, 1, t, us)


def test_c_functor_rejects_missing_stages():
    table = truncate_algebra(s_functor(builtin_clone("initial")), 3)
    back = c_functor(table)
    assert back.mu(1, 2, 0, (1,)) == 1
    with pytest.raises(StageRangeError) as err:
        back.mu(2, 2, 1, (0, 1))
    assert err.value.stage == 4


def test_s_images_are_lawful_and_c_images_are_clones():
    # small budgets here; the acceptance suite re-runs this at full bounds
    from clone_forge.clone import clone_laws_check

    small = Budget(max_depth=1, max_arity=2)
    for clone in (
        builtin_clone("initial"),
        builtin_clone("terminal"),
        builtin_clone("arrow"),
        FREE_CONST,
        finite_clone_of_algebra(FiniteAlgebra(2, {"meet": (2, (0, 0, 0, 1))}), 4),
    ):
        alg = s_functor(clone, small)
        assert check_presentation(alg, 3).passed, clone.name
        assert check_diagrams(alg, 3).passed, clone.name
        assert clone_laws_check(c_functor(alg), small).passed, clone.name


def test_s_on_hom_certifies_variable_embedding():
    report = s_on_hom(
        lambda m, i: Var(i),
        builtin_clone("initial"),
        FREE,
        Budget(max_depth=1, max_arity=3),
    )
    assert report.passed
    names = {c.law for c in report.checks}
    assert {"iota-preservation", "mu-preservation", "hom-substitution"} <= names


def test_s_on_hom_reports_broken_family():
    report = s_on_hom(
        lambda m, i: Var(0),
        builtin_clone("initial"),
        FREE,
        Budget(max_depth=1, max_arity=3),
    )
    assert not report.passed


def test_c_on_hom_certifies_identity():
    alg = s_functor(builtin_clone("initial"))
    report = c_on_hom(lambda m, x: x, alg, alg, 3, Budget(max_arity=1))
    assert report.passed


def test_roundtrip_clone_on_corpus():
    for clone in (
        builtin_clone("initial"),
        builtin_clone("terminal"),
        builtin_clone("arrow"),
        finite_clone_of_algebra(FiniteAlgebra(2, {"meet": (2, (0, 0, 0, 1))}), 3),
    ):
        assert roundtrip_clone(clone, Budget(max_arity=3)).passed, clone.name


def test_roundtrip_clone_free_small():
    assert roundtrip_clone(FREE_CONST, Budget(max_depth=1, max_arity=2)).passed


def test_roundtrip_alg_identity_on_s_images():
    assert roundtrip_alg(s_functor(builtin_clone("initial")), 4).passed
    assert roundtrip_alg(s_functor(builtin_clone("terminal")), 4).passed


def test_wrong_consumption_order_breaks_roundtrip():
    # consuming substituends first-to-last disagrees with plain substitution
    # on a non-commutative operator, which the round trip is built to detect
    alg = s_functor(FREE, BUD)

    def phi_wrong(m, n, a, us):
        for j in range(m):
            stage = n + m - 1 - j
            inclusion = FinMap(n, stage, tuple(range(n)))
            a = alg.s_at(stage, a, alg.base.act(inclusion, us[j]))
        return a

    shift = FinMap(2, 3, (1, 2))
    t = App("b", (Var(0), Var(1)))
    us = (Var(0), App("b", (Var(0), Var(0))))
    lifted = alg.base.act(shift, t)
    wrong = phi_wrong(2, 1, lifted, us)
    right = phi(PhiContext(alg, 2, 1, lifted, us))
    assert right == free_mu(2, 1, t, us)
    assert wrong != right
