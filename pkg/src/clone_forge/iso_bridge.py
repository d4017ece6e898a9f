"""Translations between clones and substitution algebras, with round trips.

A clone becomes an algebra by reading variable renaming off substitution
against projections, taking the top projection as the generic variable, and
specializing simultaneous substitution to the last slot.  An algebra becomes
a clone by iterating single-variable substitution; the iteration consumes
substituends from the last one backwards, which the round-trip checks pin
down on clones with non-commutative operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .checks import CheckPolicy, LawRunner, Report
from .clone import Budget, Clone, clone_hom_check
from .fin_cat import FinMap, enumerate_maps
from .presheaf_f import Presheaf
from .subst_algebra import SubstAlgebra, hom_check


class CloneActionPresheaf(Presheaf):
    """Clone carriers with the variable-renaming action.

    Actions are memoized per (map, element): the check loops revisit the same
    renamings constantly and carrier elements are hashable values.
    """

    def __init__(self, clone: Clone, budget: Budget | None = None):
        self.clone = clone
        self.budget = budget
        self.name = f"carriers({clone.name})"
        self._cache: dict = {}

    def set(self, m):
        return list(self.clone.elems(m, self.budget))

    def act(self, f, t):
        key = (f.dom, f.cod, f.table, t)
        hit = self._cache.get(key)
        if hit is None and key not in self._cache:
            images = tuple(self.clone.iota(f.cod, f.table[i]) for i in range(f.dom))
            hit = self.clone.mu(f.dom, f.cod, t, images)
            self._cache[key] = hit
        return hit


class CloneAlgebra(SubstAlgebra):
    """The substitution algebra carried by a clone."""

    def __init__(self, clone: Clone, budget: Budget | None = None):
        self.clone = clone
        self.base = CloneActionPresheaf(clone, budget)
        self.name = f"S({clone.name})"
        self._s_cache: dict = {}

    def v_at(self, m):
        return self.clone.iota(m + 1, m)

    def s_at(self, m, x, y):
        key = (m, x, y)
        hit = self._s_cache.get(key)
        if hit is None and key not in self._s_cache:
            images = tuple(self.clone.iota(m, i) for i in range(m)) + (y,)
            hit = self.clone.mu(m + 1, m, x, images)
            self._s_cache[key] = hit
        return hit


def s_functor(clone: Clone, budget: Budget | None = None) -> CloneAlgebra:
    return CloneAlgebra(clone, budget)


@dataclass(frozen=True)
class PhiContext:
    """Inputs of one iterated-substitution evaluation."""

    algebra: SubstAlgebra
    m: int
    n: int
    a: object
    us: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "us", tuple(self.us))
        if len(self.us) != self.m:
            raise ValueError(f"expected {self.m} substituends, got {len(self.us)}")


def phi(ctx: PhiContext):
    """Fold single-variable substitution over the substituends, last first.

    Step j rewrites a stage-(n+j+1) element to stage n+j by substituting the
    j-th substituend, first pushed up from stage n along the initial-segment
    inclusion.
    """
    alg, n = ctx.algebra, ctx.n
    a = ctx.a
    for j in range(ctx.m - 1, -1, -1):
        stage = n + j
        inclusion = FinMap(n, stage, tuple(range(n)))
        a = alg.s_at(stage, a, alg.base.act(inclusion, ctx.us[j]))
    return a


class AlgebraClone(Clone):
    """The clone carried by a substitution algebra.

    Carriers are the algebra's stages.  Substitution shifts the subject past
    n fresh slots and then iterates single-variable substitution; projections
    are renamed variables.  On truncated algebras any operation that needs an
    unavailable stage raises a range error naming that stage.
    """

    def __init__(self, algebra: SubstAlgebra):
        self.algebra = algebra
        self.name = f"C({algebra.name})"

    def elems(self, n, budget=None):
        return list(self.algebra.base.set(n))

    def iota(self, m, i):
        if not 0 <= i < m:
            raise ValueError(f"projection index {i} outside arity {m}")
        return self.algebra.base.act(FinMap(1, m, (i,)), self.algebra.v_at(0))

    def mu(self, m, n, t, us):
        us = tuple(us)
        if len(us) != m:
            raise ValueError(f"expected {m} substituends, got {len(us)}")
        shift = FinMap(m, n + m, tuple(n + i for i in range(m)))
        lifted = self.algebra.base.act(shift, t)
        return phi(PhiContext(self.algebra, m, n, lifted, us))

    def eq(self, n, a, b):
        return a == b


def c_functor(algebra: SubstAlgebra) -> AlgebraClone:
    return AlgebraClone(algebra)


def s_on_hom(
    h,
    src: Clone,
    dst: Clone,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
) -> Report:
    """Certify a clone homomorphism family as an algebra homomorphism.

    The family itself is unchanged; the report carries the source-side clone
    checks and the target-side algebra checks, so a broken family surfaces
    with its violated square rather than passing silently.
    """
    budget = budget or Budget()
    report = clone_hom_check(h, src, dst, budget, policy)
    algebra_side = hom_check(
        h, s_functor(src, budget), s_functor(dst, budget), budget.max_arity, policy
    )
    return report.extend(algebra_side)


def c_on_hom(
    h,
    src: SubstAlgebra,
    dst: SubstAlgebra,
    bound: int = 3,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
) -> Report:
    """Certify an algebra homomorphism family as a clone homomorphism."""
    budget = budget or Budget()
    report = hom_check(h, src, dst, bound, policy)
    clone_side = clone_hom_check(h, c_functor(src), c_functor(dst), budget, policy)
    return report.extend(clone_side)


def roundtrip_clone(
    clone: Clone,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
) -> Report:
    """Translate a clone to an algebra and back; demand equality on the nose."""
    budget = budget or Budget()
    policy = policy or CheckPolicy()
    back = c_functor(s_functor(clone, budget))
    report = Report()
    carriers = {}
    for n in range(budget.max_arity + 1):
        try:
            carriers[n] = list(clone.elems(n, budget))
        except Exception as exc:
            report.notes.append(f"carrier C_{n} unavailable: {exc}")
            break
    arities = sorted(carriers)

    carrier_eq = LawRunner("carrier-agreement", policy)
    for n in arities:
        def violated(_ignored, n=n):
            theirs = back.elems(n, budget)
            if theirs != carriers[n]:
                return {"n": n, "lhs": theirs, "rhs": carriers[n]}
            return None

        carrier_eq.run(f"n={n}", [[0]], violated)
    report.checks.append(carrier_eq.result())

    iota_eq = LawRunner("iota-agreement", policy)
    for m in arities:
        def violated(i, m=m):
            lhs = back.iota(m, i)
            rhs = clone.iota(m, i)
            if not clone.eq(m, lhs, rhs):
                return {"m": m, "i": i, "lhs": lhs, "rhs": rhs}
            return None

        iota_eq.run(f"m={m}", [list(range(m))], violated)
    report.checks.append(iota_eq.result())

    mu_eq = LawRunner("mu-agreement", policy)
    for m, n in itertools.product(arities, repeat=2):
        axes = [carriers[m]] + [carriers[n]] * m

        def violated(t, *us, m=m, n=n):
            lhs = back.mu(m, n, t, us)
            rhs = clone.mu(m, n, t, us)
            if not clone.eq(n, lhs, rhs):
                return {"t": t, "us": us, "lhs": lhs, "rhs": rhs}
            return None

        mu_eq.run(f"m={m},n={n}", axes, violated)
    report.checks.append(mu_eq.result())
    return report


def roundtrip_alg(
    algebra: SubstAlgebra,
    bound: int = 3,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
) -> Report:
    """Translate an algebra to a clone and back; demand equality on the nose."""
    budget = budget or Budget()
    policy = policy or CheckPolicy()
    back = s_functor(c_functor(algebra), budget)
    report = Report()
    top = algebra.max_stage()
    if top is not None and top < bound:
        report.notes.append(
            f"incomplete: bound {bound} clamped to stored stages 0..{top}"
        )
        bound = top
    A = {m: list(algebra.base.set(m)) for m in range(bound + 1)}

    act_eq = LawRunner("act-agreement", policy)
    for m, n in itertools.product(range(bound + 1), repeat=2):
        axes = [enumerate_maps(m, n), A[m]]

        def violated(f, x):
            lhs = back.base.act(f, x)
            rhs = algebra.base.act(f, x)
            if lhs != rhs:
                return {"f": f, "x": x, "lhs": lhs, "rhs": rhs}
            return None

        act_eq.run(f"{m}->{n}", axes, violated)
    report.checks.append(act_eq.result())

    s_eq = LawRunner("subst-agreement", policy)
    for m in range(bound):
        axes = [A[m + 1], A[m]]

        def violated(x, y, m=m):
            lhs = back.s_at(m, x, y)
            rhs = algebra.s_at(m, x, y)
            if lhs != rhs:
                return {"m": m, "x": x, "y": y, "lhs": lhs, "rhs": rhs}
            return None

        s_eq.run(f"m={m}", axes, violated)
    report.checks.append(s_eq.result())

    v_eq = LawRunner("variable-agreement", policy)
    for m in range(bound):
        def violated(_ignored, m=m):
            lhs = back.v_at(m)
            rhs = algebra.v_at(m)
            if lhs != rhs:
                return {"m": m, "lhs": lhs, "rhs": rhs}
            return None

        v_eq.run(f"m={m}", [[0]], violated)
    report.checks.append(v_eq.result())
    return report
