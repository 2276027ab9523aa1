"""Standard countermodel construction from maximal consistent lists.

A second, independent refutation route: worlds are repetition-free consistent
lists that settle every subformula of the target (either it or its negation
is a member), the accessibility relation transfers boxed members forward and
demands a fresh boxed witness, and an atom is true at a world exactly when it
is a member.  Consistency of a list is decided by the sequent prover on the
negated conjunction of its members.  The construction is verified per
instance by the truth-lemma check: membership must coincide with forcing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceededError, InternalCheckError
from .hilbert import conjlist
from .semantics import Model, holds, is_itf, make_model
from .sequent import DEFAULT_MAX_STEPS, Proved, Refuted, search
from .syntax import Atom, Box, Formula, Not, sort_key, subformulas, subsentences

DEFAULT_CANDIDATE_BUDGET = 4096

FormulaList = tuple[Formula, ...]


def consistent(xs, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """A list is consistent when the negation of its conjunction is not a
    theorem; the sequent prover decides theoremhood."""
    return isinstance(search(Not(conjlist(xs)), max_steps), Refuted)


@lru_cache(maxsize=None)
def _consistent_set(fs: frozenset[Formula]) -> bool:
    return consistent(sorted(fs, key=sort_key))


def no_repetition(xs) -> bool:
    xs = list(xs)
    return len(set(xs)) == len(xs)


def is_maximal_consistent(p: Formula, xs) -> bool:
    """Consistent, repetition-free, and containing each subformula of ``p``
    or its negation."""
    xs = list(xs)
    if not no_repetition(xs):
        return False
    if not consistent(xs):
        return False
    members = set(xs)
    return all(q in members or Not(q) in members for q in subformulas(p))


def extend_maximal_consistent(p: Formula, xs) -> FormulaList:
    """Extend a consistent list of subsentences of ``p`` to a maximal
    consistent one, deciding each missing subformula in ascending formula
    order: keep it if that stays consistent, otherwise keep its negation."""
    xs = list(xs)
    sub = subsentences(p)
    if any(q not in sub for q in xs):
        raise ValueError("every member must be a subsentence of the target formula")
    if not consistent(xs):
        raise ValueError("the initial list must be consistent")
    out = list(xs)
    members = set(out)
    for q in sorted(subformulas(p), key=sort_key):
        if q in members or Not(q) in members:
            continue
        if _consistent_set(frozenset(members | {q})):
            out.append(q)
            members.add(q)
        else:
            out.append(Not(q))
            members.add(Not(q))
    return tuple(out)


def _standard_rel_core(w: set[Formula], x: set[Formula]) -> bool:
    for f in w:
        if isinstance(f, Box) and not (f in x and f.sub in x):
            return False
    return any(isinstance(f, Box) and Not(f) in w for f in x)


def gl_standard_rel(p: Formula, w, x) -> bool:
    """Accessibility between maximal consistent lists: boxed members of ``w``
    transfer to ``x`` together with their bodies, and ``x`` owns a boxed
    member whose negation is in ``w``."""
    w, x = list(w), list(x)
    sub = subsentences(p)
    for side in (w, x):
        if any(q not in sub for q in side) or not is_maximal_consistent(p, side):
            return False
    return _standard_rel_core(set(w), set(x))


@dataclass(frozen=True)
class StandardModel:
    """Indexed standard model for a target formula.

    ``worlds[i]`` is the maximal consistent list behind world ``i`` of
    ``model``; lists are in canonical (subformula-ordered) form and the
    world numbering follows their canonical sort."""

    target: Formula
    worlds: tuple[FormulaList, ...]
    model: Model


def _enumerate_worlds(p: Formula, max_candidates: int, max_steps: int) -> list[FormulaList]:
    subs = sorted(subformulas(p), key=sort_key)
    if 2 ** len(subs) > max_candidates:
        raise BudgetExceededError(
            f"standard model construction: 2^{len(subs)} candidate worlds exceed the budget"
        )
    seen: set[FormulaList] = set()
    worlds = []
    for polarity in itertools.product((True, False), repeat=len(subs)):
        candidate: list[Formula] = []
        for q, keep in zip(subs, polarity):
            choice = q if keep else Not(q)
            if choice not in candidate:
                candidate.append(choice)
        key = tuple(candidate)
        if key in seen:
            continue
        seen.add(key)
        if _consistent_set(frozenset(candidate)):
            worlds.append(key)
    worlds.sort(key=lambda lst: tuple(sort_key(q) for q in lst))
    return worlds


def build_standard_model(
    p: Formula,
    max_candidates: int = DEFAULT_CANDIDATE_BUDGET,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[StandardModel, FormulaList] | None:
    """None when ``p`` is a theorem; otherwise the indexed standard model
    together with a world list containing Not p, at which ``p`` fails.

    The frame is checked to be irreflexive-transitive and the truth lemma is
    checked on every (world, subformula) pair before returning."""
    if isinstance(search(p, max_steps), Proved):
        return None
    worlds = _enumerate_worlds(p, max_candidates, max_steps)
    if not worlds:
        raise InternalCheckError("refuted formula produced no maximal consistent lists")
    member_sets = [set(w) for w in worlds]
    rel = {
        (i, j)
        for i in range(len(worlds))
        for j in range(len(worlds))
        if _standard_rel_core(member_sets[i], member_sets[j])
    }
    val = {}
    for i, members in enumerate(member_sets):
        for f in members:
            if isinstance(f, Atom):
                val.setdefault(f.name, set()).add(i)
    model = make_model(range(len(worlds)), rel, val)
    sm = StandardModel(p, tuple(worlds), model)
    if not is_itf(model.frame):
        raise InternalCheckError("standard frame is not irreflexive transitive")
    if not truth_lemma_check(p, sm):
        raise InternalCheckError("truth lemma fails on the standard model")
    for i, members in enumerate(member_sets):
        if Not(p) in members:
            if holds(model, p, i):
                raise InternalCheckError("standard model does not falsify the target")
            return sm, worlds[i]
    raise InternalCheckError("no world of the standard model contains the negated target")


def truth_lemma_check(p: Formula, sm: StandardModel) -> bool:
    """Membership coincides with forcing: for every world and every
    subformula of the target, the subformula is a member of the world's list
    iff it holds at the world's index."""
    for i, members in enumerate(sm.worlds):
        mset = set(members)
        for q in subformulas(p):
            if (q in mset) != holds(sm.model, q, i):
                return False
    return True


def world_lists_to_dict(sm: StandardModel) -> dict:
    """Sidecar document mapping world indices to their formula lists."""
    from .syntax import pretty

    return {str(i): [pretty(q) for q in lst] for i, lst in enumerate(sm.worlds)}
