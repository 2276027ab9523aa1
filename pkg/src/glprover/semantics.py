"""Finite Kripke models and the semantic ground truth.

Worlds are small naturals.  A valuation lists, per atom, the worlds where the
atom is true; every (atom, world) pair not listed is false.  On top of the
forcing evaluator this module provides the frame-class predicates for GL
(irreflexive transitive finite, and transitive Noetherian restricted to
finite frames), an exhaustive bounded validity oracle, and bisimulations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import BudgetExceededError
from .syntax import And, Atom, Box, Falsum, Formula, Iff, Imp, Not, Or, Verum, atoms

DEFAULT_EVAL_BUDGET = 10**8


class UnknownWorldError(ValueError):
    """Raised when a formula is evaluated at a world outside the model."""


@dataclass(frozen=True)
class Frame:
    """Finite frame: a world set and an accessibility relation on it."""

    worlds: frozenset[int]
    rel: frozenset[tuple[int, int]]

    def __post_init__(self):
        for x, y in self.rel:
            if x not in self.worlds or y not in self.worlds:
                raise ValueError(f"relation pair ({x},{y}) has an endpoint outside the world set")


@dataclass(frozen=True)
class Model:
    """Frame plus atomic valuation; unlisted (atom, world) pairs are false."""

    frame: Frame
    val: tuple[tuple[str, frozenset[int]], ...] = ()

    def __post_init__(self):
        for name, ws in self.val:
            if not ws <= self.frame.worlds:
                raise ValueError(f"valuation of {name!r} mentions worlds outside the frame")

    def true_worlds(self, atom_name: str) -> frozenset[int]:
        for name, ws in self.val:
            if name == atom_name:
                return ws
        return frozenset()


def make_model(worlds, rel, val=None) -> Model:
    """Convenience constructor from plain iterables / a dict valuation."""
    frame = Frame(frozenset(worlds), frozenset((x, y) for x, y in rel))
    items = tuple(sorted((a, frozenset(ws)) for a, ws in (val or {}).items()))
    return Model(frame, items)


def holds(m: Model, f: Formula, w: int) -> bool:
    """Forcing: is ``f`` true at world ``w`` of model ``m``?

    Box f is true at w iff f is true at every u in the world set with
    (w, u) in the relation.
    """
    if w not in m.frame.worlds:
        raise UnknownWorldError(f"world {w} is not in the model")
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Verum):
        return True
    if isinstance(f, Atom):
        return w in m.true_worlds(f.name)
    if isinstance(f, Not):
        return not holds(m, f.sub, w)
    if isinstance(f, And):
        return holds(m, f.left, w) and holds(m, f.right, w)
    if isinstance(f, Or):
        return holds(m, f.left, w) or holds(m, f.right, w)
    if isinstance(f, Imp):
        return (not holds(m, f.left, w)) or holds(m, f.right, w)
    if isinstance(f, Iff):
        return holds(m, f.left, w) == holds(m, f.right, w)
    if isinstance(f, Box):
        return all(holds(m, f.sub, u) for u in m.frame.worlds if (w, u) in m.frame.rel)
    raise TypeError(f"not a formula: {f!r}")


# Bitmask evaluator used by the exhaustive checks: world i is bit i.  Computes
# in one pass the set of worlds where a formula is true.  Must agree with
# `holds` (property-tested).

def _eval_mask(f: Formula, full: int, succ: dict[int, list[int]], val_masks: dict[str, int]) -> int:
    if isinstance(f, Falsum):
        return 0
    if isinstance(f, Verum):
        return full
    if isinstance(f, Atom):
        return val_masks.get(f.name, 0)
    if isinstance(f, Not):
        return full & ~_eval_mask(f.sub, full, succ, val_masks)
    if isinstance(f, And):
        return _eval_mask(f.left, full, succ, val_masks) & _eval_mask(f.right, full, succ, val_masks)
    if isinstance(f, Or):
        return _eval_mask(f.left, full, succ, val_masks) | _eval_mask(f.right, full, succ, val_masks)
    if isinstance(f, Imp):
        return (full & ~_eval_mask(f.left, full, succ, val_masks)) | _eval_mask(f.right, full, succ, val_masks)
    if isinstance(f, Iff):
        a = _eval_mask(f.left, full, succ, val_masks)
        b = _eval_mask(f.right, full, succ, val_masks)
        return full & ~(a ^ b)
    if isinstance(f, Box):
        sub = _eval_mask(f.sub, full, succ, val_masks)
        mask = 0
        for w in succ:
            if all(sub >> u & 1 for u in succ[w]):
                mask |= 1 << w
        return mask
    raise TypeError(f"not a formula: {f!r}")


def _successors(fr: Frame) -> dict[int, list[int]]:
    succ: dict[int, list[int]] = {w: [] for w in sorted(fr.worlds)}
    for x, y in sorted(fr.rel):
        succ[x].append(y)
    return succ


def _valuation_masks(atom_names: list[str], n_worlds: int, mask: int) -> dict[str, int]:
    world_bits = (1 << n_worlds) - 1
    return {a: (mask >> (i * n_worlds)) & world_bits for i, a in enumerate(atom_names)}


def frame_valid(fr: Frame, f: Formula, eval_budget: int = DEFAULT_EVAL_BUDGET) -> bool:
    """Is ``f`` true at every world of ``fr`` under every valuation of its
    atoms?  Exhaustive over all 2^(atoms * worlds) valuations."""
    if not fr.worlds:
        raise ValueError("frame validity needs a nonempty world set")
    names = sorted(atoms(f))
    worlds = sorted(fr.worlds)
    n = len(worlds)
    if 2 ** (len(names) * n) * n > eval_budget:
        raise BudgetExceededError(f"frame_valid: 2^({len(names)}*{n}) valuations exceed the budget")
    # Worlds may be arbitrary naturals; map to bit positions 0..n-1.
    index = {w: i for i, w in enumerate(worlds)}
    succ = {index[w]: [index[u] for u in fr.worlds if (w, u) in fr.rel] for w in worlds}
    full = (1 << n) - 1
    for mask in range(2 ** (len(names) * n)):
        val_masks = _valuation_masks(names, n, mask)
        if _eval_mask(f, full, succ, val_masks) != full:
            return False
    return True


def is_itf(fr: Frame) -> bool:
    """Nonempty, irreflexive, transitive (finiteness is intrinsic here)."""
    if not fr.worlds:
        return False
    if any((x, x) in fr.rel for x in fr.worlds):
        return False
    for x, y in fr.rel:
        for z in fr.worlds:
            if (y, z) in fr.rel and (x, z) not in fr.rel:
                return False
    return True


def itf_report(fr: Frame) -> list[str]:
    """Clause-level failures of the ITF predicate; empty iff is_itf holds."""
    problems = []
    if not fr.worlds:
        problems.append("world set is empty")
    for x in sorted(fr.worlds):
        if (x, x) in fr.rel:
            problems.append(f"relation is reflexive at {x}")
    for x, y in sorted(fr.rel):
        for z in sorted(fr.worlds):
            if (y, z) in fr.rel and (x, z) not in fr.rel:
                problems.append(f"relation is not transitive: {x}R{y} and {y}R{z} but not {x}R{z}")
    return problems


def _has_cycle(fr: Frame) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {w: WHITE for w in fr.worlds}
    succ = _successors(fr)

    def visit(w: int) -> bool:
        color[w] = GRAY
        for u in succ[w]:
            if color[u] == GRAY or (color[u] == WHITE and visit(u)):
                return True
        color[w] = BLACK
        return False

    return any(color[w] == WHITE and visit(w) for w in sorted(fr.worlds))


def is_transnt_finite(fr: Frame) -> bool:
    """Nonempty, transitive and conversely well-founded.  On finite frames
    converse well-foundedness is exactly acyclicity."""
    if not fr.worlds:
        return False
    for x, y in fr.rel:
        for z in fr.worlds:
            if (y, z) in fr.rel and (x, z) not in fr.rel:
                return False
    return not _has_cycle(fr)


# --- exhaustive bounded validity oracle --------------------------------------

@dataclass(frozen=True)
class ValidUpTo:
    """No ITF countermodel exists with at most ``bound`` worlds."""

    bound: int


@dataclass(frozen=True)
class Falsified:
    """A concrete ITF model and a world where the formula is false."""

    model: Model
    world: int


Verdict = ValidUpTo | Falsified

# Off-diagonal world pairs in lexicographic order; bit k of a relation mask
# selects pair k.  Diagonal pairs are omitted: they never occur in an ITF
# relation, and dropping them preserves the ascending-mask enumeration order.


def _offdiag_pairs(n: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(n) for y in range(n) if x != y]


def enumerate_frames(n: int):
    """All frames on worlds 0..n-1, ascending by relation bitmask over the
    lexicographic ordering of all n^2 pairs."""
    pairs = [(x, y) for x in range(n) for y in range(n)]
    worlds = frozenset(range(n))
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        yield Frame(worlds, rel)


def enumerate_itf_frames(n: int):
    """All ITF frames on worlds 0..n-1, in deterministic ascending order."""
    pairs = _offdiag_pairs(n)
    worlds = frozenset(range(n))
    for mask in range(1 << len(pairs)):
        fr = Frame(worlds, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))
        if is_itf(fr):
            yield fr


def oracle_valid(f: Formula, max_worlds: int, eval_budget: int = DEFAULT_EVAL_BUDGET) -> Verdict:
    """Exhaustively check ``f`` on every ITF frame with 1..max_worlds worlds,
    every valuation of its atoms and every world.  Returns the first failure
    (frames by world count then relation mask, valuations by mask, worlds
    ascending), or ValidUpTo(max_worlds)."""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    names = sorted(atoms(f))
    cost = sum(2 ** (n * n - n) * 2 ** (len(names) * n) * n for n in range(1, max_worlds + 1))
    if cost > eval_budget:
        raise BudgetExceededError(f"oracle_valid: estimated {cost} evaluations exceed the budget")
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        for fr in enumerate_itf_frames(n):
            succ = _successors(fr)
            for mask in range(2 ** (len(names) * n)):
                val_masks = _valuation_masks(names, n, mask)
                true_mask = _eval_mask(f, full, succ, val_masks)
                if true_mask != full:
                    w = next(i for i in range(n) if not true_mask >> i & 1)
                    val = {a: frozenset(i for i in range(n) if val_masks[a] >> i & 1) for a in names}
                    return Falsified(make_model(fr.worlds, fr.rel, val), w)
    return ValidUpTo(max_worlds)


# --- bisimulation -------------------------------------------------------------

def _atom_names(*models: Model) -> list[str]:
    names: set[str] = set()
    for m in models:
        names.update(a for a, _ in m.val)
    return sorted(names)


def is_bisimulation(m1: Model, m2: Model, Z: frozenset[tuple[int, int]] | set) -> bool:
    """Do the pairs in ``Z`` satisfy membership, atom agreement, and the
    forth and back conditions?  The empty relation qualifies vacuously."""
    names = _atom_names(m1, m2)
    for w1, w2 in Z:
        if w1 not in m1.frame.worlds or w2 not in m2.frame.worlds:
            return False
        if any((w1 in m1.true_worlds(a)) != (w2 in m2.true_worlds(a)) for a in names):
            return False
        for u1 in m1.frame.worlds:
            if (w1, u1) in m1.frame.rel:
                if not any((w2, u2) in m2.frame.rel and (u1, u2) in Z for u2 in m2.frame.worlds):
                    return False
        for u2 in m2.frame.worlds:
            if (w2, u2) in m2.frame.rel:
                if not any((w1, u1) in m1.frame.rel and (u1, u2) in Z for u1 in m1.frame.worlds):
                    return False
    return True


def largest_bisimulation(m1: Model, m2: Model) -> frozenset[tuple[int, int]]:
    """Greatest bisimulation between two models: start from atom agreement
    and refine until the forth/back conditions stabilize."""
    names = _atom_names(m1, m2)
    Z = {
        (w1, w2)
        for w1 in m1.frame.worlds
        for w2 in m2.frame.worlds
        if all((w1 in m1.true_worlds(a)) == (w2 in m2.true_worlds(a)) for a in names)
    }
    while True:
        keep = set()
        for w1, w2 in Z:
            forth = all(
                any((w2, u2) in m2.frame.rel and (u1, u2) in Z for u2 in m2.frame.worlds)
                for u1 in m1.frame.worlds
                if (w1, u1) in m1.frame.rel
            )
            back = all(
                any((w1, u1) in m1.frame.rel and (u1, u2) in Z for u1 in m1.frame.worlds)
                for u2 in m2.frame.worlds
                if (w2, u2) in m2.frame.rel
            )
            if forth and back:
                keep.add((w1, w2))
        if keep == Z:
            return frozenset(Z)
        Z = keep


# --- model file format --------------------------------------------------------
#
# A single JSON document:  {"worlds": [naturals], "rel": [[x, y], ...],
# "val": {atom: [worlds where true]}}.  Canonical form sorts all arrays
# ascending and object keys alphabetically.  An optional "falsifiedAt" field
# accompanies countermodels.

def model_to_dict(m: Model, falsified_at: int | None = None) -> dict:
    doc: dict = {
        "worlds": sorted(m.frame.worlds),
        "rel": sorted([x, y] for x, y in m.frame.rel),
        "val": {a: sorted(ws) for a, ws in m.val},
    }
    if falsified_at is not None:
        doc["falsifiedAt"] = falsified_at
    return doc


def model_to_json(m: Model, falsified_at: int | None = None) -> str:
    return json.dumps(model_to_dict(m, falsified_at), indent=2, sort_keys=True) + "\n"


def model_from_dict(doc: dict) -> tuple[Model, int | None]:
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    try:
        worlds = doc["worlds"]
        rel = doc["rel"]
        val = doc.get("val", {})
    except (KeyError, TypeError) as exc:
        raise ValueError(f"model document is missing field {exc}") from None
    if not isinstance(worlds, list) or not all(isinstance(w, int) and w >= 0 for w in worlds):
        raise ValueError("'worlds' must be an array of naturals")
    if not isinstance(rel, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(c, int) for c in p) for p in rel
    ):
        raise ValueError("'rel' must be an array of 2-arrays")
    if not isinstance(val, dict) or not all(
        isinstance(a, str) and isinstance(ws, list) and all(isinstance(w, int) for w in ws)
        for a, ws in val.items()
    ):
        raise ValueError("'val' must map atom names to arrays of worlds")
    falsified_at = doc.get("falsifiedAt")
    if falsified_at is not None and not isinstance(falsified_at, int):
        raise ValueError("'falsifiedAt' must be a natural")
    model = make_model(worlds, ((x, y) for x, y in rel), {a: ws for a, ws in val.items()})
    return model, falsified_at


def model_from_json(text: str) -> tuple[Model, int | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from None
    return model_from_dict(doc)


def model_to_dot(m: Model, falsified_at: int | None = None) -> str:
    """Graph description of a model: one node per world labelled with the
    atoms true there, one edge per relation pair."""
    names = _atom_names(m)
    lines = ["digraph model {"]
    for w in sorted(m.frame.worlds):
        true_here = [a for a in names if w in m.true_worlds(a)]
        label = str(w) + (": " + " ".join(true_here) if true_here else "")
        if falsified_at == w:
            label += " (falsified here)"
        lines.append(f'  w{w} [label="{label}"];')
    for x, y in sorted(m.frame.rel):
        lines.append(f"  w{x} -> w{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
