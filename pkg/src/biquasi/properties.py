"""Structural properties read off concrete tables by exhaustive scans."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Biquasigroup, CayleyTable, FiniteGroup, is_latin_square
from .identities import builtin, check, compile_full

__all__ = [
    "PropertyReport",
    "idempotents",
    "neutral_elements",
    "unipotency",
    "is_ward",
    "is_boolean_group",
    "full_report",
]


def idempotents(t: CayleyTable) -> frozenset[int]:
    """Elements with a.a = a."""
    diag = t.diagonal()
    return frozenset(int(i) for i in range(t.order) if diag[i] == i)


def neutral_elements(t: CayleyTable) -> tuple[Optional[int], Optional[int]]:
    """(left, right) neutral elements, each None when absent.

    A quasigroup has at most one of each; multiples mean the input is
    not a quasigroup and are rejected.
    """
    n = t.order
    full = np.arange(n)
    lefts = [e for e in range(n) if np.array_equal(t.rows[e], full)]
    rights = [e for e in range(n) if np.array_equal(t.rows[:, e], full)]
    if len(lefts) > 1 or len(rights) > 1:
        raise ValueError("multiple neutral elements; table is not a quasigroup")
    return (lefts[0] if lefts else None, rights[0] if rights else None)


def unipotency(t: CayleyTable) -> Optional[int]:
    """The constant diagonal value q, or None if the diagonal varies."""
    diag = t.diagonal()
    q = int(diag[0])
    return q if bool(np.all(diag == q)) else None


def is_ward(t: CayleyTable) -> bool:
    """True iff (x o z) o (y o z) = x o y holds on the single-operation view."""
    if not is_latin_square(t):
        raise ValueError("Ward check requires a Latin square")
    return check(Biquasigroup(t, t), builtin("e1")).holds


def is_boolean_group(g: FiniteGroup) -> bool:
    """Commutative with x+x = identity for every x."""
    return g.commutative and bool(np.all(g.table.diagonal() == g.identity))


@dataclass(frozen=True)
class PropertyReport:
    """One-pass structural summary of a biquasigroup.

    medial/paramedial here are the per-table identities; whether the pair
    is linear over one commutative group is a census-level question and
    is not decidable from raw tables.
    """

    order: int
    idempotents_circ: frozenset[int]
    idempotents_star: frozenset[int]
    left_neutral_circ: Optional[int]
    right_neutral_circ: Optional[int]
    left_neutral_star: Optional[int]
    right_neutral_star: Optional[int]
    unipotent_circ: Optional[int]
    unipotent_star: Optional[int]
    commutative_circ: bool
    commutative_star: bool
    ward_circ: bool
    ward_star: bool
    medial_circ: bool
    medial_star: bool
    paramedial_circ: bool
    paramedial_star: bool
    left_modular_circ: bool
    tables_equal: bool


def full_report(biq: Biquasigroup) -> PropertyReport:
    """Compute every report field by brute force."""
    n = biq.order
    circ, star = biq.circ, biq.star
    ln_c, rn_c = neutral_elements(circ)
    ln_s, rn_s = neutral_elements(star)

    def holds(name: str) -> bool:
        return compile_full(builtin(name), n)(circ.rows, star.rows)

    ward_c = is_ward(circ)
    uni_c = unipotency(circ)
    # Ward quasigroups are unipotent; guard the report's own consistency.
    assert not ward_c or uni_c is not None

    return PropertyReport(
        order=n,
        idempotents_circ=idempotents(circ),
        idempotents_star=idempotents(star),
        left_neutral_circ=ln_c,
        right_neutral_circ=rn_c,
        left_neutral_star=ln_s,
        right_neutral_star=rn_s,
        unipotent_circ=uni_c,
        unipotent_star=unipotency(star),
        commutative_circ=bool(np.array_equal(circ.rows, circ.rows.T)),
        commutative_star=bool(np.array_equal(star.rows, star.rows.T)),
        ward_circ=ward_c,
        ward_star=is_ward(star),
        medial_circ=holds("medial_circ"),
        medial_star=holds("medial_star"),
        paramedial_circ=holds("paramedial_circ"),
        paramedial_star=holds("paramedial_star"),
        left_modular_circ=holds("left_modular"),
        tables_equal=circ == star,
    )
