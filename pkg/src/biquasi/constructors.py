"""Named constructions: group catalog, Ward tables, and the Z_n families."""

from __future__ import annotations

import itertools
import math
from pathlib import Path

import numpy as np

from .core import (
    Biquasigroup,
    CayleyTable,
    FiniteGroup,
    Permutation,
    group_structure,
    is_latin_square,
    parse_table_text,
)
from .identities import builtin, compile_full
from .properties import is_ward, unipotency

__all__ = [
    "CATALOG_NAMES",
    "catalog",
    "ward_from_group",
    "derived_group",
    "extend_e4",
    "t26_construct",
    "inverse_op_biq",
    "e5_example",
    "e7_example",
    "family_c71",
    "family_c72",
    "family_e8_zn",
    "family_e9_zn",
    "e9_example",
]

# Every catalog group of order <= 8. Element 0 is always the identity.
CATALOG_NAMES = tuple(f"zn:{k}" for k in range(1, 9)) + (
    "z2xz2",
    "z2xz4",
    "z2cube",
    "s3",
    "d4",
    "q8",
)


def _cyclic_rows(n: int) -> np.ndarray:
    x = np.arange(n)
    return (x[:, None] + x[None, :]) % n


def _product_rows(factors: list[np.ndarray]) -> np.ndarray:
    """Direct product with lexicographic pairing of component indices."""
    sizes = [f.shape[0] for f in factors]
    n = math.prod(sizes)
    rows = np.empty((n, n), dtype=np.int64)
    coords = list(itertools.product(*(range(s) for s in sizes)))
    index = {c: i for i, c in enumerate(coords)}
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            rows[i, j] = index[tuple(int(f[a[k], b[k]]) for k, f in enumerate(factors))]
    return rows


def _perm_group_rows(perms: list[tuple[int, ...]]) -> np.ndarray:
    """Cayley table of a set of permutations under (p.q)(t) = p(q(t)).

    Permutations are listed lexicographically, which puts the identity
    map first, so element 0 is the group identity.
    """
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    rows = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            rows[i, j] = index[tuple(p[v] for v in q)]
    return rows


def _s3_rows() -> np.ndarray:
    return _perm_group_rows(list(itertools.permutations(range(3))))


def _d4_rows() -> np.ndarray:
    # Symmetries of a square with vertices 0-3: closure of a quarter turn
    # and the reflection fixing vertex 0.
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    elems = {tuple(range(4))}
    frontier = [r, s]
    while frontier:
        p = frontier.pop()
        if p in elems:
            continue
        elems.add(p)
        for q in (r, s):
            frontier.append(tuple(p[v] for v in q))
            frontier.append(tuple(q[v] for v in p))
    return _perm_group_rows(sorted(elems))


def _q8_rows() -> np.ndarray:
    # Quaternion units ordered 1, -1, i, -i, j, -j, k, -k.
    mul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    units = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    index = {u: i for i, u in enumerate(units)}
    rows = np.empty((8, 8), dtype=np.int64)
    for i, (sa, a) in enumerate(units):
        for j, (sb, b) in enumerate(units):
            sc, c = mul[(a, b)]
            rows[i, j] = index[(sa * sb * sc, c)]
    return rows


def catalog(name: str) -> FiniteGroup:
    """A catalog group by compact name.

    Accepted: zn:K (cyclic, K >= 1), z2xz2, z2xz4, z2cube, s3, d4, q8,
    and file:PATH for a magma text file that must pass the group axioms.
    """
    if name.startswith("zn:"):
        try:
            k = int(name[3:])
        except ValueError:
            raise ValueError(f"bad cyclic order in {name!r}") from None
        if k < 1:
            raise ValueError(f"cyclic order must be >= 1, got {k}")
        rows = _cyclic_rows(k)
    elif name == "z2xz2":
        rows = _product_rows([_cyclic_rows(2), _cyclic_rows(2)])
    elif name == "z2xz4":
        rows = _product_rows([_cyclic_rows(2), _cyclic_rows(4)])
    elif name == "z2cube":
        rows = _product_rows([_cyclic_rows(2)] * 3)
    elif name == "s3":
        rows = _s3_rows()
    elif name == "d4":
        rows = _d4_rows()
    elif name == "q8":
        rows = _q8_rows()
    elif name.startswith("file:"):
        path = Path(name[5:])
        table = parse_table_text(path.read_text())
        g = group_structure(table)
        if g is None:
            raise ValueError(f"table in {path} is not a group")
        return g
    else:
        raise ValueError(f"unknown group name {name!r}")
    g = group_structure(CayleyTable(rows))
    assert g is not None
    return g


def ward_from_group(g: FiniteGroup) -> CayleyTable:
    """The table of x.y^-1; always satisfies e1."""
    return CayleyTable(g.table.rows[:, g.inverse])


def derived_group(w: CayleyTable) -> FiniteGroup:
    """Recover the group x.y = x o (e o y) from a Ward table.

    e is the constant diagonal; the recovered group has identity e and
    inverse(x) = e o x, and the classical laws e o (e o x) = x and
    e o (x o y) = y o x hold (asserted).
    """
    if not is_ward(w):
        raise ValueError(
            "input is not a Ward quasigroup: (x o z) o (y o z) = x o y fails"
        )
    rows = w.rows
    e = int(rows[0, 0])
    g = group_structure(CayleyTable(rows[:, rows[e]]))
    assert g is not None and g.identity == e
    full = np.arange(w.order)
    assert np.array_equal(rows[e, rows[e]], full)
    assert np.array_equal(rows[e][rows], rows.T)
    assert np.array_equal(g.inverse, rows[e])
    return g


def extend_e4(t: CayleyTable) -> Biquasigroup:
    """Extend a medial unipotent quasigroup by x*y = (x o y) o q.

    The result satisfies e4; when q is a left neutral element the star
    table is the transpose of the circ table.
    """
    if not is_latin_square(t):
        raise ValueError("table is not a Latin square")
    q = unipotency(t)
    if q is None:
        raise ValueError("table is not unipotent: the diagonal is not constant")
    if not compile_full(builtin("medial_circ"), t.order)(t.rows, t.rows):
        raise ValueError("table is not medial")
    star = CayleyTable(t.rows[t.rows, q])
    biq = Biquasigroup(t, star)
    assert compile_full(builtin("e4"), t.order)(biq.circ.rows, biq.star.rows)
    return biq


def t26_construct(g: FiniteGroup, alpha: Permutation) -> Biquasigroup:
    """x o y = (alpha x)^-1 . (alpha y) and x * y = x . y^-1.

    alpha may be any bijection of the carrier, not just an automorphism.
    """
    if alpha.order != g.order:
        raise ValueError(f"alpha acts on {alpha.order} elements, group has {g.order}")
    a = alpha.as_array()
    rows = g.table.rows
    circ = CayleyTable(rows[np.ix_(g.inverse[a], a)])
    star = CayleyTable(rows[:, g.inverse])
    biq = Biquasigroup(circ, star)
    assert compile_full(builtin("e6"), g.order)(circ.rows, star.rows)
    return biq


def inverse_op_biq(g: FiniteGroup) -> Biquasigroup:
    """star = the group itself, circ = x + (-y); g must be commutative."""
    if not g.commutative:
        raise ValueError("group must be commutative")
    return Biquasigroup(CayleyTable(g.table.rows[:, g.inverse]), g.table)


def e5_example(g: FiniteGroup) -> Biquasigroup:
    """circ = the group itself, star(x, y) = y^-1 . x; satisfies e5."""
    rows = g.table.rows
    star = CayleyTable(rows[g.inverse].T)
    biq = Biquasigroup(g.table, star)
    assert compile_full(builtin("e5"), g.order)(rows, star.rows)
    return biq


def e7_example(g: FiniteGroup) -> Biquasigroup:
    """circ(x, y) = y - x, star = the group itself; g must be commutative."""
    if not g.commutative:
        raise ValueError("group must be commutative")
    rows = g.table.rows
    circ = CayleyTable(rows[:, g.inverse].T)
    biq = Biquasigroup(circ, g.table)
    assert compile_full(builtin("e7"), g.order)(circ.rows, rows)
    return biq


def _affine_zn(n: int, cx: int, cy: int, c: int) -> CayleyTable:
    x = np.arange(n)
    return CayleyTable((cx * x[:, None] + cy * x[None, :] + c) % n)


def _checked_family(n: int, circ: CayleyTable, star: CayleyTable, target: str) -> Biquasigroup:
    biq = Biquasigroup(circ, star)
    assert compile_full(builtin(target), n)(circ.rows, star.rows)
    return biq


def family_c71(n: int, a: int) -> Biquasigroup:
    """Idempotent medial pair over Z_n: a*x + (1-a)*y and a^2*x + (1-a^2)*y.

    Requires a^2 - a = 1 (mod n); violations report the actual residue.
    """
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    r = (a * a - a) % n
    if r != 1 % n:
        raise ValueError(f"[a^2 - a]_{n} = {r}, expected 1")
    return _checked_family(
        n, _affine_zn(n, a, 1 - a, 0), _affine_zn(n, a * a, 1 - a * a, 0), "e7"
    )


def family_c72(a: int, variant: int) -> Biquasigroup:
    """Order n = a^2 - a - 1 idempotent medial pair, one per variant."""
    if a < 3:
        raise ValueError(f"a must be >= 3, got {a}")
    if variant not in (1, 2):
        raise ValueError(f"variant must be 1 or 2, got {variant}")
    n = a * a - a - 1
    if variant == 1:
        circ, star = _affine_zn(n, a, 1 - a, 0), _affine_zn(n, a + 1, -a, 0)
    else:
        circ, star = _affine_zn(n, 1 - a, a, 0), _affine_zn(n, 2 - a, a - 1, 0)
    return _checked_family(n, circ, star, "e7")


def family_e8_zn(n: int, a: int, c: int, d: int) -> Biquasigroup:
    """a*x - y + c and x - y + d over Z_n; requires gcd(a, n) = 1."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    g = math.gcd(a % n, n)
    if g != 1:
        raise ValueError(f"gcd(a, n) = gcd({a}, {n}) = {g}, expected 1")
    return _checked_family(
        n, _affine_zn(n, a, -1, c), _affine_zn(n, 1, -1, d), "e8"
    )


def family_e9_zn(n: int, a: int, b: int) -> Biquasigroup:
    """x - a^2*y - a*b and x + a*y + b over Z_n; requires gcd(a, n) = 1."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    g = math.gcd(a % n, n)
    if g != 1:
        raise ValueError(f"gcd(a, n) = gcd({a}, {n}) = {g}, expected 1")
    return _checked_family(
        n, _affine_zn(n, 1, -a * a, -a * b), _affine_zn(n, 1, a, b), "e9"
    )


def e9_example(a: int) -> Biquasigroup:
    """x + y and x + a*y over Z_n with n = a^2 + 1; requires a >= 2."""
    if a < 2:
        raise ValueError(f"a must be >= 2, got {a} (order a^2 + 1 must exceed 4)")
    n = a * a + 1
    return _checked_family(n, _affine_zn(n, 1, 1, 0), _affine_zn(n, 1, a, 0), "e9")
