"""Overlattice (glue vector) constructions and the named-lattice registry.

An overlattice of L is generated by L together with rational vectors v/d
whose pairings with L (and with each other) are integral; even overlattices
of an even lattice correspond to isotropic subgroups of its discriminant
form.  All constructions record the base frame so that vectors written in
base coordinates can be tested for membership and divisibility afterwards.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import exact
from .lattice import (
    FiniteQuadraticForm,
    Lattice,
    direct_sum,
    discriminant_group,
    divisibility,
    divisibility_ambient,
    hyperbolic,
    lattice,
    make_embedding,
    rank_one,
    root_lattice,
)


@dataclass(frozen=True)
class GlueSpec:
    """A rational glue vector ``vector / denominator`` in base coordinates."""

    vector: tuple[int, ...]
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator < 2:
            raise ValueError("glue denominator must be at least 2")

    def as_fractions(self) -> list[Fraction]:
        return [Fraction(x, self.denominator) for x in self.vector]


class GlueError(ValueError):
    pass


def adjoin(
    base: Lattice, glue: Sequence[GlueSpec], require_even: bool = True
) -> Lattice:
    """Enlarge ``base`` by the given glue vectors.

    Every glue vector must pair integrally with the base and with the other
    glue vectors; with ``require_even`` each glue vector must also have even
    self-intersection.  The result carries an embedding into ``base`` whose
    determinant is det(base) divided by the square of the index.
    """
    n = base.rank
    vecs = [g.as_fractions() for g in glue]
    for g, w in zip(glue, vecs):
        if len(w) != n:
            raise GlueError("glue vector has wrong length")
        pair = [base.pairing(w, e) for e in exact.identity(n)]
        if any(p.denominator != 1 for p in pair):
            raise GlueError(f"glue vector {g.vector}/{g.denominator} does not pair integrally with the base")
    for w1, w2 in itertools.combinations_with_replacement(vecs, 2):
        p = base.pairing(w1, w2)
        if p.denominator != 1:
            raise GlueError("glue vectors do not pair integrally with each other")
    if require_even:
        for g, w in zip(glue, vecs):
            norm = base.norm(w)
            if norm.denominator != 1 or int(norm) % 2:
                raise GlueError(f"glue vector {g.vector}/{g.denominator} has odd norm {norm}")

    denoms = [g.denominator for g in glue]
    scale = 1
    for d in denoms:
        scale = exact.lcm(scale, d) if scale else d
    scale = scale or 1
    rows = [[scale if i == j else 0 for j in range(n)] for i in range(n)]
    for g in glue:
        rows.append([x * (scale // g.denominator) for x in g.vector])
    basis_scaled = exact.hermite_row_basis(rows)
    basis = [[Fraction(x, scale) for x in row] for row in basis_scaled]
    gram_f = exact.matmul(
        exact.matmul(basis, [list(r) for r in base.gram]), exact.transpose(basis)
    )
    gram = []
    for row in gram_f:
        if any(x.denominator != 1 for x in row):
            raise GlueError("glue vectors do not close up to an integral lattice")
        gram.append([int(x) for x in row])
    result = Lattice(
        tuple(tuple(r) for r in gram), None, make_embedding(base, basis)
    )
    if require_even and not result.is_even():
        raise GlueError("resulting overlattice is not even")
    return result


def adjoin_ambient_vectors(
    base: Lattice, vectors: Sequence[Sequence[Fraction]], require_even: bool = True
) -> Lattice:
    """adjoin() for rational vectors given directly in base coordinates."""
    specs = []
    for w in vectors:
        fr = [Fraction(x) for x in w]
        den = 1
        for x in fr:
            den = exact.lcm(den, x.denominator) if den else x.denominator
        if den == 1:
            continue
        specs.append(GlueSpec(tuple(int(x * den) for x in fr), den))
    return adjoin(base, specs, require_even)


def glue_index(overlattice: Lattice) -> int:
    """Index of the base frame inside the adjoined lattice."""
    base = overlattice.ambient.ambient
    return exact.isqrt_exact(base.det() // overlattice.det())


# ---------------------------------------------------------------------------
# even overlattices via isotropic subgroups


def _isotropic_subgroups(
    form: FiniteQuadraticForm, max_order: int
) -> list[tuple[tuple[int, ...], ...]]:
    """All isotropic subgroups of order <= max_order, each as a sorted tuple
    of element coordinate tuples.  Grown one generator at a time."""
    zero = tuple(0 for _ in form.invariant_factors)
    iso_elements = [e for e in form.elements() if e != zero and form.q(e) == 0]

    def add(el, x):
        return tuple((a + b) % d for a, b, d in zip(el, x, form.invariant_factors))

    def closure(elements: frozenset, new) -> frozenset | None:
        group = set(elements)
        frontier = [new]
        while frontier:
            g = frontier.pop()
            if g in group:
                continue
            group.add(g)
            if len(group) > max_order:
                return None
            for h in list(group):
                s = add(g, h)
                if s not in group:
                    frontier.append(s)
        return frozenset(group)

    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        grp = frontier.pop()
        for e in iso_elements:
            if e in grp:
                continue
            if any(form.b(e, h) != 0 for h in grp):
                continue
            bigger = closure(grp, e)
            if bigger is None or bigger in found:
                continue
            if all(form.q(x) == 0 for x in bigger):
                found.add(bigger)
                frontier.append(bigger)
    return sorted(tuple(sorted(g)) for g in found)


def even_overlattices(l: Lattice, max_index: int | None = None) -> list[Lattice]:
    """One even overlattice per isotropic subgroup of the discriminant form
    of order at most ``max_index`` (unbounded when None); the input lattice
    itself corresponds to the trivial subgroup.  Results are returned in a
    deterministic order and include duplicates up to isometry whenever
    distinct subgroups yield isomorphic overlattices."""
    if not l.is_even():
        raise GlueError("even overlattices require an even lattice")
    form = discriminant_group(l)
    if form.order > 2**14:
        raise GlueError("discriminant group too large to enumerate")
    # the square of the index divides the group order
    bound = max_index if max_index is not None else isqrt(form.order)
    out = []
    for grp in _isotropic_subgroups(form, bound):
        vectors = [
            [
                sum(
                    (Fraction(c) * form.generators[i][j] for i, c in enumerate(el)),
                    Fraction(0),
                )
                for j in range(l.rank)
            ]
            for el in grp
            if any(el)
        ]
        if not vectors:
            out.append(l)
            continue
        bigger = adjoin_ambient_vectors(l, vectors, require_even=True)
        assert glue_index(bigger) == len(grp)
        out.append(bigger)
    return out


def find_isotropic_glue(
    l: Lattice,
    target: Sequence[int],
    divisor: int,
    search_basis: Sequence[Sequence[int]] = (),
    bound: int = 0,
) -> list[int] | None:
    """Search target + sum(c_i * search_basis[i]) over |c_i| <= bound for a
    vector of norm 0 whose pairings with l are all divisible by ``divisor``.
    Vectors are in l's base frame when l was built by adjoin, else in l's own
    coordinates.  Returns the vector found, or None."""
    frame = l.ambient.ambient if l.ambient is not None else l

    def ok(v: list[int]) -> bool:
        if frame.norm(v) != 0:
            return False
        if l.ambient is not None:
            return divisibility_ambient(l, v) == divisor
        return divisibility(l, v) == divisor

    target = [int(x) for x in target]
    if not search_basis:
        return target if ok(target) else None
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(search_basis)):
        v = list(target)
        for c, s in zip(coeffs, search_basis):
            if c:
                v = [x + c * y for x, y in zip(v, s)]
        if ok(v):
            return v
    return None


# ---------------------------------------------------------------------------
# the named lattices
#
# Frames with sixteen A1-indexed generators use the nonzero elements of
# (Z/2Z)^4, listed in binary order 0001, 0010, ..., 1111.


def _nonzero_elements() -> list[tuple[int, int, int, int]]:
    els = [
        (a, b, c, d)
        for a in range(2)
        for b in range(2)
        for c in range(2)
        for d in range(2)
    ]
    return [e for e in els if any(e)]


NONZERO16 = _nonzero_elements()
INDEX_OF = {e: i for i, e in enumerate(NONZERO16)}


def _index2_subgroup_complements() -> list[list[int]]:
    """Supports (as index lists into NONZERO16) of the complements of the 15
    index-2 subgroups of (Z/2Z)^4."""
    out = []
    for phi in NONZERO16:  # nonzero characters
        support = [
            i
            for i, e in enumerate(NONZERO16)
            if sum(x * y for x, y in zip(phi, e)) % 2 == 1
        ]
        out.append(support)
    return out


def m16_lattice() -> Lattice:
    """Rank-15 lattice of fifteen (-2)-classes indexed by the nonzero
    elements of (Z/2Z)^4, glued by the half-sums over the complement of each
    index-2 subgroup; discriminant -128."""
    base = direct_sum(*[root_lattice("A", 1)] * 15)
    glue = []
    for support in _index2_subgroup_complements():
        vec = [0] * 15
        for i in support:
            vec[i] = 1
        glue.append(GlueSpec(tuple(vec), 2))
    return adjoin(base, glue).rename("M16")


def kummer_lattice() -> Lattice:
    """Rank-16 lattice of sixteen (-2)-classes indexed by (Z/2Z)^4, glued by
    half-sums over all cosets of index-2 subgroups; discriminant 64."""
    base = direct_sum(*[root_lattice("A", 1)] * 16)
    elements = [
        (a, b, c, d)
        for a in range(2)
        for b in range(2)
        for c in range(2)
        for d in range(2)
    ]
    glue = []
    for phi in NONZERO16:
        for value in (0, 1):
            vec = [
                1 if sum(x * y for x, y in zip(phi, e)) % 2 == value else 0
                for e in elements
            ]
            glue.append(GlueSpec(tuple(vec), 2))
    return adjoin(base, glue).rename("KummerK")


def _subgroup_order4(gens: Sequence[tuple[int, int, int, int]]) -> list[int]:
    """Indices into NONZERO16 of the nonzero elements of the subgroup
    generated by two elements of (Z/2Z)^4."""
    g1, g2 = gens
    els = {g1, g2, tuple((x + y) % 2 for x, y in zip(g1, g2))}
    return sorted(INDEX_OF[e] for e in els)


# subgroup of elements whose first two components vanish
N1_SUBGROUP = _subgroup_order4([(0, 0, 0, 1), (0, 0, 1, 0)])


def ld_lattice(d: int, variant: str) -> Lattice:
    """Rank-16 lattice <2d> + M16 enlarged by one half-integral glue class.

    variant "subgroup": glue (l + sum of the three classes in a fixed
    order-4 subgroup)/2; variant "all": glue (l + sum of all fifteen
    classes)/2.  Both require d = 3 mod 4 for the result to be even.
    """
    if d <= 0 or d % 4 != 3:
        raise GlueError("d must be a positive integer congruent to 3 mod 4")
    if variant not in ("subgroup", "all"):
        raise GlueError("variant must be 'subgroup' or 'all'")
    base = direct_sum(rank_one(2 * d), *[root_lattice("A", 1)] * 15)
    glue = []
    for support in _index2_subgroup_complements():
        vec = [0] * 16
        for i in support:
            vec[i + 1] = 1
        glue.append(GlueSpec(tuple(vec), 2))
    vec = [1] + [0] * 15
    indices = N1_SUBGROUP if variant == "subgroup" else list(range(15))
    for i in indices:
        vec[i + 1] = 1
    glue.append(GlueSpec(tuple(vec), 2))
    return adjoin(base, glue).rename(f"L_d({d},{variant})")


def n1_lattice() -> Lattice:
    return ld_lattice(3, "subgroup").rename("N1")


def n2_lattice() -> Lattice:
    return ld_lattice(3, "all").rename("N2")


def lambda_lattice(n: int) -> Lattice:
    if n < 1:
        raise GlueError("n must be positive")
    return direct_sum(
        rank_one(-2), rank_one(-2 * n), hyperbolic(), hyperbolic()
    ).rename(f"Lambda({n})")


def l0_lattice() -> Lattice:
    return direct_sum(
        hyperbolic(), root_lattice("D", 4), *[root_lattice("A", 1)] * 9
    ).rename("L0")


def _l2_frame() -> Lattice:
    """Rank-16 frame for L2: fiber F, zero section O, the four fiber
    components of the 5-component star fiber not meeting O (central node
    first), the nine nonidentity components of the 2-component fibers, and
    the free section s.

    Basis order: F, O, c, d1, d2, d3, a1..a9, s.
    """
    n = 16
    g = exact.zeros(n, n)
    F, O = 0, 1
    c, d1, d2, d3 = 2, 3, 4, 5
    a = list(range(6, 15))
    s = 15
    g[F][O] = g[O][F] = 1
    g[O][O] = -2
    for i in (c, d1, d2, d3):
        g[i][i] = -2
    for i in (d1, d2, d3):
        g[c][i] = g[i][c] = 1
    for i in a:
        g[i][i] = -2
    g[s][s] = -2
    g[s][F] = g[F][s] = 1
    g[s][O] = g[O][s] = 1
    for i in a:
        g[s][i] = g[i][s] = 1
    return lattice(g, "L2-frame")


def _l2_torsion_class(frame: Lattice, component: int, zero_fibers: range) -> list[Fraction]:
    """Solve for a 2-torsion section class: norm -2 section meeting the
    fiber once, missing O and s, meeting reduced component ``component`` of
    the star fiber and the identity component of the fibers in
    ``zero_fibers`` (so pairing 0 there, 1 at the other six)."""
    n = frame.rank
    target = [Fraction(0)] * n
    target[0] = Fraction(1)  # fiber degree
    target[2 + component] = Fraction(1)
    for i in range(9):
        if i not in zero_fibers:
            target[6 + i] = Fraction(1)
    x = exact.solve([list(r) for r in frame.gram], target)
    if x is None:
        raise GlueError("torsion-class incidence system is infeasible")
    if frame.norm(x) != -2:
        raise GlueError("torsion-class solution does not have norm -2")
    return x


def l2_data() -> tuple[Lattice, list[Fraction], list[Fraction]]:
    """The section frame of the L2 construction together with the two solved
    2-torsion section classes (rational vectors in frame coordinates)."""
    frame = _l2_frame()
    t1 = _l2_torsion_class(frame, 1, range(0, 3))
    t2 = _l2_torsion_class(frame, 2, range(3, 6))
    return frame, t1, t2


def l2_lattice() -> Lattice:
    """The rank-16 hyperbolic-signature lattice generated by the frame of a
    star fiber plus nine 2-component fibers, a zero section, a free section,
    and two 2-torsion section classes; determinant -192."""
    frame, t1, t2 = l2_data()
    return adjoin_ambient_vectors(frame, [t1, t2]).rename("L2")


def l_sat_lattice() -> Lattice:
    """First index-2 even overlattice of U + D8 + A5 + A1 in canonical
    order; determinant -12."""
    base = direct_sum(
        hyperbolic(), root_lattice("D", 8), root_lattice("A", 5), root_lattice("A", 1)
    )
    for m in even_overlattices(base, 2):
        if m.det() == base.det() // 4:
            return m.rename("L_sat")
    raise GlueError("no index-2 even overlattice found")


def v_lattice() -> Lattice:
    return direct_sum(
        hyperbolic(),
        hyperbolic(),
        hyperbolic(),
        root_lattice("E", 8),
        root_lattice("E", 8),
    ).rename("V")


def u_e8_e6_lattice() -> Lattice:
    return direct_sum(
        hyperbolic(), root_lattice("E", 8), root_lattice("E", 6)
    ).rename("U+E8+E6")


def np_lattice(p: int, n: int) -> Lattice:
    """Signature (2,2) lattice with norm form x^2 - n y^2 + p z^2 - np w^2;
    n must be a quadratic nonresidue mod the odd prime p."""
    from .quadform import _is_probable_prime, _legendre

    if p < 3 or not _is_probable_prime(p):
        raise GlueError("p must be an odd prime")
    if n % p == 0 or _legendre(n % p, p) != -1:
        raise GlueError("n must be a quadratic nonresidue mod p")
    return direct_sum(
        rank_one(1, allow_odd=True),
        rank_one(-n, allow_odd=True),
        rank_one(p, allow_odd=True),
        rank_one(-n * p, allow_odd=True),
    ).rename(f"Np({p},{n})")


def lp_lattice(p: int) -> Lattice:
    from .quadform import _is_probable_prime

    if not _is_probable_prime(p) or p % 24 != 17:
        raise GlueError("p must be a prime congruent to 17 mod 24")
    return direct_sum(
        rank_one(-2), rank_one(-6), hyperbolic(), rank_one(4 * p)
    ).rename(f"Lp({p})")


NAMED_BUILDERS = {
    "L0": l0_lattice,
    "L2": l2_lattice,
    "M16": m16_lattice,
    "N1": n1_lattice,
    "N2": n2_lattice,
    "KummerK": kummer_lattice,
    "U_E8_E6": u_e8_e6_lattice,
    "L_sat": l_sat_lattice,
    "V": v_lattice,
}

_PARAM_RE = re.compile(r"^(\w+)\(([^)]*)\)$")


def named_lattice_names() -> list[str]:
    return sorted(NAMED_BUILDERS) + ["Lambda(n)", "Lp(p)", "Np(p,n)", "L_d(d,variant)"]


def build_named(name: str) -> Lattice:
    """Construct a named lattice; parameterized names look like Lambda(3),
    Lp(17), Np(5,2), L_d(7,subgroup)."""
    if name in NAMED_BUILDERS:
        return NAMED_BUILDERS[name]()
    m = _PARAM_RE.match(name.strip())
    if not m:
        raise GlueError(f"unknown lattice name {name!r}")
    head, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
    if head == "Lambda" and len(args) == 1:
        return lambda_lattice(int(args[0]))
    if head == "Lp" and len(args) == 1:
        return lp_lattice(int(args[0]))
    if head == "Np" and len(args) == 2:
        return np_lattice(int(args[0]), int(args[1]))
    if head == "L_d" and len(args) == 2:
        return ld_lattice(int(args[0]), args[1])
    raise GlueError(f"unknown lattice name {name!r}")
