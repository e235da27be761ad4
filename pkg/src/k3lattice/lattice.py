"""Integral lattices: constructors, duals, discriminant forms, complements.

A lattice is a free Z-module with an integer Gram matrix in a fixed basis.
Root lattices follow the negative-definite sign convention (diagonal -2,
adjacent simple roots pairing to +1).  Lattices are immutable; operations
return new values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from . import exact


def _to_gram(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _to_frac_rows(rows: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Embedding:
    """Reference to an ambient lattice: rows of ``basis`` are the coordinates
    of the embedded lattice's basis vectors in the ambient basis.  Entries may
    be rational (overlattices of the ambient frame)."""

    ambient: "Lattice"
    basis: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    name: str | None = None
    ambient: Embedding | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not exact.is_symmetric(self.gram):
            raise ValueError("Gram matrix must be symmetric")
        if self.ambient is not None:
            b = [list(row) for row in self.ambient.basis]
            g = [list(row) for row in self.ambient.ambient.gram]
            induced = exact.matmul(exact.matmul(b, g), exact.transpose(b))
            if any(
                Fraction(self.gram[i][j]) != induced[i][j]
                for i in range(self.rank)
                for j in range(self.rank)
            ):
                raise ValueError("ambient basis does not induce the stated Gram matrix")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return _det_cached(self.gram)

    def signature(self) -> tuple[int, int, int]:
        return _signature_cached(self.gram)

    def signature_pair(self) -> tuple[int, int]:
        p, z, n = self.signature()
        if z:
            raise ValueError("degenerate lattice has no signature pair")
        return p, n

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_definite(self) -> bool:
        p, z, n = self.signature()
        return z == 0 and (p == 0 or n == 0)

    def pairing(self, v: Sequence, w: Sequence) -> Fraction:
        """Bilinear form of two vectors given in this lattice's basis."""
        gv = exact.mat_vec(self.gram, w)
        return sum((Fraction(x) * y for x, y in zip(v, gv)), Fraction(0))

    def norm(self, v: Sequence) -> Fraction:
        return self.pairing(v, v)

    def rename(self, name: str) -> "Lattice":
        return Lattice(self.gram, name, self.ambient)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        label = self.name or "lattice"
        return f"<{label}: rank {self.rank}, det {self.det()}>"


@lru_cache(maxsize=None)
def _det_cached(gram: tuple[tuple[int, ...], ...]) -> int:
    return exact.det(gram)


@lru_cache(maxsize=None)
def _signature_cached(gram: tuple[tuple[int, ...], ...]) -> tuple[int, int, int]:
    return exact.signature(gram)


def lattice(
    gram: Sequence[Sequence[int]],
    name: str | None = None,
    ambient: Embedding | None = None,
) -> Lattice:
    return Lattice(_to_gram(gram), name, ambient)


def make_embedding(ambient: Lattice, basis_rows: Sequence[Sequence]) -> Embedding:
    return Embedding(ambient, _to_frac_rows(basis_rows))


# ---------------------------------------------------------------------------
# constructors


def root_lattice(kind: str, n: int) -> Lattice:
    """Negative-definite root lattice A_n, D_n or E_n in the simple-root basis.

    Node numbering: a chain 1..n, except that D_n attaches node n to node
    n-2 and E_n attaches node n to node n-3 (so E8 is the chain 1-7 with
    node 8 on node 5).
    """
    kind = kind.upper()
    if kind == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D" and n >= 3:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E" and n in (6, 7, 8):
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 4, n - 1)]
    else:
        raise ValueError(f"invalid root lattice {kind}{n}")
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return lattice(g, f"{kind}{n}")


def hyperbolic() -> Lattice:
    return lattice([[0, 1], [1, 0]], "U")


def rank_one(k: int, allow_odd: bool = False) -> Lattice:
    if k % 2 != 0 and not allow_odd:
        raise ValueError("odd norm requires allow_odd=True")
    return lattice([[k]], f"<{k}>")


def rescale(l: Lattice, n: int) -> Lattice:
    if n == 0:
        raise ValueError("rescale by zero")
    g = [[n * x for x in row] for row in l.gram]
    name = f"{l.name}({n})" if l.name else None
    return lattice(g, name)


def direct_sum(*lattices: Lattice) -> Lattice:
    if len(lattices) == 1 and isinstance(lattices[0], (list, tuple)):
        lattices = tuple(lattices[0])
    total = sum(l.rank for l in lattices)
    g = exact.zeros(total, total)
    off = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i][j]
        off += l.rank
    name = "+".join(l.name or "?" for l in lattices) if lattices else "0"
    return lattice(g, name)


# ---------------------------------------------------------------------------
# discriminant groups and forms


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Discriminant group L*/L with its torsion forms.

    ``generators[i]`` is a rational vector in L's basis generating a cyclic
    factor of order ``invariant_factors[i]``.  For even lattices ``q_values``
    holds q(g_i) in Q/2Z (representatives in [0,2)); ``b_matrix`` holds the
    bilinear values b(g_i,g_j) in Q/Z (representatives in [0,1)).  For odd
    lattices ``q_values`` is None.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...] | None
    b_matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, el: Sequence[int]) -> int:
        out = 1
        for c, d in zip(el, self.invariant_factors):
            out = exact.lcm(out, d // gcd(d, c)) if c else out
        return max(out, 1)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for i, ci in enumerate(x):
            if not ci:
                continue
            for j, cj in enumerate(y):
                if cj:
                    total += ci * cj * self.b_matrix[i][j]
        return total % 1

    def q(self, x: Sequence[int]) -> Fraction:
        if self.q_values is None:
            raise ValueError("quadratic values only defined for even lattices")
        total = Fraction(0)
        for i, ci in enumerate(x):
            if not ci:
                continue
            total += ci * ci * self.q_values[i]
            for j in range(i + 1, len(x)):
                if x[j]:
                    total += 2 * ci * x[j] * self.b_matrix[i][j]
        return total % 2

    def negate(self) -> "FiniteQuadraticForm":
        qv = (
            tuple((-q) % 2 for q in self.q_values)
            if self.q_values is not None
            else None
        )
        bm = tuple(tuple((-b) % 1 for b in row) for row in self.b_matrix)
        return FiniteQuadraticForm(self.invariant_factors, self.generators, qv, bm)

    def is_isotropic_subgroup(self, elements: Sequence[Sequence[int]]) -> bool:
        return all(self.q(e) == 0 for e in elements)


def discriminant_group(l: Lattice) -> FiniteQuadraticForm:
    """The finite group L*/L with its discriminant (quadratic) form."""
    if l.det() == 0:
        raise ValueError("degenerate Gram matrix has no discriminant group")
    n = l.rank
    d, u, v = exact.smith_normal_form([list(r) for r in l.gram])
    factors: list[int] = []
    gens: list[tuple[Fraction, ...]] = []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            factors.append(di)
            gens.append(tuple(Fraction(v[r][i], di) for r in range(n)))
    even = l.is_even()
    qv = tuple(l.norm(g) % 2 for g in gens) if even else None
    bm = tuple(tuple(l.pairing(g, h) % 1 for h in gens) for g in gens)
    return FiniteQuadraticForm(tuple(factors), tuple(gens), qv, bm)


# ---------------------------------------------------------------------------
# sublattices, complements, saturation


def _sub_rows(sub: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(map(int, row)) for row in sub]


def orthogonal_complement(ambient: Lattice, sub: Sequence[Sequence[int]]) -> Lattice:
    """Primitive orthogonal complement of the span of ``sub`` (rows are
    vectors in ambient coordinates), with its embedding recorded."""
    rows = _sub_rows(sub)
    if rows and exact.kernel_basis(exact.transpose(rows)):
        raise ValueError("sublattice basis is rank-deficient")
    pair = exact.matmul(rows, [list(r) for r in ambient.gram])
    kern = exact.kernel_basis(pair) if rows else exact.identity(ambient.rank)
    gram = exact.matmul(exact.matmul(kern, [list(r) for r in ambient.gram]), exact.transpose(kern))
    return Lattice(_to_gram(gram), None, make_embedding(ambient, kern))


def saturation(ambient: Lattice, sub: Sequence[Sequence[int]]) -> Lattice:
    """Minimal primitive sublattice of ``ambient`` containing the span of
    ``sub``; the double complement."""
    rows = _sub_rows(sub)
    comp = orthogonal_complement(ambient, rows)
    comp_rows = [[int(x) for x in row] for row in comp.ambient.basis]
    sat = orthogonal_complement(ambient, comp_rows)
    return sat


def saturation_index(ambient: Lattice, sub: Sequence[Sequence[int]]) -> int:
    """Index of the span of ``sub`` inside its saturation (valid also for
    degenerate spans, where the determinant ratio is useless)."""
    rows = _sub_rows(sub)
    sat = saturation(ambient, rows)
    sat_rows_t = exact.transpose([list(r) for r in sat.ambient.basis])
    coords = []
    for row in rows:
        x = exact.solve(sat_rows_t, row)
        if x is None or any(c.denominator != 1 for c in x):
            raise AssertionError("sublattice escapes its saturation")
        coords.append([int(c) for c in x])
    return abs(exact.det(coords))


def index_from_dets(det_sub: int, det_sup: int) -> int:
    if det_sup == 0 or det_sub % det_sup != 0:
        raise ValueError("determinants incompatible with finite index")
    return exact.isqrt_exact(det_sub // det_sup)


def index_in(sub: Lattice, sup: Lattice) -> int:
    """Index [sup : sub] computed from the determinant ratio."""
    if sub.rank != sup.rank:
        raise ValueError("index requires equal ranks")
    return index_from_dets(sub.det(), sup.det())


def is_even(l: Lattice) -> bool:
    return l.is_even()


def contains(l: Lattice, v: Sequence) -> bool:
    """Membership of a vector given in l's own basis coordinates."""
    return all(Fraction(x).denominator == 1 for x in v)


def divisibility(l: Lattice, v: Sequence[int]) -> int:
    """gcd of the pairings of v with all lattice vectors."""
    pairings = exact.mat_vec([list(r) for r in l.gram], list(v))
    fr = [Fraction(x) for x in pairings]
    if any(x.denominator != 1 for x in fr):
        raise ValueError("vector does not pair integrally with the lattice")
    return exact.gcd_vector([int(x) for x in fr])


# ---------------------------------------------------------------------------
# coordinates in glued/embedded lattices


def ambient_to_self(l: Lattice, w: Sequence) -> list[Fraction] | None:
    """Coordinates of an ambient-frame vector in l's basis, or None when the
    vector is outside the rational span."""
    if l.ambient is None:
        raise ValueError("lattice has no recorded ambient frame")
    basis_t = exact.transpose([list(row) for row in l.ambient.basis])
    return exact.solve(basis_t, [Fraction(x) for x in w])


def contains_ambient(l: Lattice, w: Sequence) -> bool:
    coords = ambient_to_self(l, w)
    return coords is not None and all(c.denominator == 1 for c in coords)


def divisibility_ambient(l: Lattice, w: Sequence) -> int:
    """gcd of pairings of an ambient-frame vector with all of l."""
    if l.ambient is None:
        raise ValueError("lattice has no recorded ambient frame")
    amb = l.ambient.ambient
    pairings = [amb.pairing(w, row) for row in l.ambient.basis]
    if any(p.denominator != 1 for p in pairings):
        raise ValueError("vector does not pair integrally with the lattice")
    return exact.gcd_vector([int(p) for p in pairings])


def self_to_ambient(l: Lattice, v: Sequence) -> list[Fraction]:
    if l.ambient is None:
        raise ValueError("lattice has no recorded ambient frame")
    basis = [list(row) for row in l.ambient.basis]
    return [
        sum((Fraction(c) * basis[i][j] for i, c in enumerate(v)), Fraction(0))
        for j in range(len(basis[0]))
    ]
