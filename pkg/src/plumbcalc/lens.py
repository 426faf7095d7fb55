"""Heegaard Floer correction terms of lens spaces and plumbed spheres.

Recursion.  The engine is the classical exact descent

    R(p, q, j) = ((2j + 1 - p - q)^2 - p q) / (4 p q) - R(q, p mod q, j mod q)

for 0 <= j < p + q with R(1, 0, 0) = 0, whose labels j restricted to
0 <= j < p enumerate the p spin^c structures (R is p-periodic on the
overhang j in [p, p+q), which the tests verify).  In these labels
R(p, 1, j) = ((2j - p)^2 - p) / (4p).

Labeling convention (pinned, recorded).  The public ``lens_d(p, q, i)``
uses the surgery-style labeling in which the familiar affine
correspondence  i |-> k i + c,  c = (k+1+p)(k-1)/2 mod p  identifies the
spin^c structures of a p-surgery with those of the lens space L(p, q) it
produces (k the dual class of the surgery knot).  The two labelings are
related by the bijection

    lens_d(p, q, i) = R(p, q, (q (i + 1) - 1) mod p),

which is the identity for q = 1.  The map is pinned by two independent
anchors and is exercised by the test suite: (a) the multiset of all p
values agrees with the plumbing-based oracle below for every p <= 40;
(b) the published closed-form values for the surgery families
(e.g. d(L(23, 2)) = 81/46 at label 1) are reproduced exactly, and the
cross-method identity d_surgery == d_from_plumbing holds on the Brieskorn
families.  With this labeling the surgery maximum formula

    d(S) = max_i [ d(p, q, k i + c) - d(p, 1, i) ]

holds with k and c used literally.

Oracle.  ``lens_d_oracle`` computes the same multiset of correction terms by
a method sharing no code path with the recursion: it builds a
negative-definite linear plumbing for the lens space (choosing the shortest
of the four available continued-fraction routes) and maximizes
(c^2 + rank)/4 over each coset of characteristic covectors by exact
closest-vector enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Optional

from .arith import NotCoprimeError, hj_expand, mod_inverse
from .lattice import (
    NotNegativeDefiniteError,
    NotUnimodularError,
    _closest_point,
    definiteness_sign,
    max_char_square,
)
from .plumbing import ChainDiagram, PlumbingGraph, chain_to_gram, graph_to_gram, plumbing_to_seifert, tree_determinant


class RankGuardExceededError(ValueError):
    """The plumbing rank exceeds the configured enumeration guard."""


# ---------------------------------------------------------------------------
# Lens spaces and the recursion


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) = p/q surgery on the unknot; p = 1 (with q = 0) is S^3."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p < 1:
            raise ValueError("p must be >= 1")
        q %= p
        if p == 1:
            q = 0
        elif q == 0 or gcd(p, q) != 1:
            raise NotCoprimeError(f"L({p},{q}) needs 0 < q < p coprime to p")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)


@lru_cache(maxsize=None)
def _d_rec(p: int, q: int, j: int) -> Fraction:
    """The exact recursion on its own labels 0 <= j < p + q."""
    if p == 1:
        return Fraction(0)
    num = (2 * j + 1 - p - q) ** 2 - p * q
    return Fraction(num, 4 * p * q) - _d_rec(q, p % q, j % q)


def descent_chain(p: int, q: int) -> list[tuple[int, int]]:
    """The (p, q) pairs visited by the recursion: pure Euclidean descent."""
    out = [(p, q)]
    while p != 1:
        p, q = q, p % q
        out.append((p, q))
    return out


def lens_d(p: int, q: int, i: int) -> Fraction:
    """Correction term of L(p, q) at spin^c label ``i`` (surgery labeling)."""
    L = LensSpace(p, q)
    if not (0 <= i < L.p):
        raise ValueError(f"label {i} out of range for p = {L.p}")
    if L.p == 1:
        return Fraction(0)
    j = (L.q * (i + 1) - 1) % L.p
    return _d_rec(L.p, L.q, j)


def lens_d_all(p: int, q: int) -> dict[int, Fraction]:
    """All p correction terms of L(p, q), keyed by spin^c label."""
    L = LensSpace(p, q)
    if L.p == 1:
        return {0: Fraction(0)}
    return {i: lens_d(L.p, L.q, i) for i in range(L.p)}


# ---------------------------------------------------------------------------
# Independent oracle via negative-definite linear plumbings


def _chain_route(p: int, q: int) -> tuple[tuple[int, ...], bool]:
    """Shortest of the four chain presentations of +-L(p, q).

    Returns (all >= 2 expansion word, negate) where the chain with negated
    word bounds -L(p, x): x = p - q (or its inverse mod p) gives L(p, q)
    directly, x = q (or its inverse) gives -L(p, q), requiring negation of
    the resulting correction terms.
    """
    candidates = []
    for x, negate in ((p - q, False), (mod_inverse(p - q, p), False), (q, True), (mod_inverse(q, p), True)):
        word = hj_expand(Fraction(p, x))
        candidates.append((len(word), word, negate))
    candidates.sort(key=lambda t: (t[0], t[2]))
    _, word, negate = candidates[0]
    return word, negate


def _solve_fraction(rows: list[list[int]], rhs: list[Fraction]) -> list[Fraction]:
    """Exact solve of a nonsingular integer system by rational elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [rhs[i]] for i, row in enumerate(rows)]
    for k in range(n):
        piv = next(r for r in range(k, n) if m[r][k] != 0)
        m[k], m[piv] = m[piv], m[k]
        d = m[k][k]
        for r in range(n):
            if r != k and m[r][k] != 0:
                f = m[r][k] / d
                for c in range(k, n + 1):
                    m[r][c] -= f * m[k][c]
    return [m[i][n] / m[i][i] for i in range(n)]


def lens_d_oracle(p: int, q: int) -> dict[int, Fraction]:
    """Correction terms of L(p, q) from a negative-definite chain plumbing.

    For each of the p cosets of characteristic covectors the maximum of
    c^2 is found by exact closest-vector enumeration, and
    d = (max c^2 + rank)/4 on the chain boundary.  Labels are the oracle's
    own canonical coset indices; only the multiset is comparable with
    ``lens_d_all`` (the two methods share no conventions, and no code).
    """
    L = LensSpace(p, q)
    p, q = L.p, L.q
    if p == 1:
        return {0: Fraction(0)}
    word, negate = _chain_route(p, q)
    weights = tuple(-c for c in word)
    chain = ChainDiagram(weights)
    G = chain_to_gram(chain)
    n = G.rank
    A = G.negate().rows  # positive definite
    rows = [list(r) for r in G.rows]
    det = abs(_chain_determinant(weights))
    assert det == p
    # canonical coset functional: phi(u) = <a, u> mod p with a = det * G^{-1} e0
    a_vec = _solve_fraction(rows, [Fraction(det if i == 0 else 0) for i in range(n)])
    a_int = []
    for x in a_vec:
        assert x.denominator == 1
        a_int.append(int(x))
    # an index where the functional is invertible mod p
    m_idx = next(i for i, x in enumerate(a_int) if gcd(x % p, p) == 1)
    inv_am = mod_inverse(a_int[m_idx], p)
    diag = list(G.diagonal())
    out: dict[int, Fraction] = {}
    for s in range(p):
        u = [0] * n
        u[m_idx] = (s * inv_am) % p
        t0 = [diag[i] + 2 * u[i] for i in range(n)]
        kappa = _solve_fraction(rows, [Fraction(t) for t in t0])
        center = [-x / 2 for x in kappa]
        val, _ = _closest_point(A, center)
        min_p = 4 * val  # minimum of c^T(-G)c over the coset
        d_val = (-min_p + n) / 4
        out[s] = -d_val if negate else d_val
    return out


def _chain_determinant(weights: tuple[int, ...]) -> int:
    """Determinant of a plain chain Gram via the tridiagonal recurrence."""
    d_prev, d_cur = 1, weights[0]
    for w in weights[1:]:
        d_prev, d_cur = d_cur, w * d_cur - d_prev
    return d_cur


# ---------------------------------------------------------------------------
# The surgery maximum formula


@dataclass(frozen=True)
class SurgeryDescriptor:
    """Lens surgery data: slope p, lens parameter q, dual class k, and the
    affine constant c = (k+1+p)(k-1)/2 mod p (recomputed when omitted)."""

    p: int
    q: int
    k: int
    c: Optional[int] = None

    def __post_init__(self):
        p, q, k = int(self.p), int(self.q), int(self.k)
        if gcd(k, p) != 1:
            raise NotCoprimeError("dual class k must be coprime to p")
        LensSpace(p, q)  # validates the lens parameters
        c_formula = (((k + 1 + p) * (k - 1)) // 2) % p
        c = self.c if self.c is not None else c_formula
        c = int(c) % p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "c", c)

    @property
    def c_from_formula(self) -> int:
        return (((self.k + 1 + self.p) * (self.k - 1)) // 2) % self.p


class SurgeryResult(NamedTuple):
    value: Fraction
    witness: int
    witnesses: tuple[int, ...]


def d_surgery(desc: SurgeryDescriptor) -> SurgeryResult:
    """max over 0 <= i < p of d(p, q, k i + c) - d(p, 1, i), with argmaxes.

    The L-space hypotheses behind the formula are the caller's
    responsibility; this evaluates the full maximum (never just a witness).
    """
    p, q, k, c = desc.p, desc.q, desc.k, desc.c
    best: Optional[Fraction] = None
    winners: list[int] = []
    for i in range(p):
        v = lens_d(p, q, (k * i + c) % p) - lens_d(p, 1, i)
        if best is None or v > best:
            best = v
            winners = [i]
        elif v == best:
            winners.append(i)
    assert best is not None
    return SurgeryResult(best, winners[0], tuple(winners))


# ---------------------------------------------------------------------------
# d-invariants of negative-definite plumbed homology spheres


class DFromPlumbing(NamedTuple):
    value: Fraction
    vector: tuple[int, ...]


def d_from_plumbing(G: PlumbingGraph, rank_guard: int = 40) -> DFromPlumbing:
    """d = (max (c,c) + rank)/4 over characteristic vectors of the plumbing.

    Requires a star-shaped negative-definite unimodular plumbing (a Seifert
    homology sphere) and enforces a rank guard on the exact enumeration.
    """
    if G.rank > rank_guard:
        raise RankGuardExceededError(f"rank {G.rank} exceeds guard {rank_guard}")
    plumbing_to_seifert(G)  # star-shape check
    gram = graph_to_gram(G)
    if definiteness_sign(gram) != -1:
        raise NotNegativeDefiniteError("plumbing is not negative definite")
    if abs(tree_determinant(G)) != 1:
        raise NotUnimodularError("plumbing is not unimodular")
    cm = max_char_square(gram)
    return DFromPlumbing(Fraction(cm.square + gram.rank, 4), cm.vector)
