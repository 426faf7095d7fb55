"""Plumbing trees, linear chain diagrams, Seifert data and Brieskorn spheres.

A plumbing graph is a weighted tree; its Gram matrix has the weights on the
diagonal and a 1 for every edge.  Star-shaped trees present Seifert fibered
spaces S(e; (a1,b1), ..., (an,bn)) whose legs are the minus-convention
continued-fraction expansions of the ai/bi.  A Brieskorn sphere
Sigma(p, q, r) carries the unique Seifert data with
e - (p'/p + q'/q + r'/r) = -1/pqr, and its canonical negative-definite
plumbing is obtained by re-presenting every branch fraction below -1 and
expanding with all entries <= -2.

Chain diagrams model linear surgery presentations with one marked link of
multiplicity k; ``twist_reduce`` applies, at the Gram-matrix level, the
reduction that trades a 0-framed component next to the marked link for a
k^2-twist of the component across it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .arith import NotCoprimeError, NotExpandableError, cf_eval, hj_expand, hj_expand_negative, mod_inverse
from .lattice import (
    GramLattice,
    definiteness_sign,
    determinant,
    signature,
    wu_class,
)


class NotStarShapedError(ValueError):
    """The plumbing graph has more than one vertex of degree > 2."""


class PatternNotFoundError(ValueError):
    """The chain does not contain the 0-framed twist-reduction pattern."""


# ---------------------------------------------------------------------------
# Plumbing graphs


@dataclass(frozen=True)
class PlumbingGraph:
    """A weighted tree on vertices 0..n-1.

    Invariants enforced: connected, |E| = |V| - 1, no self loops.
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        n = len(weights)
        if n == 0:
            raise ValueError("plumbing graph needs at least one vertex")
        edges = []
        seen = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError("self-plumbings are not supported (tree graphs only)")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("edge endpoint out of range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError("duplicate edge")
            seen.add(e)
            edges.append(e)
        if len(edges) != n - 1:
            raise ValueError("a tree on n vertices has exactly n-1 edges")
        # connectivity
        adj = {i: [] for i in range(n)}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        stack, visited = [0], {0}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in visited:
                    visited.add(w)
                    stack.append(w)
        if len(visited) != n:
            raise ValueError("plumbing graph must be connected")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def rank(self) -> int:
        return len(self.weights)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": i, "weight": w} for i, w in enumerate(self.weights)],
            "edges": [[a, b] for a, b in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlumbingGraph":
        ids = [v["id"] for v in data["vertices"]]
        order = {vid: k for k, vid in enumerate(sorted(ids))}
        if len(order) != len(ids):
            raise ValueError("duplicate vertex ids")
        weights = [0] * len(ids)
        for v in data["vertices"]:
            weights[order[v["id"]]] = int(v["weight"])
        edges = [(order[a], order[b]) for a, b in data["edges"]]
        return cls(tuple(weights), tuple(edges))


def graph_to_gram(G: PlumbingGraph) -> GramLattice:
    """The intersection form: weights on the diagonal, 1 per edge."""
    n = G.rank
    rows = [[0] * n for _ in range(n)]
    for i, w in enumerate(G.weights):
        rows[i][i] = w
    for a, b in G.edges:
        rows[a][b] = rows[b][a] = 1
    return GramLattice(tuple(tuple(r) for r in rows))


def star_graph(center_weight: int, legs: Sequence[Sequence[int]]) -> PlumbingGraph:
    """Star-shaped tree: legs are weight sequences read from the center out."""
    weights = [center_weight]
    edges = []
    for leg in legs:
        prev = 0
        for w in leg:
            weights.append(w)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph(tuple(weights), tuple(edges))


def _tree_det(G: PlumbingGraph) -> int:
    """Exact determinant of a tree Gram by leaf contraction, O(n) fractions."""
    n = G.rank
    if n == 1:
        return G.weights[0]
    adj = {i: set() for i in range(n)}
    for a, b in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    # Multiply out det = prod of pivots from eliminating leaves inward.
    # Eliminating leaf v with current value x_v updates its neighbor u by
    # x_u -= 1/x_v; a zero pivot forces a fallback to Bareiss.
    vals = [Fraction(w) for w in G.weights]
    order = [v for v in range(n) if len(adj[v]) == 1]
    det = Fraction(1)
    removed = [False] * n
    queue = list(order)
    while queue:
        v = queue.pop()
        if removed[v] or not adj[v]:
            continue
        (u,) = adj[v]
        if vals[v] == 0:
            # zero pivot: fall back to exact Bareiss on the full matrix
            return determinant(graph_to_gram(G))
        det *= vals[v]
        vals[u] -= 1 / vals[v]
        removed[v] = True
        adj[u].discard(v)
        adj[v] = set()
        if len(adj[u]) == 1:
            queue.append(u)
    root = next(v for v in range(n) if not removed[v])
    det *= vals[root]
    assert det.denominator == 1
    return int(det)


def tree_determinant(G: PlumbingGraph) -> int:
    """Determinant of the plumbing Gram matrix (fast tree contraction)."""
    return _tree_det(G)


# ---------------------------------------------------------------------------
# Chain diagrams


@dataclass(frozen=True)
class ChainDiagram:
    """Linear diagram: framings a1..aN, all consecutive links 1 except at
    most one marked position carrying an arbitrary multiplicity k."""

    framings: tuple[int, ...]
    marked: Optional[tuple[int, int]] = None  # (link index, k)

    def __post_init__(self):
        framings = tuple(int(a) for a in self.framings)
        if not framings:
            raise ValueError("chain diagram needs at least one component")
        if self.marked is not None:
            idx, k = int(self.marked[0]), int(self.marked[1])
            if not (0 <= idx < len(framings) - 1):
                raise ValueError("marked link index out of range")
            object.__setattr__(self, "marked", (idx, k))
        object.__setattr__(self, "framings", framings)

    @property
    def rank(self) -> int:
        return len(self.framings)

    def link_weights(self) -> tuple[int, ...]:
        n = len(self.framings)
        w = [1] * (n - 1)
        if self.marked is not None:
            w[self.marked[0]] = self.marked[1]
        return tuple(w)

    def to_json(self) -> dict:
        ml = None
        if self.marked is not None:
            ml = {"index": self.marked[0], "k": self.marked[1]}
        return {"framings": list(self.framings), "marked_link": ml}

    @classmethod
    def from_json(cls, data: dict) -> "ChainDiagram":
        ml = data.get("marked_link")
        marked = (ml["index"], ml["k"]) if ml else None
        return cls(tuple(data["framings"]), marked)


def chain_to_gram(C: ChainDiagram) -> GramLattice:
    """Tridiagonal Gram matrix: framings on the diagonal, link weights off it."""
    n = C.rank
    links = C.link_weights()
    rows = [[0] * n for _ in range(n)]
    for i, a in enumerate(C.framings):
        rows[i][i] = a
    for i, k in enumerate(links):
        rows[i][i + 1] = rows[i + 1][i] = k
    return GramLattice(tuple(tuple(r) for r in rows))


def twist_reduce(C: ChainDiagram) -> ChainDiagram:
    """Collapse the pattern ``... q . n . 0 .(k) p ...`` to ``... q .(k) (p + n k^2) ...``.

    The 0-framed component must sit next to the marked link (on either side);
    the rank drops by 2.  Raises :class:`PatternNotFoundError` when the chain
    has no marked link or the 0-framed neighbour pattern is absent.
    """
    if C.marked is None:
        raise PatternNotFoundError("chain has no marked link")
    j, k = C.marked
    f = C.framings
    if f[j] == 0 and j >= 2:
        # ... q(j-2) n(j-1) 0(j) .(k) p(j+1) ...
        n_par = f[j - 1]
        p = f[j + 1]
        new = f[: j - 1] + (p + n_par * k * k,) + f[j + 2 :]
        return ChainDiagram(new, (j - 2, k))
    if f[j + 1] == 0 and j + 3 <= len(f) - 1:
        # ... p(j) .(k) 0(j+1) n(j+2) q(j+3) ...
        n_par = f[j + 2]
        p = f[j]
        new = f[:j] + (p + n_par * k * k,) + f[j + 3 :]
        return ChainDiagram(new, (j, k))
    raise PatternNotFoundError("no 0-framed component adjacent to the marked link")


# ---------------------------------------------------------------------------
# Seifert data


@dataclass(frozen=True)
class SeifertData:
    """Central weight e plus branch pairs (a, b) with a >= 1, gcd(a, b) = 1.

    A branch contributes -b/a to the euler number e - sum(b_i / a_i).
    """

    e: int
    branches: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        e = int(self.e)
        branches = tuple((int(a), int(b)) for a, b in self.branches)
        for a, b in branches:
            if a < 1:
                raise ValueError("branch multiplicity a must be >= 1")
            if gcd(a, abs(b)) != 1:
                raise ValueError(f"branch pair {(a, b)} is not coprime")
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "branches", branches)

    def euler_number(self) -> Fraction:
        return Fraction(self.e) - sum(Fraction(b, a) for a, b in self.branches)

    def normalized(self) -> "SeifertData":
        """Canonical window 0 < b < a, integer parts absorbed into e,
        multiplicity-1 branches absorbed entirely; branches sorted."""
        e = self.e
        branches = []
        for a, b in self.branches:
            if a == 1:
                e -= b
                continue
            t = b // a  # floor
            b2 = b - a * t
            if b2 == 0:
                raise AssertionError("coprime pair cannot normalize to b = 0")
            e -= t
            branches.append((a, b2))
        return SeifertData(e, tuple(sorted(branches)))

    def negated(self) -> "SeifertData":
        """Data of the orientation reversal: all of (e, b_i) change sign."""
        return SeifertData(-self.e, tuple((a, -b) for a, b in self.branches))

    def to_json(self) -> dict:
        return {"e": self.e, "branches": [[a, b] for a, b in self.branches]}

    @classmethod
    def from_json(cls, data: dict) -> "SeifertData":
        return cls(int(data["e"]), tuple((a, b) for a, b in data["branches"]))


def seifert_to_plumbing(S: SeifertData) -> PlumbingGraph:
    """Star-shaped plumbing: central weight e, legs expanding each a/b.

    Branch values a/b > 1 expand with all entries >= 2 and values < -1 with
    all entries <= -2; multiplicity-1 branches are absorbed into the center
    (a data-level blow-down).  Values in [-1, 1] admit no expansion.
    """
    e = S.e
    legs = []
    for a, b in S.branches:
        if a == 1:
            e -= b
            continue
        value = Fraction(a, b)
        if value > 1:
            legs.append(hj_expand(value))
        elif value < -1:
            legs.append(hj_expand_negative(value))
        else:
            raise NotExpandableError(f"branch fraction {a}/{b} not expandable in either sign mode")
    return star_graph(e, legs)


def plumbing_to_seifert(G: PlumbingGraph) -> SeifertData:
    """Read Seifert data off a star-shaped graph.

    The center is the unique vertex of degree > 2 (for paths: the
    lowest-index endpoint; a single vertex gives S(m) with no branches).
    Each leg, read from the center outward, contributes the pair
    (|num|, sign(num) * den) of its continued-fraction value.
    """
    n = G.rank
    degrees = [G.degree(v) for v in range(n)]
    big = [v for v in range(n) if degrees[v] > 2]
    if len(big) > 1:
        raise NotStarShapedError("more than one vertex of degree > 2")
    if big:
        center = big[0]
    elif n == 1:
        return SeifertData(G.weights[0], ())
    else:
        center = min(v for v in range(n) if degrees[v] == 1)
    branches = []
    for first in G.neighbors(center):
        leg = [first]
        prev, cur = center, first
        while True:
            nxt = [w for w in G.neighbors(cur) if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise NotStarShapedError("branch vertex of degree > 2 off-center")
            prev, cur = cur, nxt[0]
            leg.append(cur)
        value = cf_eval([G.weights[v] for v in leg])
        a = abs(value.numerator)
        b = value.denominator if value.numerator > 0 else -value.denominator
        branches.append((a, b))
    return SeifertData(G.weights[center], tuple(branches))


# ---------------------------------------------------------------------------
# Brieskorn spheres


@dataclass(frozen=True)
class BrieskornTriple:
    """Pairwise coprime multiplicities (p, q, r), each >= 2."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = int(self.p), int(self.q), int(self.r)
        for x in (p, q, r):
            if x < 2:
                raise ValueError("Brieskorn multiplicities must be >= 2")
        if gcd(p, q) != 1 or gcd(p, r) != 1 or gcd(q, r) != 1:
            raise NotCoprimeError(f"{(p, q, r)} is not pairwise coprime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def product(self) -> int:
        return self.p * self.q * self.r


def brieskorn_seifert(T: BrieskornTriple, reversed_orientation: bool = False) -> SeifertData:
    """The Seifert data of Sigma(p,q,r): euler number -1/pqr, or its
    orientation reversal (+1/pqr), normalized to the window 0 < b < a.

    The standard branch residues are p' = (qr)^{-1} mod p and cyclically,
    with e = (p'qr + q'pr + r'pq - 1) / pqr an exact integer.
    """
    p, q, r = T.as_tuple()
    pp = mod_inverse(q * r, p)
    qp = mod_inverse(p * r, q)
    rp = mod_inverse(p * q, r)
    num = pp * q * r + qp * p * r + rp * p * q - 1
    assert num % (p * q * r) == 0
    e = num // (p * q * r)
    data = SeifertData(e, ((p, pp), (q, qp), (r, rp)))
    assert data.euler_number() == Fraction(-1, p * q * r)
    if reversed_orientation:
        data = data.negated().normalized()
        assert data.euler_number() == Fraction(1, p * q * r)
        return data
    return data.normalized()


def negdef_plumbing(T: BrieskornTriple, post_check: bool = True) -> PlumbingGraph:
    """The canonical negative-definite plumbing tree bounding Sigma(p,q,r).

    Construction: take the standard data, re-present every branch with
    -a < b < 0 (center absorbs the shifts), and expand the now < -1 branch
    fractions with all entries <= -2.  Correctness is enforced post hoc
    (negative definiteness and |det| = 1) rather than trusted.
    """
    data = brieskorn_seifert(T)
    shifted = SeifertData(data.e - len(data.branches), tuple((a, b - a) for a, b in data.branches))
    G = seifert_to_plumbing(shifted)
    if post_check:
        det = _tree_det(G)
        if abs(det) != 1:
            raise AssertionError(f"plumbing of {T.as_tuple()} has |det| = {abs(det)}, expected 1")
        if not _star_negdef(shifted):
            raise AssertionError(f"plumbing of {T.as_tuple()} is not negative definite")
    return G


def _star_negdef(S: SeifertData) -> bool:
    """Negative definiteness of the star plumbing of S, via leg continuants
    and the Schur complement of the center (exact, linear time)."""
    head = Fraction(S.e)
    for a, b in S.branches:
        if a == 1:
            head -= b
            continue
        value = Fraction(a, b)
        if value >= -1:
            return False
        word = hj_expand_negative(value)
        # leg determinant ratio det(leg minus first)/det(leg) equals the
        # continued-fraction tail 1/value of the leg read inward
        head -= 1 / value
        if any(c > -2 for c in word):
            return False
    return head < 0


# ---------------------------------------------------------------------------
# mu-bar, Rohlin, spin filling bound


def mubar(G: PlumbingGraph) -> Fraction:
    """Neumann-Siebenmann invariant (sigma(Gram) - w^T Gram w) / 8.

    Requires the tree to have odd determinant so the Wu class is unique;
    the value is an integer for homology spheres.
    """
    gram = graph_to_gram(G)
    w = wu_class(gram)  # raises SingularMod2Error on even determinant
    sign = definiteness_sign(gram)
    if sign is not None:
        sigma = sign * gram.rank
    else:
        sigma = signature(gram).sigma
    wsq = gram.norm(w)
    return Fraction(sigma - wsq, 8)


def rohlin(G: PlumbingGraph) -> int:
    """Rohlin invariant: mu-bar reduced mod 2 (mu-bar must be an integer)."""
    m = mubar(G)
    if m.denominator != 1:
        raise ValueError("Rohlin invariant needs an integral mu-bar (homology sphere)")
    return int(m) % 2


class SpinBound(NamedTuple):
    max_b2: int
    b2_mod16: int


def ue_spin_bound(G: PlumbingGraph) -> SpinBound:
    """Cap on b2 of a negative-definite spin filling of the boundary.

    For a Seifert homology sphere the bound is b2 <= -8 mu-bar with
    b2 == -8 mu-bar mod 16.  When mu-bar >= 0 the cap is reported as 0: no
    spin negative-definite filling with positive b2 is certified.
    """
    gram = graph_to_gram(G)
    plumbing_to_seifert(G)  # raises NotStarShapedError if not a star
    if abs(_tree_det(G)) != 1:
        raise ValueError("spin bound applies to homology-sphere plumbings (|det| = 1)")
    m = mubar(G)
    assert m.denominator == 1
    ub = -8 * int(m)
    return SpinBound(max(0, ub), ub % 16)
