"""Finite metric spaces with exact rational distances.

Every classification downstream (smoothness, gates, light-likeness) branches
on exact equalities such as d(x,y) + d(y,z) == d(x,z), so distances are
fractions.Fraction values throughout and floats are rejected outright.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

INFINITE = math.inf  # marker for "no four-cut exists"; never a rational


class MetricError(ValueError):
    """A distance matrix violates one of the metric axioms."""


class NegativeDistance(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    pass


class ZeroOffDiagonal(MetricError):
    pass


class AsymmetryError(MetricError):
    pass


class TriangleViolation(MetricError):
    def __init__(self, labels, i, j, k):
        self.witness = (labels[i], labels[j], labels[k])
        super().__init__(
            "triangle inequality fails: d(%s,%s) > d(%s,%s) + d(%s,%s)"
            % (labels[i], labels[k], labels[i], labels[j], labels[j], labels[k])
        )


class NonpositiveWeight(MetricError):
    pass


class DisconnectedGraph(MetricError):
    pass


class EmptyK(MetricError):
    pass


class NotIsometricEmbedding(MetricError):
    pass


class LabelError(KeyError):
    """A point label does not resolve in the given space."""


def _as_fraction(value):
    if isinstance(value, float):
        raise TypeError("floats are not allowed as distances: %r" % (value,))
    return Fraction(value)


@dataclass(frozen=True)
class MetricSpace:
    """Finite point set with an exact rational distance matrix."""

    labels: tuple
    dist: tuple

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise MetricError("empty metric spaces are rejected")
        if len(set(self.labels)) != n:
            raise MetricError("duplicate labels: %r" % (self.labels,))
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise MetricError("distance matrix shape does not match label count")
        d = self.dist
        for i in range(n):
            for j in range(n):
                if not isinstance(d[i][j], Fraction):
                    raise MetricError("non-rational distance at (%d,%d)" % (i, j))
        for i in range(n):
            if d[i][i] != 0:
                raise NonzeroDiagonal("d(%s,%s) = %s != 0" % (self.labels[i], self.labels[i], d[i][i]))
            for j in range(i + 1, n):
                if d[i][j] < 0 or d[j][i] < 0:
                    raise NegativeDistance("d(%s,%s) < 0" % (self.labels[i], self.labels[j]))
                if d[i][j] == 0:
                    raise ZeroOffDiagonal("distinct points %s, %s at distance 0" % (self.labels[i], self.labels[j]))
                if d[i][j] != d[j][i]:
                    raise AsymmetryError("d(%s,%s) != d(%s,%s)" % (self.labels[i], self.labels[j], self.labels[j], self.labels[i]))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k]:
                        raise TriangleViolation(self.labels, i, j, k)

    @property
    def n(self):
        return len(self.labels)

    def d(self, i, j):
        return self.dist[i][j]

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(label) from None

    def min_positive_distance(self):
        """Smallest off-diagonal distance, or None for a one-point space."""
        best = None
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if best is None or self.dist[i][j] < best:
                    best = self.dist[i][j]
        return best

    def max_distance(self):
        return max(max(row) for row in self.dist)

    def __repr__(self):
        return "MetricSpace(%d points: %s)" % (self.n, ", ".join(self.labels))


def from_distance_matrix(labels, entries):
    """Build a MetricSpace from label list and square matrix of rationals."""
    labels = tuple(labels)
    dist = tuple(tuple(_as_fraction(v) for v in row) for row in entries)
    return MetricSpace(labels, dist)


def from_weighted_graph(vertices, edges):
    """Shortest-path metric of a connected, positively weighted graph.

    edges is an iterable of (u, v, weight) with vertex labels; parallel
    edges keep the lightest weight.
    """
    labels = tuple(vertices)
    n = len(labels)
    if n == 0:
        raise MetricError("empty metric spaces are rejected")
    if len(set(labels)) != n:
        raise MetricError("duplicate vertex labels")
    idx = {v: i for i, v in enumerate(labels)}
    big = None  # None encodes "not yet reachable"
    d = [[Fraction(0) if i == j else big for j in range(n)] for i in range(n)]
    for u, v, w in edges:
        if u not in idx or v not in idx:
            raise MetricError("edge endpoint %r is not a listed vertex" % (u if u not in idx else v,))
        w = _as_fraction(w)
        if w <= 0:
            raise NonpositiveWeight("edge (%s,%s) has weight %s" % (u, v, w))
        if u == v:
            raise MetricError("self-loop at %s" % (u,))
        i, j = idx[u], idx[v]
        if d[i][j] is None or w < d[i][j]:
            d[i][j] = w
            d[j][i] = w
    for k in range(n):
        for i in range(n):
            if d[i][k] is None:
                continue
            for j in range(n):
                if d[k][j] is None:
                    continue
                via = d[i][k] + d[k][j]
                if d[i][j] is None or via < d[i][j]:
                    d[i][j] = via
                    d[j][i] = via
    for i in range(n):
        for j in range(n):
            if d[i][j] is None:
                raise DisconnectedGraph("no path between %s and %s" % (labels[i], labels[j]))
    return MetricSpace(labels, tuple(tuple(row) for row in d))


def restriction(space, indices, labels=None):
    """Metric subspace on the given point indices."""
    indices = tuple(indices)
    if labels is None:
        labels = tuple(space.labels[i] for i in indices)
    dist = tuple(tuple(space.dist[i][j] for j in indices) for i in indices)
    return MetricSpace(tuple(labels), dist)


def product(x, y):
    """l1-style product: d((a,b),(a',b')) = d_X(a,a') + d_Y(b,b')."""
    labels = tuple(
        "(%s,%s)" % (lx, ly) for lx in x.labels for ly in y.labels
    )
    nx, ny = x.n, y.n
    dist = []
    for i in range(nx):
        for j in range(ny):
            row = []
            for k in range(nx):
                for m in range(ny):
                    row.append(x.dist[i][k] + y.dist[j][m])
            dist.append(tuple(row))
    return MetricSpace(labels, tuple(dist)), _product_index(nx, ny)


def _product_index(nx, ny):
    """Map (i, j) factor indices to the product point index."""
    return lambda i, j: i * ny + j


def seq_length(space, seq):
    """Total length d(x_0, ..., x_k) of a point-index sequence."""
    return sum(
        (space.dist[seq[i - 1]][seq[i]] for i in range(1, len(seq))),
        Fraction(0),
    )


def is_sequence(space, seq):
    """True iff seq is nonempty, in range, with consecutive points distinct."""
    if len(seq) == 0:
        return False
    if any(not (0 <= p < space.n) for p in seq):
        return False
    return all(seq[i - 1] != seq[i] for i in range(1, len(seq)))


def is_smooth(space, seq, k):
    """True iff dropping seq[k] preserves the length locally.

    Endpoints are never smooth.
    """
    if k <= 0 or k >= len(seq) - 1:
        return False
    d = space.dist
    return d[seq[k - 1]][seq[k]] + d[seq[k]][seq[k + 1]] == d[seq[k - 1]][seq[k + 1]]


def four_cuts(space):
    """All length-minimal obstruction quadruples and the threshold m_X.

    A quadruple (x0,x1,x2,x3) qualifies when both interior points are
    smooth, dropping either one preserves the total length, and the direct
    distance d(x0,x3) is strictly smaller.  Returns (quadruples, m_X) where
    m_X is the minimal length of a qualifying quadruple, INFINITE if none.
    """
    d = space.dist
    n = space.n
    found = []
    m_x = INFINITE
    for x0 in range(n):
        for x1 in range(n):
            if x1 == x0:
                continue
            for x2 in range(n):
                if x2 == x1:
                    continue
                if d[x0][x1] + d[x1][x2] != d[x0][x2]:
                    continue
                for x3 in range(n):
                    if x3 == x2:
                        continue
                    if d[x1][x2] + d[x2][x3] != d[x1][x3]:
                        continue
                    total = d[x0][x1] + d[x1][x2] + d[x2][x3]
                    if d[x0][x3] < total:
                        found.append((x0, x1, x2, x3))
                        if total < m_x:
                            m_x = total
    return found, m_x


def is_pawful(space):
    """Diameter <= 2 and every (x,y,z) with d(x,y)=d(y,z)=2, d(x,z)=1 has a
    point at distance 1 from all three."""
    d = space.dist
    n = space.n
    two = Fraction(2)
    one = Fraction(1)
    if space.max_distance() > two:
        return False
    for x in range(n):
        for y in range(n):
            if d[x][y] != two:
                continue
            for z in range(n):
                if d[y][z] != two or d[x][z] != one:
                    continue
                if not any(
                    d[w][x] == one and d[w][y] == one and d[w][z] == one
                    for w in range(n)
                ):
                    return False
    return True


@dataclass(frozen=True)
class IntervalPoset:
    """Metric interval between a and b, ordered by betweenness.

    kind is one of "closed", "open", "half-open-left", "half-open-right";
    half-open-left drops a, half-open-right drops b.
    """

    space: MetricSpace
    a: int
    b: int
    kind: str
    carrier: tuple

    def le(self, x, y):
        d = self.space.dist
        return d[self.a][x] + d[x][y] + d[y][self.b] == d[self.a][self.b]

    def validate(self):
        # partial-order axioms, checked by brute force
        for x in self.carrier:
            assert self.le(x, x)
            for y in self.carrier:
                if self.le(x, y) and self.le(y, x):
                    assert x == y
                for z in self.carrier:
                    if self.le(x, y) and self.le(y, z):
                        assert self.le(x, z)
        return True


INTERVAL_KINDS = ("closed", "open", "half-open-left", "half-open-right")


def interval(space, a, b, kind="closed"):
    if kind not in INTERVAL_KINDS:
        raise ValueError("unknown interval kind %r" % (kind,))
    d = space.dist
    members = [x for x in range(space.n) if d[a][x] + d[x][b] == d[a][b]]
    if kind in ("open", "half-open-left"):
        members = [x for x in members if x != a]
    if kind in ("open", "half-open-right"):
        members = [x for x in members if x != b]
    return IntervalPoset(space, a, b, kind, tuple(members))


@dataclass(frozen=True)
class GluingSpec:
    """Two spaces glued along a common subspace K.

    The glued point list keeps all of g first, then the h points outside
    the image of K; points of K are identified with their g copies.
    Interior-h points are classified by whether they see all of K through
    a single gate in K (biased) or not (neutral).
    """

    g: MetricSpace
    h: MetricSpace
    k_in_g: tuple
    k_in_h: tuple
    space: MetricSpace
    g_to_x: tuple
    h_to_x: tuple
    interior_g: frozenset
    kset: frozenset
    biased: frozenset
    neutral: frozenset
    gates: dict  # biased glued index -> glued index of its gate in K

    @property
    def interior_h(self):
        return self.biased | self.neutral

    def side_g(self):
        """Glued indices lying in g (interior plus K)."""
        return self.interior_g | self.kset

    def side_h(self):
        """Glued indices lying in h (interior plus K)."""
        return self.kset | self.biased | self.neutral


def glue(g, h, k_in_g, k_in_h):
    """Glue g and h along K, metrized by shortest crossings through K."""
    k_in_g = tuple(k_in_g)
    k_in_h = tuple(k_in_h)
    if len(k_in_g) == 0:
        raise EmptyK("K must be nonempty")
    if len(k_in_g) != len(k_in_h):
        raise MetricError("K index lists differ in length")
    if len(set(k_in_g)) != len(k_in_g) or len(set(k_in_h)) != len(k_in_h):
        raise MetricError("K index lists must be injective")
    m = len(k_in_g)
    for s in range(m):
        for t in range(m):
            if g.dist[k_in_g[s]][k_in_g[t]] != h.dist[k_in_h[s]][k_in_h[t]]:
                raise NotIsometricEmbedding(
                    "K distances differ at positions (%d,%d)" % (s, t)
                )
    k_h_set = set(k_in_h)
    interior_h_idx = [j for j in range(h.n) if j not in k_h_set]
    labels = list(g.labels) + [h.labels[j] for j in interior_h_idx]
    if len(set(labels)) != len(labels):
        raise MetricError("label collision between g and interior of h")
    n = len(labels)
    g_to_x = tuple(range(g.n))
    h_to_x = [None] * h.n
    for t in range(m):
        h_to_x[k_in_h[t]] = k_in_g[t]
    for rank, j in enumerate(interior_h_idx):
        h_to_x[j] = g.n + rank
    h_to_x = tuple(h_to_x)

    dist = [[None] * n for _ in range(n)]
    for i in range(g.n):
        for j in range(g.n):
            dist[i][j] = g.dist[i][j]
    for a_h in range(h.n):
        for b_h in range(h.n):
            i, j = h_to_x[a_h], h_to_x[b_h]
            dist[i][j] = h.dist[a_h][b_h]
    for i in range(g.n):
        for rank, j_h in enumerate(interior_h_idx):
            j = g.n + rank
            best = min(
                g.dist[i][k_in_g[t]] + h.dist[k_in_h[t]][j_h] for t in range(m)
            )
            dist[i][j] = best
            dist[j][i] = best
    space = MetricSpace(tuple(labels), tuple(tuple(row) for row in dist))

    kset = frozenset(k_in_g)
    interior_g = frozenset(range(g.n)) - kset
    biased = set()
    neutral = set()
    gates = {}
    for j_h in interior_h_idx:
        candidates = [
            t
            for t in range(m)
            if all(
                h.dist[k_in_h[s]][j_h]
                == h.dist[k_in_h[s]][k_in_h[t]] + h.dist[k_in_h[t]][j_h]
                for s in range(m)
            )
        ]
        glued = h_to_x[j_h]
        if len(candidates) == 0:
            neutral.add(glued)
        else:
            # two distinct gates would force distance zero between them
            assert len(candidates) == 1, "non-unique gate"
            biased.add(glued)
            gates[glued] = k_in_g[candidates[0]]
    return GluingSpec(
        g=g,
        h=h,
        k_in_g=k_in_g,
        k_in_h=k_in_h,
        space=space,
        g_to_x=g_to_x,
        h_to_x=h_to_x,
        interior_g=interior_g,
        kset=kset,
        biased=frozenset(biased),
        neutral=frozenset(neutral),
        gates=gates,
    )


def random_metric_space(n_points, seed, den_max=6):
    """Seeded random metric with distances in [1, 2].

    Values in [1, 2] satisfy the triangle inequality automatically, and the
    lower bound 1 keeps sequence enumeration budgets small.
    """
    rng = random.Random(seed)
    labels = tuple("x%d" % i for i in range(n_points))
    d = [[Fraction(0)] * n_points for _ in range(n_points)]
    for i in range(n_points):
        for j in range(i + 1, n_points):
            den = rng.randint(1, den_max)
            num = rng.randint(den, 2 * den)
            d[i][j] = d[j][i] = Fraction(num, den)
    return MetricSpace(labels, tuple(tuple(row) for row in d))
