"""Frames of sequences and the per-frame homology prediction.

Dropping a smooth point of a sequence never changes which frame it has,
so full-length sequences split by frame; each frame predicts homology as
a convolution of double-suspended open-interval factors.  The weighted
Hasse-graph construction realizes the reduced homology of an arbitrary
finite complex inside a graph's sequence homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .causal import InvalidLength, SimplicialComplex, SimplicialPair
from .homology import homology, relative_chain_complex
from .metric import (
    MetricError,
    four_cuts,
    from_weighted_graph,
    interval,
    is_smooth,
    seq_length,
)


class FourCutObstruction(ValueError):
    pass


class EmptyComplex(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    """Sequence of singular points; consecutive points stay distinct."""

    points: tuple

    @property
    def degree(self):
        return len(self.points) - 1

    def length(self, space):
        return seq_length(space, self.points)

    def labels(self, space):
        return tuple(space.labels[p] for p in self.points)


def frame_of(space, seq):
    """Subsequence of singular points; endpoints always kept."""
    seq = tuple(seq)
    kept = tuple(
        x
        for k, x in enumerate(seq)
        if k == 0 or k == len(seq) - 1 or not is_smooth(space, seq, k)
    )
    return Frame(kept)


def _four_cut_guard(space, l):
    _, m_x = four_cuts(space)
    if l >= m_x:
        raise FourCutObstruction(
            "length %s reaches the obstruction threshold %s" % (l, m_x)
        )


def singular_sequences(space, a, b, l):
    """All frames from a to b of exact length l, refused at or past m_X."""
    l = Fraction(l)
    if l < 0:
        raise InvalidLength("negative length %s" % (l,))
    _four_cut_guard(space, l)
    if l == 0:
        return [Frame((a,))] if a == b else []
    d = space.dist
    n = space.n
    out = []
    seq = [a]

    def extend(rem):
        x = seq[-1]
        for y in range(n):
            if y == x:
                continue
            step = d[x][y]
            if step > rem or d[y][b] > rem - step:
                continue
            if len(seq) >= 2:
                w = seq[-2]
                if d[w][x] + d[x][y] == d[w][y]:
                    continue  # x smooth here, not a frame point
            seq.append(y)
            if y == b and step == rem:
                out.append(Frame(tuple(seq)))
            extend(rem - step)
            seq.pop()

    extend(l)
    return out


def _open_interval_complex(space, x, y):
    poset = interval(space, x, y, "open")
    members = poset.carrier
    if not members:
        return SimplicialComplex.empty()
    greater = {
        u: [v for v in members if v != u and poset.le(u, v)] for u in members
    }
    chains = []
    chain = []

    def extend(u):
        chain.append(u)
        chains.append(tuple(sorted(chain)))
        for v in greater[u]:
            extend(v)
        chain.pop()

    for u in members:
        extend(u)
    return SimplicialComplex.of(chains)


def _interval_factor(space, x, y):
    """Reduced Betti of the open-interval order complex, raised two degrees."""
    cpx = _open_interval_complex(space, x, y)
    pair = SimplicialPair(cpx, SimplicialComplex.void())
    summary = homology(relative_chain_complex(pair, augmented=True))
    return {k + 2: r for k, r in summary.betti_map().items()}, summary


def framed_betti_prediction(space, a, b, l):
    """Predicted Betti numbers by summing convolved factors over frames."""
    l = Fraction(l)
    if l < 0:
        raise InvalidLength("negative length %s" % (l,))
    _four_cut_guard(space, l)
    prediction = {}
    for frame in singular_sequences(space, a, b, l):
        acc = {0: 1}
        for i in range(1, len(frame.points)):
            factor, _ = _interval_factor(
                space, frame.points[i - 1], frame.points[i]
            )
            nxt = {}
            for d1, r1 in acc.items():
                for d2, r2 in factor.items():
                    nxt[d1 + d2] = nxt.get(d1 + d2, 0) + r1 * r2
            acc = nxt
        for k, r in acc.items():
            if r:
                prediction[k] = prediction.get(k, 0) + r
    return dict(sorted(prediction.items()))


def thin_frames(space, l):
    """Frames, over all ordered pairs, whose steps have empty open intervals."""
    l = Fraction(l)
    if l < 0:
        raise InvalidLength("negative length %s" % (l,))
    d = space.dist
    n = space.n
    thin_step = {}
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            thin_step[x, y] = not interval(space, x, y, "open").carrier
    out = []
    seq = []

    def extend(rem):
        if rem == 0:
            out.append(Frame(tuple(seq)))
        x = seq[-1]
        for y in range(n):
            if y == x or d[x][y] > rem or not thin_step[x, y]:
                continue
            if len(seq) >= 2:
                w = seq[-2]
                if d[w][x] + d[x][y] == d[w][y]:
                    continue
            seq.append(y)
            extend(rem - d[x][y])
            seq.pop()

    for a in range(n):
        seq = [a]
        extend(l)
    return out


@dataclass(frozen=True)
class HasseGraph:
    """Weighted Hasse diagram of the extended face poset of a complex."""

    space: object
    zero: str
    one: str
    l: Fraction
    edges: tuple  # (label, label, weight)


def _simplex_name(simplex):
    return "|".join(simplex)


def hasse_graph(facets):
    """Weighted graph whose 0-to-1 sequences realize the input complex.

    Every cover relation gets weight 1 except the jump from a maximal
    simplex to the top element, which is weighted to level all maximal
    simplices at the same height; endpoints are "0hat" and "1hat" at
    distance (top dimension) + 2.
    """
    cleaned = []
    for facet in facets:
        pts = tuple(sorted(str(v) for v in facet))
        if len(set(pts)) != len(pts):
            raise MetricError("facet repeats a vertex: %r" % (facet,))
        if pts:
            cleaned.append(pts)
    if not cleaned:
        raise EmptyComplex("complex has no vertices")
    for pts in cleaned:
        for v in pts:
            if "|" in v or v in ("0hat", "1hat"):
                raise MetricError("reserved vertex name: %r" % (v,))
    faces = set()
    for pts in cleaned:
        for mask in range(1, 1 << len(pts)):
            faces.add(tuple(p for i, p in enumerate(pts) if mask >> i & 1))
    maximal = {s for s in faces if not any(s != t and set(s) < set(t) for t in faces)}
    top_dim = max(len(s) for s in faces) - 1
    edges = []
    for s in sorted(faces):
        if len(s) == 1:
            edges.append(("0hat", _simplex_name(s), Fraction(1)))
        for t in sorted(faces):
            if len(t) == len(s) + 1 and set(s) < set(t):
                edges.append((_simplex_name(s), _simplex_name(t), Fraction(1)))
        if s in maximal:
            edges.append(
                (_simplex_name(s), "1hat", Fraction(top_dim + 2 - len(s)))
            )
    vertices = ["0hat"] + [_simplex_name(s) for s in sorted(faces)] + ["1hat"]
    space = from_weighted_graph(vertices, edges)
    return HasseGraph(
        space=space,
        zero="0hat",
        one="1hat",
        l=Fraction(top_dim + 2),
        edges=tuple(edges),
    )
