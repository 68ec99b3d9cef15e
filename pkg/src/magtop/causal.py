"""Causal posets over X x R and the simplicial pairs built from them.

A light-like sequence from a to b of length l is a point sequence whose
steps sum to exactly l; its time stamps are the running prefix sums, so the
essential part of the causal interval (the points lying on some light-like
sequence) is a finite poset.  The order complex of that poset relative to
the short chains models the magnitude homotopy type, and all homology in
this package is computed from such pairs or from the sequence chain complex
directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .metric import seq_length


class InvalidLength(ValueError):
    pass


class CausalPoint(NamedTuple):
    # natural tuple order = (time, point index), the canonical vertex order
    time: Fraction
    point: int


def lightlike_sequences(space, a, b, l):
    """All sequences a -> b with steps summing to exactly l, lexicographic."""
    l = Fraction(l)
    if l < 0:
        return []
    d = space.dist
    n = space.n
    out = []
    seq = [a]

    def extend(x, rem):
        if rem == 0 and x == b:
            out.append(tuple(seq))
        if rem <= 0:
            return
        for y in range(n):
            if y == x:
                continue
            step = d[x][y]
            if step > rem or d[y][b] > rem - step:
                continue
            seq.append(y)
            extend(y, rem - step)
            seq.pop()

    if d[a][b] <= l:
        extend(a, l)
    return out


def sequences_up_to(space, a, b, budget):
    """All sequences a -> b with length <= budget, as (seq, length) pairs."""
    budget = Fraction(budget)
    d = space.dist
    n = space.n
    out = []
    seq = [a]

    def extend(x, used):
        if x == b:
            out.append((tuple(seq), used))
        rem = budget - used
        for y in range(n):
            if y == x:
                continue
            step = d[x][y]
            if step > rem or d[y][b] > rem - step:
                continue
            seq.append(y)
            extend(y, used + step)
            seq.pop()

    if d[a][b] <= budget:
        extend(a, Fraction(0))
    return out


def _reachable_lengths(space, start, budget):
    """Map point -> set of sequence lengths from start, up to budget."""
    d = space.dist
    n = space.n
    seen = {start: {Fraction(0)}}
    frontier = [(start, Fraction(0))]
    while frontier:
        x, used = frontier.pop()
        for y in range(n):
            if y == x:
                continue
            nl = used + d[x][y]
            if nl > budget:
                continue
            bucket = seen.setdefault(y, set())
            if nl not in bucket:
                bucket.add(nl)
                frontier.append((y, nl))
    return seen

def achievable_lengths(space, budget):
    """Sorted list of all sequence lengths <= budget, over all endpoints."""
    budget = Fraction(budget)
    out = set()
    for start in range(space.n):
        for bucket in _reachable_lengths(space, start, budget).values():
            out |= bucket
    return sorted(out)


def pair_achievable_lengths(space, a, b, budget):
    """Sorted list of lengths of sequences from a to b, up to budget."""
    budget = Fraction(budget)
    return sorted(_reachable_lengths(space, a, budget).get(b, set()))


def seq_time_stamps(space, seq):
    """The chain of causal points carried by a sequence (prefix-sum times)."""
    t = Fraction(0)
    chain = [CausalPoint(t, seq[0])]
    for i in range(1, len(seq)):
        t += space.dist[seq[i - 1]][seq[i]]
        chain.append(CausalPoint(t, seq[i]))
    return tuple(chain)


class CausalPoset:
    """Finite subposet of X x R under (x,t) <= (y,s) iff d(x,y) <= s - t."""

    __slots__ = ("space", "a", "b", "l", "points")

    def __init__(self, space, a, b, l, points):
        self.space = space
        self.a = a
        self.b = b
        self.l = Fraction(l)
        self.points = tuple(sorted(points))

    def leq(self, u, v):
        return self.space.dist[u.point][v.point] <= v.time - u.time

    def lt(self, u, v):
        return u != v and self.leq(u, v)

    def chains(self):
        """All nonempty chains, each sorted by (time, point)."""
        pts = self.points
        greater = {
            u: [v for v in pts if self.lt(u, v)] for u in pts
        }
        out = []
        chain = []

        def extend(u):
            chain.append(u)
            out.append(tuple(chain))
            for v in greater[u]:
                extend(v)
            chain.pop()

        for u in pts:
            extend(u)
        return out

    def validate(self):
        # reflexivity / antisymmetry / transitivity on the carrier
        for u in self.points:
            assert self.leq(u, u)
            for v in self.points:
                if self.leq(u, v) and self.leq(v, u):
                    assert u == v
                for w in self.points:
                    if self.leq(u, v) and self.leq(v, w):
                        assert self.leq(u, w)
        return True

    def __repr__(self):
        body = ", ".join(
            "(%s,%s)" % (self.space.labels[p.point], p.time) for p in self.points
        )
        return "CausalPoset[%s]" % body


def essential_poset(space, a, b, l):
    """Causal points lying on some light-like sequence from a to b."""
    pts = set()
    for seq in lightlike_sequences(space, a, b, l):
        pts.update(seq_time_stamps(space, seq))
    return CausalPoset(space, a, b, l, pts)


VOID = "void"
EMPTY = "empty"
NONEMPTY = "nonempty"


class SimplicialComplex:
    """Tri-state finite complex.

    void:  no simplices at all (not even the empty one)
    empty: only the empty simplex
    else:  the empty simplex plus the stored nonempty simplices
    Simplices are tuples of vertices in ascending vertex order.
    """

    __slots__ = ("is_void", "_sims")

    def __init__(self, is_void, sims):
        self.is_void = is_void
        self._sims = frozenset(sims)
        if is_void:
            assert not self._sims
        for s in self._sims:
            assert len(s) > 0 and tuple(sorted(s)) == s
            if len(s) > 1:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    assert face in self._sims, "not closed under faces"

    @classmethod
    def void(cls):
        return cls(True, ())

    @classmethod
    def empty(cls):
        return cls(False, ())

    @classmethod
    def of(cls, simplices, close=False):
        sims = set(tuple(sorted(s)) for s in simplices)
        if close:
            stack = list(sims)
            while stack:
                s = stack.pop()
                if len(s) > 1:
                    for i in range(len(s)):
                        face = s[:i] + s[i + 1:]
                        if face not in sims:
                            sims.add(face)
                            stack.append(face)
        return cls(False, sims)

    @property
    def state(self):
        if self.is_void:
            return VOID
        return EMPTY if not self._sims else NONEMPTY

    def __contains__(self, simplex):
        return tuple(sorted(simplex)) in self._sims

    def __len__(self):
        return len(self._sims)

    def simplices(self):
        return sorted(self._sims, key=lambda s: (len(s), s))

    def dims(self):
        return sorted({len(s) - 1 for s in self._sims})

    def of_dim(self, k):
        return sorted(s for s in self._sims if len(s) == k + 1)

    def __le__(self, other):
        if self.is_void:
            return True
        if other.is_void:
            return False
        return self._sims <= other._sims

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.is_void == other.is_void
            and self._sims == other._sims
        )

    def __hash__(self):
        return hash((self.is_void, self._sims))

    def __repr__(self):
        return "SimplicialComplex(%s, %d simplices)" % (self.state, len(self._sims))


class SimplicialPair:
    """A complex together with a subcomplex, with tri-state bookkeeping."""

    __slots__ = ("total", "sub")

    def __init__(self, total, sub):
        assert sub <= total, "sub is not a subcomplex of total"
        self.total = total
        self.sub = sub

    def relative_simplices(self):
        return sorted(
            (s for s in self.total.simplices() if s not in self.sub),
            key=lambda s: (len(s), s),
        )

    def __repr__(self):
        return "SimplicialPair(total=%s, sub=%s)" % (self.total.state, self.sub.state)


def _chain_seq_length(space, chain):
    """Length of the underlying point sequence of a chain (time order)."""
    total = Fraction(0)
    for i in range(1, len(chain)):
        total += space.dist[chain[i - 1].point][chain[i].point]
    return total


def order_complex_pair(space, a, b, l):
    """Order complex of the essential poset, relative to short chains.

    total = all chains; sub = chains whose underlying sequence is shorter
    than l.  The simplices outside sub are exactly the time-stamped
    light-like sequences.  At l = 0 the sub side is void; a void essential
    poset gives the (void, void) pair.
    """
    l = Fraction(l)
    poset = essential_poset(space, a, b, l)
    if not poset.points:
        return SimplicialPair(SimplicialComplex.void(), SimplicialComplex.void())
    chains = poset.chains()
    short = [c for c in chains if _chain_seq_length(space, c) < l]
    total = SimplicialComplex.of(chains)
    if l == 0:
        assert not short
        return SimplicialPair(total, SimplicialComplex.void())
    sub = SimplicialComplex.of(short)
    pair = SimplicialPair(total, sub)
    # the relative part must be exactly the stamped light-like sequences
    rel = set(pair.relative_simplices())
    stamped = set(
        seq_time_stamps(space, s) for s in lightlike_sequences(space, a, b, l)
    )
    assert rel == stamped, "relative chains are not the light-like sequences"
    return pair


def inner_pair(space, a, b, l):
    """Endpoint-stripped pair: chains strictly between (a,0) and (b,l),
    relative to the chains that admit a shortcut below l.

    total is void when d(a,b) > l and empty when d(a,b) <= l but no
    interior essential points exist; sub is void when d(a,b) >= l and
    empty when d(a,b) < l with no short chains.
    """
    l = Fraction(l)
    if l <= 0:
        raise InvalidLength("positive length required, got %s" % (l,))
    d_ab = space.dist[a][b]
    if d_ab > l:
        return SimplicialPair(SimplicialComplex.void(), SimplicialComplex.void())
    poset = essential_poset(space, a, b, l)
    ends = {CausalPoint(Fraction(0), a), CausalPoint(l, b)}
    mid = [p for p in poset.points if p not in ends]
    mid_poset = CausalPoset(space, a, b, l, mid)
    chains = mid_poset.chains()
    total = SimplicialComplex.of(chains) if chains else SimplicialComplex.empty()
    d = space.dist
    short = []
    for c in chains:
        padded = d[a][c[0].point] + _chain_seq_length(space, c) + d[c[-1].point][b]
        if padded < l:
            short.append(c)
    if d_ab >= l:
        assert not short, "a chain undercuts l although d(a,b) = l"
        sub = SimplicialComplex.void()
    elif short:
        sub = SimplicialComplex.of(short)
    else:
        sub = SimplicialComplex.empty()
    return SimplicialPair(total, sub)


def interval_complex(space, a, b):
    """Order complex of the closed interval [a,b], relative to the chains
    missing one of the endpoints.  Requires a != b."""
    from .metric import interval

    assert a != b, "interval pair needs distinct endpoints"
    poset = interval(space, a, b, "closed")
    members = poset.carrier
    greater = {
        x: [y for y in members if y != x and poset.le(x, y)] for x in members
    }
    out = []
    chain = []

    def extend(x):
        chain.append(x)
        out.append(tuple(chain))
        for y in greater[x]:
            extend(y)
        chain.pop()

    for x in members:
        extend(x)
    chains = [tuple(sorted(c)) for c in out]
    total = SimplicialComplex.of(chains)
    sub = SimplicialComplex.of(
        [c for c in chains if a not in c or b not in c]
    )
    return SimplicialPair(total, sub)


def disjoint_split(space, l):
    """Blocks of points whose pairwise distance is <= l; sequences of
    length <= l never cross blocks."""
    n = space.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if space.dist[i][j] <= l:
                parent[find(i)] = find(j)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(frozenset(b) for b in blocks.values())
