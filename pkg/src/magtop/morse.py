"""Verified discrete Morse matchings and the glued-space twist bijection.

A partial matching pairs simplices with codimension-one faces.  Matched
pairs reverse their Hasse arrow; acyclicity of the resulting digraph is
checked, never assumed.  For a glued space the projecting matching pairs
every sequence that crosses from one side to the other through the common
part with a partner obtained by inserting or deleting a gate point, and
its unmatched full-length sequences are exactly the ones decomposable
into one-sided pieces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .causal import achievable_lengths, lightlike_sequences, seq_time_stamps
from .metric import glue, seq_length


class NotAMatching(ValueError):
    pass


class GateMissing(AssertionError):
    pass


class NotASycamoreTwist(ValueError):
    pass


class Matching:
    """Partial pairing (face, coface) with each simplex in at most one pair."""

    __slots__ = ("pairs", "_up", "_down")

    def __init__(self, pairs):
        pairs = tuple(sorted(pairs))
        up = {}
        down = {}
        for face, coface in pairs:
            if len(coface) != len(face) + 1 or not set(face) < set(coface):
                raise NotAMatching(
                    "pair is not a codimension-one face relation: %r, %r"
                    % (face, coface)
                )
            for s in (face, coface):
                if s in up or s in down:
                    raise NotAMatching("simplex matched twice: %r" % (s,))
            up[face] = coface
            down[coface] = face
        self.pairs = pairs
        self._up = up
        self._down = down

    def coface_of(self, face):
        return self._up.get(face)

    def face_of(self, coface):
        return self._down.get(coface)

    def is_matched(self, simplex):
        return simplex in self._up or simplex in self._down

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other):
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __repr__(self):
        return "Matching(%d pairs)" % len(self.pairs)


@dataclass(frozen=True)
class AcyclicReport:
    ok: bool
    cycle: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class BoundedReport:
    ok: bool
    bounds: dict

    def __bool__(self):
        return self.ok


def _modified_hasse(simplices, matching):
    """Directed graph: matched Hasse arrows point up, the rest point down."""
    cells = set(simplices)
    for face, coface in matching:
        if face not in cells or coface not in cells:
            raise NotAMatching("matched simplex outside the complex: %r" % (face,))
    succ = {s: [] for s in cells}
    for s in cells:
        if len(s) < 2:
            continue
        for i in range(len(s)):
            f = s[:i] + s[i + 1 :]
            if f not in cells:
                continue
            if matching.coface_of(f) == s:
                succ[f].append(s)
            else:
                succ[s].append(f)
    return succ


def verify_acyclic(simplices, matching):
    """Kahn-style cycle test on the modified Hasse digraph.

    Returns a report carrying a directed cycle as witness on failure.
    """
    succ = _modified_hasse(simplices, matching)
    indeg = {s: 0 for s in succ}
    pred = {s: [] for s in succ}
    for s, outs in succ.items():
        for t in outs:
            indeg[t] += 1
            pred[t].append(s)
    queue = deque(s for s, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        s = queue.popleft()
        seen += 1
        for t in succ[s]:
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    if seen == len(succ):
        return AcyclicReport(True)
    # every unprocessed node kept an unprocessed predecessor
    residual = {s for s, d in indeg.items() if d > 0}
    trail = [next(iter(residual))]
    pos = {trail[0]: 0}
    while True:
        prv = next(t for t in pred[trail[-1]] if t in residual)
        if prv in pos:
            cycle = trail[pos[prv] :]
            cycle.reverse()
            return AcyclicReport(False, tuple(cycle))
        pos[prv] = len(trail)
        trail.append(prv)


def verify_bounded(simplices, matching):
    """Longest alternating descent (down to a free face, up its partner).

    Finite acyclic matchings are always bounded; the per-simplex counts
    N(a) are returned so callers can inspect them.
    """
    if not verify_acyclic(simplices, matching):
        return BoundedReport(False, {})
    cells = set(simplices)
    steps = {}
    for s in cells:
        outs = []
        if len(s) >= 2:
            for i in range(len(s)):
                f = s[:i] + s[i + 1 :]
                partner = matching.coface_of(f)
                if partner is not None and partner != s:
                    outs.append(partner)
        steps[s] = outs
    bounds = {}
    for root in cells:
        stack = [root]
        while stack:
            s = stack[-1]
            if s in bounds:
                stack.pop()
                continue
            todo = [t for t in steps[s] if t not in bounds]
            if todo:
                stack.extend(todo)
                continue
            bounds[s] = 1 + max((bounds[t] for t in steps[s]), default=0)
            stack.pop()
    return BoundedReport(True, bounds)


@dataclass(frozen=True)
class SequenceClass:
    """Classification of a glued-space sequence.

    kind is "sticky" when some crossing run has one end strictly inside g,
    the other end at a biased interior-h point, and everything between in
    K; otherwise "flat" (single one-sided piece) or "twistable" (several
    pieces concatenated at neutral points).
    """

    kind: str
    first_sticky: tuple | None = None
    pieces: tuple = ()
    cuts: tuple = ()


def _first_sticky(gspec, seq):
    kset = gspec.kset
    interior_g = gspec.interior_g
    biased = gspec.biased
    k = len(seq)
    for i in range(k - 1):
        xi = seq[i]
        if xi not in interior_g and xi not in biased:
            continue
        j = i + 1
        while j < k and seq[j] in kset:
            j += 1
        if j == k:
            continue
        xj = seq[j]
        if xi in interior_g and xj in biased:
            return (i, j)
        if xi in biased and xj in interior_g:
            return (i, j)
    return None


def classify_sequence(gspec, seq):
    """Classify and, when sticky-free, decompose into one-sided flat pieces.

    Pieces overlap in single concatenation points, each of which lies in
    the neutral part of interior h; a fully one-sided sequence is a single
    piece with no cuts.
    """
    seq = tuple(seq)
    sticky = _first_sticky(gspec, seq)
    if sticky is not None:
        return SequenceClass("sticky", sticky)
    side_g = gspec.interior_g | gspec.kset | gspec.neutral
    side_h = gspec.side_h()
    neutral = gspec.neutral
    k = len(seq)
    pieces = []
    cuts = []
    start = 0
    while True:
        ok_g = True
        ok_h = True
        end = start
        for m in range(start, k):
            in_g = ok_g and seq[m] in side_g
            in_h = ok_h and seq[m] in side_h
            if not in_g and not in_h:
                break
            ok_g, ok_h = in_g, in_h
            end = m
        if end == k - 1:
            pieces.append((start, end))
            break
        # prefix maximal and strictly one-sided at a proper split
        assert ok_g != ok_h, "ambiguous maximal prefix cannot end properly"
        if ok_g:
            j = max(m for m in range(start, end + 1) if seq[m] not in gspec.kset)
        else:
            j = max(
                m for m in range(start, end + 1) if seq[m] in gspec.interior_h
            )
        assert seq[j] in neutral, "split point must be neutral when sticky-free"
        assert j > start, "decomposition must make progress"
        pieces.append((start, j))
        cuts.append(j)
        start = j
    kind = "flat" if len(pieces) == 1 else "twistable"
    return SequenceClass(kind, None, tuple(pieces), tuple(cuts))


def _partner_sequence(gspec, seq):
    """Partner of a sticky sequence: (face seq, coface seq) under gate moves."""
    sticky = _first_sticky(gspec, seq)
    assert sticky is not None, "only sticky sequences have partners"
    i, j = sticky
    if seq[i] in gspec.biased:
        e, inner = i, i + 1
        gate = gspec.gates.get(seq[i])
    else:
        e, inner = j, j - 1
        gate = gspec.gates.get(seq[j])
    if gate is None:
        raise GateMissing("biased point %r has no gate" % (seq[e],))
    if seq[inner] != gate:
        pos = inner if e == i else j
        bigger = seq[:pos] + (gate,) + seq[pos:]
        return seq, bigger
    smaller = seq[:inner] + seq[inner + 1 :]
    return smaller, seq


def lightlike_simplices(space, l):
    """Stamped full-length sequences between all ordered endpoint pairs."""
    out = []
    for a in range(space.n):
        for b in range(space.n):
            for seq in lightlike_sequences(space, a, b, l):
                out.append(seq_time_stamps(space, seq))
    return out


def projecting_matching(gspec, l):
    """Pair every sticky full-length sequence with its gate insert/delete.

    The gate identity keeps insertion length-preserving, so both halves of
    each pair are full-length sequences of the same endpoints; the pairing
    is checked to be involutive.
    """
    space = gspec.space
    l = Fraction(l)
    stamped_pairs = {}
    for a in range(space.n):
        for b in range(space.n):
            for seq in lightlike_sequences(space, a, b, l):
                if _first_sticky(gspec, seq) is None:
                    continue
                face, coface = _partner_sequence(gspec, seq)
                other = face if seq == coface else coface
                assert seq_length(space, other) == l, "gate move changed length"
                assert all(
                    other[t] != other[t + 1] for t in range(len(other) - 1)
                ), "gate move produced a repeated point"
                back = _partner_sequence(gspec, other)
                assert back == (face, coface), "gate pairing is not involutive"
                sface = seq_time_stamps(space, face)
                scoface = seq_time_stamps(space, coface)
                prev = stamped_pairs.get(sface)
                assert prev is None or prev == scoface, "conflicting partners"
                stamped_pairs[sface] = scoface
    return Matching(sorted(stamped_pairs.items()))


def critical_cells(gspec, l):
    """Unmatched full-length simplices of the projecting matching.

    Shorter simplices are never touched by the matching and stay critical;
    only the full-length ones are enumerated here.  The result is checked
    against the independent sticky-free classification.
    """
    space = gspec.space
    l = Fraction(l)
    matching = projecting_matching(gspec, l)
    critical = []
    twistfree = []
    for a in range(space.n):
        for b in range(space.n):
            for seq in lightlike_sequences(space, a, b, l):
                stamped = seq_time_stamps(space, seq)
                if not matching.is_matched(stamped):
                    critical.append(stamped)
                if classify_sequence(gspec, seq).kind != "sticky":
                    twistfree.append(stamped)
    assert sorted(critical) == sorted(twistfree), (
        "critical cells differ from sticky-free sequences"
    )
    return sorted(critical)


class SycamoreTwist:
    """A gluing and its re-gluing along a self-isometry of the common part.

    Requires every neutral interior-h point to be at equal distance from
    each common point and its image under the twist; violations are
    rejected with a witness.
    """

    __slots__ = ("g", "h", "k_in_g", "k_in_h", "alpha", "x", "y")

    def __init__(self, g, h, k_in_g, k_in_h, alpha):
        alpha = tuple(alpha)
        m = len(k_in_g)
        if sorted(alpha) != list(range(m)):
            raise NotASycamoreTwist("alpha is not a permutation of the common part")
        for s in range(m):
            for t in range(m):
                if (
                    h.dist[k_in_h[alpha[s]]][k_in_h[alpha[t]]]
                    != h.dist[k_in_h[s]][k_in_h[t]]
                ):
                    raise NotASycamoreTwist(
                        "alpha is not a self-isometry at positions (%d,%d)" % (s, t)
                    )
        x = glue(g, h, k_in_g, k_in_h)
        y = glue(g, h, k_in_g, tuple(k_in_h[alpha[t]] for t in range(m)))
        for glued in sorted(x.neutral):
            j_h = x.h_to_x.index(glued)
            for t in range(m):
                if h.dist[k_in_h[t]][j_h] != h.dist[k_in_h[alpha[t]]][j_h]:
                    raise NotASycamoreTwist(
                        "neutral point %s distinguishes %s from %s"
                        % (
                            h.labels[j_h],
                            h.labels[k_in_h[t]],
                            h.labels[k_in_h[alpha[t]]],
                        )
                    )
        assert x.biased == y.biased and x.neutral == y.neutral, (
            "twist changed the biased/neutral split"
        )
        self.g = g
        self.h = h
        self.k_in_g = tuple(k_in_g)
        self.k_in_h = tuple(k_in_h)
        self.alpha = alpha
        self.x = x
        self.y = y

    def reverse(self):
        """Twist mapping y back to x; its map composes with this one to id."""
        m = len(self.alpha)
        inv = [0] * m
        for t in range(m):
            inv[self.alpha[t]] = t
        rev = SycamoreTwist.__new__(SycamoreTwist)
        rev.g = self.g
        rev.h = self.h
        rev.k_in_g = self.k_in_g
        rev.k_in_h = tuple(self.k_in_h[self.alpha[t]] for t in range(m))
        rev.alpha = tuple(inv)
        rev.x = self.y
        rev.y = self.x
        return rev


def sycamore_tau(twist, seq):
    """Map a sticky-free sequence of the glued space to the twisted one.

    Pieces inside g plus the neutral part are kept pointwise; pieces inside
    h keep interior points and relabel common points along the inverse
    twist.  Concatenation points are neutral, hence fixed by both maps.
    """
    x = twist.x
    cls = classify_sequence(x, seq)
    if cls.kind == "sticky":
        raise ValueError("sticky sequences have no twist image")
    m = len(twist.alpha)
    inv = [0] * m
    for t in range(m):
        inv[twist.alpha[t]] = t
    slot = {x.g_to_x[twist.k_in_g[t]]: t for t in range(m)}
    tau_h = {
        p: x.g_to_x[twist.k_in_g[inv[slot[p]]]] if p in slot else p
        for p in x.side_h()
    }
    side_flat_g = x.interior_g | x.kset | x.neutral
    out = []
    for start, end in cls.pieces:
        piece = seq[start : end + 1]
        if all(p in side_flat_g for p in piece):
            image = piece
        else:
            image = tuple(tau_h[p] for p in piece)
        if out:
            assert out[-1] == image[0], "piece images disagree at a cut point"
            out.extend(image[1:])
        else:
            out.extend(image)
    return tuple(out)


@dataclass(frozen=True)
class SycamoreReport:
    ok: bool
    rows: tuple  # (length, dim, count in x, count in y, equal)
    detail: str = ""

    def __bool__(self):
        return self.ok


def _by_dim(stamped_cells):
    table = {}
    for s in stamped_cells:
        table.setdefault(len(s) - 1, set()).add(s)
    return table


def verify_sycamore(twist, lmax):
    """Check the twist bijection, Euler counts, and magnitude agreement.

    For each achievable length: the twist map carries sticky-free
    sequences bijectively onto those of the twisted space dimension by
    dimension, matched pairs cancel in the alternating count, and the
    truncated magnitude series of the two spaces coincide.
    """
    from .series import format_series, magnitude

    x, y = twist.x.space, twist.y.space
    lmax = Fraction(lmax)
    rows = []
    problems = []
    lengths = sorted(
        set(achievable_lengths(x, lmax)) | set(achievable_lengths(y, lmax))
    )
    rev = twist.reverse()
    for l in lengths:
        crit_x = _by_dim(critical_cells(twist.x, l))
        crit_y = _by_dim(critical_cells(twist.y, l))
        images = {}
        for k, cells in crit_x.items():
            imgs = set()
            for stamped in cells:
                seq = tuple(p for _, p in stamped)
                img = sycamore_tau(twist, seq)
                assert seq_length(y, img) == l, "twist image changed length"
                assert sycamore_tau(rev, img) == seq, (
                    "reverse twist fails to invert"
                )
                imgs.add(seq_time_stamps(y, img))
            assert len(imgs) == len(cells), "twist map is not injective"
            images[k] = imgs
        dims = sorted(set(crit_x) | set(crit_y) | set(images))
        for k in dims:
            cx = len(crit_x.get(k, ()))
            cy = len(crit_y.get(k, ()))
            same = images.get(k, set()) == crit_y.get(k, set())
            rows.append((l, k, cx, cy, same and cx == cy))
            if not (same and cx == cy):
                problems.append(
                    "length %s dim %d: %d cells vs %d" % (l, k, cx, cy)
                )
        for space, gspec in ((x, twist.x), (y, twist.y)):
            cells = lightlike_simplices(space, l)
            light = _by_dim(cells)
            crit = crit_x if space is x else crit_y
            alt_light = sum((-1) ** k * len(v) for k, v in light.items())
            alt_crit = sum((-1) ** k * len(v) for k, v in crit.items())
            assert alt_light == alt_crit, (
                "matched pairs fail to cancel in the Euler count"
            )
            matching = projecting_matching(gspec, l)
            if not verify_acyclic(cells, matching):
                problems.append("cyclic matching at length %s" % (l,))
            if not verify_bounded(cells, matching):
                problems.append("unbounded matching at length %s" % (l,))
    mag_x = magnitude(x, lmax)
    mag_y = magnitude(y, lmax)
    if mag_x != mag_y:
        problems.append(
            "magnitude differs: %s vs %s"
            % (format_series(mag_x), format_series(mag_y))
        )
    detail = "; ".join(problems) if problems else (
        "bijection, Euler counts, and magnitude agree up to q^%s" % (lmax,)
    )
    return SycamoreReport(not problems, tuple(rows), detail)
