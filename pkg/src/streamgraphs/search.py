"""Search solvers: given a host promised to contain a pattern, produce a
concrete copy (vertex/edge emissions plus the inclusion map), following the
constructive strategy appropriate to each pattern shape."""

import itertools

from .decide import fin_subgraph, predicate_tf
from .errors import (BadParam, CensusUnstable, DegreeUnknown, FuelExhausted,
                     NoInfiniteDegreeVertex, OracleRefused, PatternNeverSeen,
                     PredicateUnsupported, PromiseViolation)
from .graphs import OMEGA, FinGraph
from .spaces import SpaceName, truncate
from .streams import EventuallyConstant, GeneratorBacked, pair, unpair
from .trees import comparable, is_prefix, string_decode


class SolutionStream:
    """A copy of the pattern inside the host: the copy's name plus the
    inclusion map pattern-vertex -> host-vertex (finite dict, or a callable
    for infinite patterns)."""

    def __init__(self, name, inclusion):
        self.name = name
        self.inclusion = inclusion

    def inclusion_pairs(self):
        if callable(self.inclusion):
            raise BadParam("infinite inclusion map; query it directly")
        return sorted(self.inclusion.items())


def _window(host, fuel):
    """Finite view of a host name: emission truncation for EGr, bit window
    for Gr."""
    if host.space == "EGr":
        return truncate(host, fuel)
    vs = [v for v in range(fuel) if host.stream.eval(pair(v, v)) == 1]
    es = [(a, b) for a, b in itertools.combinations(vs, 2)
          if host.stream.eval(pair(a, b)) == 1]
    return FinGraph(vs, es)


def _copy_name(g, mapping):
    """Gr name of the image of g under the mapping (subgraph copy)."""
    image = set(mapping.values())
    bits = {}
    for v in image:
        bits[pair(v, v)] = 1
    for a, b in g.edges:
        x, y = mapping[a], mapping[b]
        bits[pair(min(x, y), max(x, y))] = 1
        bits[pair(max(x, y), min(x, y))] = 1
    top = max(bits) + 1 if bits else 0
    head = [bits.get(c, 0) for c in range(top)]
    return SpaceName("Gr", EventuallyConstant(head, 0))


def find_s_finite(g, host, fuel=None):
    """Stage-search the host truncations for the first subgraph embedding of
    the finite pattern g, then freeze it."""
    s = 1
    while True:
        if fuel is not None and s > fuel:
            raise FuelExhausted("no copy found", spent=fuel)
        emb = fin_subgraph(g, truncate(host, s))
        if emb is not None:
            return SolutionStream(_copy_name(g, emb.mapping),
                                  dict(emb.mapping))
        s += 1


# ---------------------------------------------------------------------------
# Induced finite patterns via closed choice over N
# ---------------------------------------------------------------------------

def _induced_embeddings(g, fin):
    """All induced embeddings of g into fin, lexicographically ordered."""
    out = []
    gs = sorted(g.vertices)
    hs = sorted(fin.vertices)
    if len(gs) > len(hs):
        return out
    for image in itertools.permutations(hs, len(gs)):
        m = dict(zip(gs, image))
        if all((g.has_edge(a, b) == fin.has_edge(m[a], m[b]))
               for a, b in itertools.combinations(gs, 2)):
            out.append(m)
    return out


def find_is_via_cn(g, host, cn_oracle, stage_cap=40):
    """Induced copy of a finite non-complete pattern via a closed-choice
    oracle over N.

    Candidate codes are pair(s, k): the k-th induced embedding of g into the
    host truncation at stage s. A code is rejected (co-enumerated) as soon
    as a later emission breaks induced-ness; the oracle picks a never-
    rejected code, which decodes to a stable copy.
    """
    n = len(g.vertices)
    if len(g.edges) == n * (n - 1) // 2:
        raise BadParam("use find_s_finite for complete patterns")

    def decode(code):
        s, idx = unpair(code)
        embs = _induced_embeddings(g, truncate(host, s))
        if idx >= len(embs):
            return None
        return embs[idx]

    def rejected(code, at_stage):
        s, _ = unpair(code)
        if at_stage <= s:
            return False
        m = decode(code)
        if m is None:
            return True
        later = truncate(host, at_stage)
        return not all(
            (g.has_edge(a, b) == later.has_edge(m[a], m[b]))
            for a, b in itertools.combinations(sorted(g.vertices), 2))

    def co_enum(t):
        """Codes newly seen to be rejected at step t; a code enters the
        checked window once t reaches it."""
        out = []
        for c in range(t + 1):
            now = rejected(c, t)
            before = c <= t - 1 and rejected(c, t - 1)
            if now and not before:
                out.append(c)
        return out

    code = cn_oracle(co_enum, stage_cap)
    m = decode(code)
    if m is None or rejected(code, stage_cap):
        raise OracleRefused("oracle picked a rejected code %r" % code)
    return SolutionStream(_copy_name(g, m), dict(m))


def cn_by_stabilization(co_enum, stage_cap):
    """Reference closed-choice oracle: run the co-enumeration for the whole
    fuel window and answer the least never-rejected code."""
    out = set()
    for t in range(stage_cap):
        out.update(co_enum(t))
    for c in range(stage_cap):
        if c not in out:
            return c
    raise OracleRefused("every code in the window was rejected")


# ---------------------------------------------------------------------------
# Patterns that are disjoint unions of finite components
# ---------------------------------------------------------------------------

class _ComponentsMachine:
    """Two interleaved procedures: claim all exceptional components at once
    when they fit disjointly; greedily claim fresh copies of each recurring
    component, never reusing host vertices."""

    def __init__(self, exceptional, recurring, host):
        self.exceptional = list(exceptional)
        self.recurring = list(recurring)
        self.host = host
        self.used = set()
        self.out = []
        self.fuel = 0
        self.exceptional_done = not self.exceptional
        self.next_recurring = 0
        self.claimed = []  # (component FinGraph, mapping)

    def _emit_copy(self, comp, mapping):
        self.claimed.append((comp, dict(mapping)))
        for v in sorted(mapping.values()):
            self.out.append(pair(v, v) + 1)
        for a, b in sorted(comp.edges):
            x, y = mapping[a], mapping[b]
            self.out.append(pair(min(x, y), max(x, y)) + 1)
        self.used.update(mapping.values())

    def _try_claim(self, comp, fin):
        free = fin.induced(set(fin.vertices) - self.used)
        emb = fin_subgraph(comp, free)
        if emb is None:
            return False
        self._emit_copy(comp, emb.mapping)
        return True

    def step(self):
        self.fuel += 10
        fin = truncate(self.host, self.fuel)
        if not self.exceptional_done:
            # all exceptional parts must fit disjointly in one shot
            free = fin.induced(set(fin.vertices) - self.used)
            big = FinGraph(
                [pair(i, v) for i, part in enumerate(self.exceptional)
                 for v in part.vertices],
                [(pair(i, a), pair(i, b))
                 for i, part in enumerate(self.exceptional)
                 for a, b in part.edges])
            emb = fin_subgraph(big, free)
            if emb is not None:
                for i, part in enumerate(self.exceptional):
                    self._emit_copy(part, {v: emb.mapping[pair(i, v)]
                                           for v in part.vertices})
                self.exceptional_done = True
            return
        if self.recurring:
            comp = self.recurring[self.next_recurring % len(self.recurring)]
            if self._try_claim(comp, fin):
                self.next_recurring += 1

    def value(self, n):
        while len(self.out) <= n:
            before = len(self.out)
            self.step()
            if len(self.out) == before:
                self.out.append(0)  # padding while waiting
        return self.out[n]


def find_s_components(parts, host):
    """Solver for patterns that are countable unions of finite components.

    `parts` is a list of (FinGraph, multiplicity) with multiplicity a natural
    number (exceptional components, claimed first) or OMEGA (recurring
    components, claimed round-robin forever)."""
    exceptional = []
    recurring = []
    for comp, mult in parts:
        if mult == OMEGA:
            recurring.append(comp)
        else:
            exceptional.extend([comp] * mult)
    machine = _ComponentsMachine(exceptional, recurring, host)
    name = SpaceName("EGr", GeneratorBacked(machine.value),
                     meta={"components": machine})
    return SolutionStream(name, lambda v: v)


# ---------------------------------------------------------------------------
# Ray followers
# ---------------------------------------------------------------------------

def _wait_for(predicate, fuel):
    s = 1
    while s < fuel:
        got = predicate(s)
        if got is not None:
            return got
        s *= 2
    got = predicate(fuel)
    if got is not None:
        return got
    raise PatternNeverSeen("no witness within fuel %d" % fuel)


def _extend_walk(host, walk, banned, fuel):
    """Least fresh neighbor of the walk's tip, waiting on the enumeration."""
    tip = walk[-1]
    seen = set(walk) | set(banned)

    def probe(s):
        fin = truncate(host, s)
        if tip not in fin.vertices:
            return None
        cands = [w for w in fin.neighbors(tip) if w not in seen]
        return min(cands) if cands else None

    return _wait_for(probe, fuel)


def ray_follow(kind, host, fuel=2000, steps=10):
    """Follow a ray inside a host of the stated shape, returning the list of
    visited vertices (pairwise-distinct, consecutively adjacent).

    kind: "TwoWayRay" | ("CycleTailRay", n) | ("CompleteTailRay", m) |
    "FullBinaryTree".
    """
    banned = set()
    if kind == "TwoWayRay" or kind == "FullBinaryTree":
        start = _wait_for(
            lambda s: min(truncate(host, s).vertices)
            if truncate(host, s).vertices else None, fuel)
    elif isinstance(kind, tuple) and kind[0] in ("CycleTailRay",
                                                 "CompleteTailRay"):
        shape, size = kind
        if shape == "CycleTailRay":
            core = FinGraph(range(size),
                            [(i, (i + 1) % size) for i in range(size)])
        else:
            core = FinGraph(range(size),
                            [(a, b) for a in range(size)
                             for b in range(a + 1, size)])
        pend = FinGraph(range(size + 1), list(core.edges) + [(0, size)])

        def find_pendant(s):
            emb = fin_subgraph(pend, truncate(host, s))
            if emb is None:
                return None
            return emb.mapping

        mapping = _wait_for(find_pendant, fuel)
        start = mapping[size]
        banned = {mapping[i] for i in range(size)}
    else:
        raise BadParam("unknown follower kind %r" % (kind,))
    walk = [start]
    while len(walk) < steps:
        walk.append(_extend_walk(host, walk, banned, fuel))
    return walk


def emb_ray_r(host, lim_oracle, fuel=2000, steps=10):
    """Embed into a host isomorphic to the one-way ray: probe which side of
    the first discovered edge is the infinite one (a convergent bit stream,
    answered by the oracle), then walk that way."""

    def first_edge(s):
        fin = _window(host, s)
        es = sorted(fin.edges)
        return es[0] if es else None

    v, w = _wait_for(first_edge, fuel)

    def q_bit(t):
        fin = _window(host, max(t, 4))
        if v not in fin.vertices or w not in fin.vertices:
            return 0
        side_w = fin.induced(set(fin.vertices) - {v}).component_of(w)
        side_v = fin.induced(set(fin.vertices) - {w}).component_of(v)
        return 1 if len(side_w) >= len(side_v) else 0

    choice = lim_oracle(GeneratorBacked(q_bit))
    walk = [w, v] if choice == 0 else [v, w]

    def extend(walk):
        tip = walk[-1]
        seen = set(walk)

        def probe(s):
            fin = _window(host, s)
            if tip not in fin.vertices:
                return None
            cands = [u for u in fin.neighbors(tip) if u not in seen]
            return min(cands) if cands else None

        return _wait_for(probe, fuel)

    while len(walk) < steps:
        walk.append(extend(walk))
    return walk


# ---------------------------------------------------------------------------
# Path extraction from solutions over the layered constructions
# ---------------------------------------------------------------------------

def path_from_solution(mode, solution, fuel=2000, steps=6):
    """Extract a tree path from a solution over a layered construction host.

    mode: ("L1", N) — successive comparable vertices of degree > N;
          ("L2", N) — vertices with >= N+1 extensions and s chained
          predecessors among the solution's vertices;
          ("L2O", lam) — same with the threshold lam(s+1)+1.
    Returns the list of picked tree nodes (as digit tuples), ⊑-increasing.
    """
    fin = truncate(solution.name, fuel)
    nodes = {v: string_decode(v) for v in fin.vertices}
    kind = mode[0]
    if kind not in ("L1", "L2", "L2O"):
        raise BadParam("unknown mode %r" % (kind,))

    def degree(v):
        return len(fin.neighbors(v))

    out = []
    if kind == "L1":
        threshold = mode[1]
        picks = [v for v in sorted(fin.vertices)
                 if degree(v) > threshold]
        for v in picks:
            if out and not comparable(out[-1], nodes[v]):
                raise PromiseViolation(
                    "incomparable high-degree vertices %r, %r"
                    % (out[-1], nodes[v]))
            if not out or (is_prefix(out[-1], nodes[v])
                           and nodes[v] != out[-1]):
                out.append(nodes[v])
            if len(out) >= steps:
                break
        return out
    for s in range(steps):
        if kind == "L2":
            need = mode[1] + 1
        else:
            need = mode[1](s + 1) + 1
        pick = None
        for v in sorted(fin.vertices):
            sigma = nodes[v]
            exts = [w for w in fin.vertices
                    if is_prefix(sigma, nodes[w]) and nodes[w] != sigma]
            preds = [w for w in fin.vertices
                     if is_prefix(nodes[w], sigma) and nodes[w] != sigma]
            if len(exts) >= need and len(preds) >= s and \
                    (not out or (is_prefix(out[-1], sigma)
                                 and sigma != out[-1])):
                pick = sigma
                break
            if len(exts) >= need and out and not comparable(out[-1], sigma) \
                    and len(sigma) > len(out[-1]):
                raise PromiseViolation(
                    "incomparable extension-rich vertices %r, %r"
                    % (out[-1], sigma))
        if pick is None:
            break
        out.append(pick)
    return out


# ---------------------------------------------------------------------------
# Connected restriction
# ---------------------------------------------------------------------------

class _ConnectedRestriction:
    def __init__(self, host, v):
        self.host = host
        self.v = v
        self.fuel = 0
        self.emitted_v = set()
        self.emitted_e = set()
        self.out = []

    def step(self):
        self.fuel += 5
        fin = truncate(self.host, self.fuel)
        if self.v not in fin.vertices:
            return
        comp = fin.component_of(self.v)
        for u in sorted(comp - self.emitted_v):
            self.emitted_v.add(u)
            self.out.append(pair(u, u) + 1)
        for a, b in sorted(fin.edges):
            if a in comp and b in comp and (a, b) not in self.emitted_e:
                self.emitted_e.add((a, b))
                self.out.append(pair(a, b) + 1)

    def value(self, n):
        while len(self.out) <= n:
            before = len(self.out)
            self.step()
            if len(self.out) == before:
                self.out.append(0)
        return self.out[n]


def restrict_to_connected(host, v):
    """EGr name enumerating exactly the connected component of v, each new
    vertex emitted together with a witnessing path."""
    machine = _ConnectedRestriction(host, v)
    return SpaceName("EGr", GeneratorBacked(machine.value))


# ---------------------------------------------------------------------------
# Infinite-star and forest patterns
# ---------------------------------------------------------------------------

def find_t3(h, scan=1000):
    """Copy of the infinite star: the least infinite-degree vertex plus its
    neighbor star."""
    count = h.vertex_count()
    center = None
    for i, v in enumerate(h.iter_vertices()):
        if count == OMEGA and i >= scan:
            break
        try:
            if h.degree(v) == OMEGA:
                center = v
                break
        except DegreeUnknown:
            raise PredicateUnsupported("need exact degrees")
    if center is None:
        raise NoInfiniteDegreeVertex("no vertex of infinite degree found")

    def neighbor_gen():
        for u in h.iter_vertices():
            if u != center and h.has_edge(center, u):
                yield u

    neigh = neighbor_gen()
    emitted = [pair(center, center) + 1]

    def value(n):
        while len(emitted) <= n:
            u = next(neigh)
            emitted.append(pair(u, u) + 1)
            emitted.append(pair(min(center, u), max(center, u)) + 1)
        return emitted[n]

    name = SpaceName("EGr", GeneratorBacked(value))
    return SolutionStream(name, {"center": center})


class _F2k2Machine:
    """Greedy copy of F_{2k+2} (omega copies of the height-k chain tree with
    omega branching): each round claims one fresh copy root and grows every
    open internal node of every copy by one child."""

    def __init__(self, h, k, scan):
        self.h = h
        self.k = k
        self.scan = scan
        self.used = set()
        self.out = []
        self.nodes = []       # (vertex, depth) in claim order
        self.vertex_iter = h.iter_vertices()
        self.scanned = []

    def _degree_ok(self, v, depth):
        """Internal nodes (depth < k) need infinite degree."""
        if depth >= self.k:
            return True
        try:
            return self.h.degree(v) == OMEGA
        except DegreeUnknown:
            raise PredicateUnsupported("need exact degrees")

    def _scan_vertex(self, idx):
        while len(self.scanned) <= idx:
            if len(self.scanned) >= self.scan:
                raise PatternNeverSeen("vertex scan exhausted")
            self.scanned.append(next(self.vertex_iter))
        return self.scanned[idx]

    def _claim(self, v, depth, parent):
        self.used.add(v)
        self.nodes.append((v, depth))
        self.out.append(pair(v, v) + 1)
        if parent is not None:
            self.out.append(pair(min(parent, v), max(parent, v)) + 1)

    def _fresh_root(self):
        idx = 0
        while True:
            v = self._scan_vertex(idx)
            if v not in self.used and self._degree_ok(v, 0):
                self._claim(v, 0, None)
                return
            idx += 1

    def _grow(self, v, depth):
        if depth >= self.k:
            return
        idx = 0
        while True:
            u = self._scan_vertex(idx)
            if u not in self.used and u != v and self.h.has_edge(v, u) \
                    and self._degree_ok(u, depth + 1):
                self._claim(u, depth + 1, v)
                return
            idx += 1

    def round(self):
        self._fresh_root()
        for v, depth in list(self.nodes):
            self._grow(v, depth)

    def value(self, n):
        while len(self.out) <= n:
            self.round()
        return self.out[n]


def find_f2k2(h, k, scan=100000):
    """Copy of F_{2k+2} inside a host whose certificate confirms the
    promise."""
    if predicate_tf("F", k, h) is not True:
        raise PredicateUnsupported("host certificate refutes the promise")
    machine = _F2k2Machine(h, k, scan)
    name = SpaceName("EGr", GeneratorBacked(machine.value),
                     meta={"f2k2": machine})
    return SolutionStream(name, lambda v: v)


# ---------------------------------------------------------------------------
# Unique-path extraction over binary trees
# ---------------------------------------------------------------------------

def cantor_unique_path(solution, depth):
    """Path through a binary tree from a connected ray solution given by a
    characteristic-function name: each level holds at most 2^n nodes, so the
    level census is computable; levels with census one are on the path."""
    if solution.space != "Gr":
        raise BadParam("census needs a characteristic-function name")
    out = []
    for n in range(depth):
        level = []
        for digits in itertools.product((0, 1), repeat=n):
            code = 0
            for d in digits:
                code = pair(code, d) + 1
            if solution.stream.eval(pair(code, code)) == 1:
                level.append(digits)
        if not level:
            raise CensusUnstable("empty level %d below the solution" % n)
        if len(level) == 1:
            out.append(level[0])
    return out
