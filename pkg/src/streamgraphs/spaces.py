"""Represented spaces for countable graphs and trees.

Spaces:
  Gr  -- characteristic function over pair codes: p(pair(i,j)) = 1 iff the
         edge (i,j) is present (i == j encodes "i is a vertex").
  EGr -- enumeration: the stream emits value 0 as padding ("no new
         information") and value c+1 to emit pair code c. Edges may only be
         emitted after both endpoint vertices.
  Tr / Tr2 -- characteristic function of a prefix-closed set of string codes
         (Tr2: binary alphabet).

The EGr wire shift (+1) keeps vertex 0 expressible while still giving padding
a dedicated symbol; an all-padding stream denotes the empty graph.
"""

import random
from collections import namedtuple

from .errors import BadParam, FuelExhausted, MalformedInstance
from .streams import (CertifiedStream, EventuallyConstant, GeneratorBacked,
                      Periodic, pair, unpair)
from .trees import string_decode
from .graphs import OMEGA, CountableGraph, FinGraph, Finite

SPACES = ("Gr", "EGr", "Tr", "Tr2")

Violation = namedtuple("Violation", "index rule")


class SpaceName:
    """A certified stream tagged with its represented space.

    meta carries optional structural certificates (e.g. the GraphGen a name
    was synthesized from, or a gadget's driver stream); it never affects the
    denotation, only what downstream deciders can certify.
    """

    def __init__(self, space, stream, meta=None):
        if space not in SPACES:
            raise BadParam("unknown space %r" % space)
        if not isinstance(stream, CertifiedStream):
            raise BadParam("SpaceName needs a CertifiedStream")
        self.space = space
        self.stream = stream
        self.meta = dict(meta or {})

    def __repr__(self):
        return "SpaceName(%r, %r)" % (self.space, self.stream)


# ---------------------------------------------------------------------------
# Domain validation
# ---------------------------------------------------------------------------

def validate_prefix(space, prefix):
    """First violated domain rule on a forced prefix, or the string "ok"."""
    prefix = list(prefix)
    if space == "Gr":
        for n, v in enumerate(prefix):
            if v not in (0, 1):
                return Violation(n, "Gr values must be binary")
            if v != 1:
                continue
            i, j = unpair(n)
            for q in (pair(j, i), pair(i, i), pair(j, j)):
                if q < len(prefix) and prefix[q] != 1:
                    return Violation(n, "edge forces vertices and symmetry")
        return "ok"
    if space == "EGr":
        emitted = set()
        for n, v in enumerate(prefix):
            if v == 0:
                continue
            i, j = unpair(v - 1)
            if i != j:
                if pair(i, i) not in emitted or pair(j, j) not in emitted:
                    return Violation(n, "edge emitted before its vertices")
            emitted.add(v - 1)
        return "ok"
    if space in ("Tr", "Tr2"):
        for n, v in enumerate(prefix):
            if v not in (0, 1):
                return Violation(n, "tree values must be binary")
            if v != 1 or n == 0:
                continue
            parent, digit = unpair(n - 1)
            if space == "Tr2" and digit > 1:
                return Violation(n, "Tr2 digits must be < 2")
            if parent < len(prefix) and prefix[parent] != 1:
                return Violation(n, "node present without its parent")
        return "ok"
    raise BadParam("unknown space %r" % space)


def validate_name(name, horizon=2000):
    return validate_prefix(name.space, name.stream.prefix(horizon))


# ---------------------------------------------------------------------------
# Name synthesis
# ---------------------------------------------------------------------------

def _gr_bit(g, n):
    i, j = unpair(n)
    if i == j:
        return 1 if g.has_vertex(i) else 0
    return 1 if (g.has_vertex(i) and g.has_vertex(j) and g.has_edge(i, j)) else 0


def _finite_emissions(fin):
    """Default emission order for a finite graph: all vertices in label
    order, then all edges in code order (vertex-before-edge by construction)."""
    out = [pair(v, v) for v in sorted(fin.vertices)]
    out += sorted(pair(a, b) for a, b in fin.edges)
    return out


def name_of(space, g, schedule=None):
    """Synthesize a valid name for an algebra graph.

    schedule (EGr only): None/'diagonal', or ('random', seed, stutter) for
    finite graphs -- a seeded shuffled emission order with stutter padding.
    """
    if isinstance(g, FinGraph):
        g = Finite(g)
    if space == "Gr":
        if g.vertex_count() != OMEGA:
            fin = g.materialize()
            ones = {pair(v, v) for v in fin.vertices}
            for a, b in fin.edges:
                ones.add(pair(a, b))
                ones.add(pair(b, a))
            top = max(ones) + 1 if ones else 0
            return SpaceName("Gr",
                             EventuallyConstant([1 if c in ones else 0
                                                 for c in range(top)], 0),
                             meta={"denotes": g})
        return SpaceName("Gr", GeneratorBacked(lambda n: _gr_bit(g, n)),
                         meta={"denotes": g})
    if space == "EGr":
        if g.vertex_count() != OMEGA:
            fin = g.materialize()
            if schedule is None or schedule == "diagonal":
                order = _finite_emissions(fin)
            else:
                tag, seed, stutter = schedule
                if tag != "random":
                    raise BadParam("unknown schedule %r" % (schedule,))
                order = _random_schedule(fin, seed, stutter)
                return SpaceName("EGr", EventuallyConstant(order, 0),
                                 meta={"denotes": g})
            return SpaceName("EGr",
                             EventuallyConstant([c + 1 for c in order], 0),
                             meta={"denotes": g})
        return SpaceName("EGr", _egr_transducer_stream(
            GeneratorBacked(lambda n: _gr_bit(g, n))), meta={"denotes": g})
    raise BadParam("name_of supports Gr and EGr")


def _random_schedule(fin, seed, stutter):
    """Shuffled valid emission order with stuttering, already wire-shifted."""
    rng = random.Random(seed)
    pending_edges = sorted(fin.edges)
    pending_vertices = sorted(fin.vertices)
    emitted_v = set()
    out = []
    history = []

    def emit(code):
        out.append(code + 1)
        history.append(code)

    while pending_vertices or pending_edges:
        if rng.random() < stutter and history:
            out.append(0 if rng.random() < 0.5 else rng.choice(history) + 1)
            continue
        ready = [("e", e) for e in pending_edges
                 if e[0] in emitted_v and e[1] in emitted_v]
        ready += [("v", v) for v in pending_vertices]
        kind, item = ready[rng.randrange(len(ready))]
        if kind == "v":
            pending_vertices.remove(item)
            emitted_v.add(item)
            emit(pair(item, item))
        else:
            pending_edges.remove(item)
            a, b = item
            emit(pair(a, b) if rng.random() < 0.5 else pair(b, a))
    return out


def name_of_tree(tree, space="Tr"):
    """Characteristic name of a TreeGen (decidable membership per node code)."""
    return SpaceName(space, GeneratorBacked(
        lambda n: 1 if tree.contains(string_decode(n)) else 0),
        meta={"tree": tree})


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------

def truncate(name, fuel):
    """Finite graph decided by the first `fuel` positions of the name."""
    if name.space == "Gr":
        vertices = set()
        edges = []
        for n in range(fuel):
            if name.stream.eval(n) != 1:
                continue
            i, j = unpair(n)
            if i == j:
                vertices.add(i)
            else:
                vertices.add(i)
                vertices.add(j)
                edges.append((i, j))
        return FinGraph(vertices, edges)
    if name.space == "EGr":
        vertices = set()
        edges = []
        for n in range(fuel):
            v = name.stream.eval(n)
            if v == 0:
                continue
            i, j = unpair(v - 1)
            vertices.add(i)
            vertices.add(j)
            if i != j:
                edges.append((i, j))
        return FinGraph(vertices, edges)
    raise BadParam("truncate expects a graph name")


# ---------------------------------------------------------------------------
# Gr -> EGr (easy direction)
# ---------------------------------------------------------------------------

def _egr_step_factory(bit_at):
    """Synchronous transducer: output step n consumes input code n; queued
    emissions drain one per step, padding otherwise."""
    state = {"next_code": 0, "queue": [], "emitted": set(), "out": []}

    def advance():
        c = state["next_code"]
        state["next_code"] += 1
        if bit_at(c) != 1:
            return
        i, j = unpair(c)
        if i == j:
            if c not in state["emitted"]:
                state["emitted"].add(c)
                state["queue"].append(c)
        else:
            for v in (i, j):
                vc = pair(v, v)
                if vc not in state["emitted"]:
                    state["emitted"].add(vc)
                    state["queue"].append(vc)
            canon = pair(min(i, j), max(i, j))
            if canon not in state["emitted"]:
                state["emitted"].add(canon)
                state["queue"].append(canon)

    def step(n):
        while len(state["out"]) <= n:
            advance()
            if state["queue"]:
                state["out"].append(state["queue"].pop(0) + 1)
            else:
                state["out"].append(0)
        return state["out"][n]

    return step


def _egr_transducer_stream(gr_stream):
    return GeneratorBacked(_egr_step_factory(gr_stream.eval))


def gr_to_egr(name):
    if name.space != "Gr":
        raise BadParam("gr_to_egr expects a Gr name")
    s = name.stream
    meta = dict(name.meta)
    if isinstance(s, EventuallyConstant) and s.tail == 0:
        step = _egr_step_factory(s.eval)
        out = [step(n) for n in range(len(s.head))]
        while out and out[-1] == 0:
            out.pop()
        return SpaceName("EGr", EventuallyConstant(out, 0), meta=meta)
    return SpaceName("EGr", _egr_transducer_stream(s), meta=meta)


# ---------------------------------------------------------------------------
# EGr -> Gr: the injury construction
# ---------------------------------------------------------------------------

class IotaTrace:
    """Record of the injury construction: the stage maps' limit, first
    emission stages, and the injury log (stage, source vertex, old code,
    new code)."""

    def __init__(self):
        self.iota = {}
        self.first_emission = {}
        self.injuries = []
        self.stages_run = 0

    def injury_count(self, v):
        return sum(1 for (_, u, _, _) in self.injuries if u == v)

    def abandoned(self):
        """(old code, stage) pairs for codes left behind by an injury."""
        return [(old, s) for (s, _, old, _) in self.injuries]

    def image(self):
        return sorted(self.iota.values())


class _FConvert:
    def __init__(self, stream):
        self.stream = stream
        self.trace = IotaTrace()
        self.decided = {}
        self.edge_events = []  # (stage, u, w) in source labels
        self.stage = 0

    def _fresh(self):
        used = set(self.trace.iota.values())
        m = self.stage + 1
        while m in used:
            m += 1
        return m

    def _set(self, pos, bit):
        if pos not in self.decided:
            self.decided[pos] = bit

    def _add_vertex(self, u):
        if u in self.trace.iota:
            return
        m = self._fresh()
        self.decided[pair(m, m)] = 1
        self.trace.iota[u] = m
        self.trace.first_emission.setdefault(u, self.stage)

    def run_stage(self):
        s = self.stage
        v = self.stream.eval(s)
        if v != 0:
            u, w = unpair(v - 1)
            if u == w:
                self._add_vertex(u)
            else:
                self._add_vertex(u)
                self._add_vertex(w)
                self.edge_events.append((s, u, w))
                a, b = self.trace.iota[u], self.trace.iota[w]
                p1, p2 = pair(a, b), pair(b, a)
                if self.decided.get(p1) == 0 or self.decided.get(p2) == 0:
                    self._injure(u, w)
                else:
                    self.decided[p1] = 1
                    self.decided[p2] = 1
        # erase p up to stage s
        for i in range(s + 1):
            for j in range(s + 1):
                self._set(pair(i, j), 0)
        self.stage += 1

    def _injure(self, u, w):
        ku = self.trace.first_emission[u]
        kw = self.trace.first_emission[w]
        victim = w if ku < kw else u
        old = self.trace.iota[victim]
        m = self._fresh()
        self.decided[pair(m, m)] = 1
        self.trace.iota[victim] = m
        self.trace.injuries.append((self.stage, victim, old, m))
        for (_, x, y) in self.edge_events:
            if victim not in (x, y):
                continue
            other = y if x == victim else x
            if other not in self.trace.iota:
                continue
            c = self.trace.iota[other]
            if c == m:
                continue
            self.decided[pair(m, c)] = 1
            self.decided[pair(c, m)] = 1

    def run_until(self, stages):
        while self.stage < stages:
            self.run_stage()
        self.trace.stages_run = self.stage

    def bit(self, n):
        i, j = unpair(n)
        self.run_until(max(i, j) + 1)
        return self.decided.get(n, 0)


def f_convert(name):
    """Convert an enumeration name to a characteristic name.

    Returns (Gr SpaceName, IotaTrace). The trace's limit map picks out the
    vertex codes whose restriction is isomorphic to the enumerated graph;
    codes abandoned by injuries keep whatever finite degree they had.
    """
    if name.space != "EGr":
        raise BadParam("f_convert expects an EGr name")
    conv = _FConvert(name.stream)
    s = name.stream
    if isinstance(s, EventuallyConstant) and s.tail == 0:
        # after the prefix only padding arrives: the construction stabilizes
        conv.run_until(len(s.head))
        ones = sorted(p for p, b in conv.decided.items() if b == 1)
        top = (ones[-1] + 1) if ones else 0
        out = SpaceName("Gr", EventuallyConstant(
            [1 if conv.decided.get(c) == 1 else 0 for c in range(top)], 0),
            meta={"trace": conv.trace})
        return out, conv.trace
    out = SpaceName("Gr", GeneratorBacked(conv.bit), meta={"trace": conv.trace})
    return out, conv.trace


# ---------------------------------------------------------------------------
# Prompt connectivity relabeling (PC)
# ---------------------------------------------------------------------------

class _PCBuilder:
    """Stage machine: consume the input graph's vertices in label order and
    assign consecutive output labels so every output prefix is connected.
    A vertex not adjacent to the labeled region is spliced in along a
    connecting path (labels assigned from the labeled end outward)."""

    def __init__(self, name, fuel):
        self.g = None
        self.name = name
        self.fuel = fuel
        self.labels = {}      # source vertex -> output label
        self.order = []       # output label -> source vertex
        self.finite_bound = None
        s = name.stream
        if isinstance(s, EventuallyConstant) and s.tail == 0:
            self.finite_bound = len(s.head)  # codes beyond prefix are 0
        self.next_source = 0

    def _has_vertex(self, v):
        return self.name.stream.eval(pair(v, v)) == 1

    def _has_edge(self, a, b):
        return a != b and self.name.stream.eval(pair(a, b)) == 1

    def _next_unlabeled_vertex(self):
        v = self.next_source
        steps = 0
        while True:
            if self.finite_bound is not None and pair(v, v) >= self.finite_bound:
                return None
            if self._has_vertex(v) and v not in self.labels:
                self.next_source = v + 1
                return v
            v += 1
            steps += 1
            if steps > self.fuel:
                raise FuelExhausted("no further vertex found")

    def _assign(self, v):
        self.labels[v] = len(self.order)
        self.order.append(v)

    def _finite_top(self):
        """Exclusive upper bound on vertex labels for certified-finite input."""
        v = 0
        while pair(v, v) < self.finite_bound:
            v += 1
        return v

    def _connect_path(self, v):
        """BFS from v to the labeled region within growing vertex windows.
        Returns the path with the labeled endpoint first and v last."""
        for top in range(v + 2, v + 2 + self.fuel):
            last_window = False
            if self.finite_bound is not None:
                cap = self._finite_top()
                if top >= cap:
                    top, last_window = cap, True
            prev = {v: None}
            queue = [v]
            while queue:
                x = queue.pop(0)
                for y in range(top):
                    if y in prev or not self._has_vertex(y):
                        continue
                    if not self._has_edge(x, y):
                        continue
                    prev[y] = x
                    if y in self.labels:
                        path = []
                        cur = y
                        while cur is not None:
                            path.append(cur)
                            cur = prev[cur]
                        return path
                    queue.append(y)
            if last_window:
                break
        raise FuelExhausted("input not connected within fuel")

    def advance_stage(self):
        """Label one more source vertex (or a whole splice path). Returns
        False when the (certified finite) input is exhausted."""
        v = self._next_unlabeled_vertex()
        if v is None:
            return False
        if not self.order:
            self._assign(v)
            return True
        if any(self._has_edge(v, u) for u in self.labels):
            self._assign(v)
            return True
        path = self._connect_path(v)
        for x in path[1:]:
            if x not in self.labels:
                self._assign(x)
        return True

    def ensure_labels(self, count):
        while len(self.order) < count:
            if not self.advance_stage():
                return False
        return True

    def bit(self, n):
        a, b = unpair(n)
        exhausted = not self.ensure_labels(max(a, b) + 1)
        if a >= len(self.order) or b >= len(self.order):
            if exhausted:
                return 0
            return 0
        if a == b:
            return 1
        return 1 if self._has_edge(self.order[a], self.order[b]) else 0


def pc(name, fuel=10000):
    """Promptly-connected relabeling of a connected Gr name."""
    if name.space != "Gr":
        raise BadParam("pc expects a Gr name")
    builder = _PCBuilder(name, fuel)
    if builder.finite_bound is not None:
        while builder.advance_stage():
            pass
        n = len(builder.order)
        fin = FinGraph(range(n),
                       [(a, b) for a in range(n) for b in range(a + 1, n)
                        if builder._has_edge(builder.order[a], builder.order[b])])
        return name_of("Gr", fin)
    return SpaceName("Gr", GeneratorBacked(builder.bit),
                     meta={"builder": builder})
