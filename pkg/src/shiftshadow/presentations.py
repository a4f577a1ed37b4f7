"""Shift-space presentations and the compiled follower-set automaton.

A presentation is either a finite forbidden-word set (finite type) or a
labeled graph (sofic).  Both compile to the same deterministic machine:
states are nonempty vertex subsets reachable from the full vertex set, and
a word is allowed exactly when running it from the full set never dies.
Vertex subsets are stored as bitmasks, so all queries are cheap even inside
the long construction loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import AlphabetMismatchError, Alphabet, Word, make_alphabet


class EmptyShiftError(ValueError):
    """The presentation trims to nothing: it presents the empty shift."""


class WordNotAllowedError(ValueError):
    """An operation required an allowed word but was given a forbidden one."""


@dataclass(frozen=True)
class LabeledGraph:
    """A directed graph with symbol-index labels on the edges.

    Vertex ids are arbitrary hashables; edge order is preserved so that the
    compiled machines (and everything derived from them) are reproducible.
    """

    vertices: tuple
    edges: tuple  # (src, dst, symbol index)

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for src, dst, _ in self.edges:
            if src not in vset or dst not in vset:
                raise ValueError(f"edge ({src}, {dst}) references a missing vertex")


def essentialize(graph):
    """Trim vertices with no outgoing or no incoming edge until none remain.

    The result (possibly empty) is the maximal subgraph in which every
    finite walk extends to a bi-infinite one.
    """
    alive = set(graph.vertices)
    while True:
        has_out = {src for src, dst, _ in graph.edges if src in alive and dst in alive}
        has_in = {dst for src, dst, _ in graph.edges if src in alive and dst in alive}
        dead = {v for v in alive if v not in has_out or v not in has_in}
        if not dead:
            break
        alive -= dead
    vertices = tuple(v for v in graph.vertices if v in alive)
    edges = tuple(e for e in graph.edges if e[0] in alive and e[1] in alive)
    return LabeledGraph(vertices, edges)


class ShiftPresentation:
    """A compiled shift space: essential labeled graph plus subset automaton."""

    def __init__(self, alphabet, graph, source):
        graph = essentialize(graph)
        if not graph.vertices:
            raise EmptyShiftError("presentation is empty after essentialization")
        self.alphabet = alphabet
        self.graph = graph
        self.source = source
        n = len(graph.vertices)
        self._vindex = {v: i for i, v in enumerate(graph.vertices)}
        # per-symbol successor/predecessor bitmasks per vertex
        self._succ = [[0] * n for _ in range(alphabet.size)]
        self._pred = [[0] * n for _ in range(alphabet.size)]
        self._succ_any = [0] * n
        self._pred_any = [0] * n
        for src, dst, sym in graph.edges:
            si, di = self._vindex[src], self._vindex[dst]
            self._succ[sym][si] |= 1 << di
            self._pred[sym][di] |= 1 << si
            self._succ_any[si] |= 1 << di
            self._pred_any[di] |= 1 << si
        self.full_mask = (1 << n) - 1
        self._step_cache = {}

    # -- mask plumbing -------------------------------------------------

    @property
    def vertex_count(self):
        return len(self.graph.vertices)

    def mask_of(self, vertices):
        m = 0
        for v in vertices:
            m |= 1 << self._vindex[v]
        return m

    def vertices_of(self, mask):
        return frozenset(v for v, i in self._vindex.items() if mask >> i & 1)

    def _bits(self, mask):
        i = 0
        while mask:
            if mask & 1:
                yield i
            mask >>= 1
            i += 1

    def step_mask(self, mask, sym):
        key = (mask, sym)
        out = self._step_cache.get(key)
        if out is None:
            out = 0
            col = self._succ[sym]
            for i in self._bits(mask):
                out |= col[i]
            self._step_cache[key] = out
        return out

    def back_step_mask(self, mask, sym):
        out = 0
        col = self._pred[sym]
        for i in self._bits(mask):
            out |= col[i]
        return out

    def step_any(self, mask):
        out = 0
        for i in self._bits(mask):
            out |= self._succ_any[i]
        return out

    def pre_any(self, mask):
        out = 0
        for i in self._bits(mask):
            out |= self._pred_any[i]
        return out

    def run_mask(self, mask, symbols):
        for s in symbols:
            if not mask:
                return 0
            mask = self.step_mask(mask, s)
        return mask

    def back_run_mask(self, mask, symbols):
        for s in reversed(symbols):
            if not mask:
                return 0
            mask = self.back_step_mask(mask, s)
        return mask

    def word(self, w):
        return self.alphabet.word(w)

    # -- language queries ----------------------------------------------

    def is_allowed(self, w):
        """Membership of w in the language of the presented shift."""
        w = self.word(w)
        return self.run_mask(self.full_mask, w.symbols) != 0

    def end_states(self, w):
        """Vertices at which some walk labeled w terminates."""
        w = self.word(w)
        mask = self.run_mask(self.full_mask, w.symbols)
        if not mask:
            raise WordNotAllowedError(f"word {w.text!r} is not allowed")
        return self.vertices_of(mask)

    def start_states(self, w):
        """Vertices at which some walk labeled w begins."""
        w = self.word(w)
        mask = self.back_run_mask(self.full_mask, w.symbols)
        if not mask:
            raise WordNotAllowedError(f"word {w.text!r} is not allowed")
        return self.vertices_of(mask)

    def words_of_length(self, n):
        """All allowed words of length n, lexicographically sorted."""
        if n < 0:
            raise ValueError("word length must be >= 0")
        out = []
        prefix = []

        def grow(mask, depth):
            if depth == n:
                out.append(Word(self.alphabet, tuple(prefix)))
                return
            for sym in range(self.alphabet.size):
                nxt = self.step_mask(mask, sym)
                if nxt:
                    prefix.append(sym)
                    grow(nxt, depth + 1)
                    prefix.pop()

        grow(self.full_mask, 0)
        return out

    def words_up_to(self, max_len):
        """Allowed words of length 1..max_len in length-then-lex order."""
        out = []
        for n in range(1, max_len + 1):
            out.extend(self.words_of_length(n))
        return out

    def count_words_of_length(self, n):
        """|B_n| without enumeration (path counting on the deterministic machine)."""
        if n < 0:
            raise ValueError("word length must be >= 0")
        counts = {self.full_mask: 1}
        for _ in range(n):
            nxt = {}
            for mask, c in counts.items():
                for sym in range(self.alphabet.size):
                    out = self.step_mask(mask, sym)
                    if out:
                        nxt[out] = nxt.get(out, 0) + c
            counts = nxt
        return sum(counts.values())

    # -- bridges ---------------------------------------------------------

    def _backward_layers(self, target_mask, n):
        layers = [target_mask]
        for _ in range(n):
            prev = layers[-1]
            mask = 0
            for i in self._bits(prev):
                mask |= self._pred_any[i]
            layers.append(mask)
        return layers

    def _least_path_word(self, from_mask, n, to_mask):
        """Lexicographically least length-n label word of a path from_mask -> to_mask."""
        layers = self._backward_layers(to_mask, n)
        if not from_mask & layers[n]:
            return None
        symbols = []
        cur = from_mask & layers[n]
        for t in range(n):
            for sym in range(self.alphabet.size):
                nxt = self.step_mask(cur, sym) & layers[n - t - 1]
                if nxt:
                    symbols.append(sym)
                    cur = nxt
                    break
            else:  # pragma: no cover - layers guarantee a symbol exists
                return None
        return Word(self.alphabet, tuple(symbols))

    def find_bridge(self, u, n, v):
        """Least w with |w| = n and u w v allowed, or None when no such word exists."""
        if n < 0:
            raise ValueError("bridge length must be >= 0")
        u, v = self.word(u), self.word(v)
        p = self.run_mask(self.full_mask, u.symbols)
        if not p:
            raise WordNotAllowedError(f"word {u.text!r} is not allowed")
        q = self.back_run_mask(self.full_mask, v.symbols)
        if not q:
            raise WordNotAllowedError(f"word {v.text!r} is not allowed")
        return self._least_path_word(p, n, q)

    def qft_bridge(self, u, w, v):
        """Least z with |z| = |w| and u z v allowed, given uw and wv allowed.

        A None result at |w| >= M is exactly a counterexample to M being a
        quasi-finite-type number.
        """
        u, w, v = self.word(u), self.word(w), self.word(v)
        p = self.run_mask(self.full_mask, u.symbols)
        if not p:
            raise WordNotAllowedError(f"word {u.text!r} is not allowed")
        if not self.run_mask(p, w.symbols):
            raise WordNotAllowedError("uw is not allowed")
        q = self.back_run_mask(self.full_mask, v.symbols)
        if not q:
            raise WordNotAllowedError(f"word {v.text!r} is not allowed")
        if not self.run_mask(self.full_mask, w.symbols) & q:
            raise WordNotAllowedError("wv is not allowed")
        return self._least_path_word(p, len(w), q)

    # -- word extension ---------------------------------------------------

    def extend_right(self, w, count, rng=None):
        """Append count symbols keeping the word allowed (least choice, or random)."""
        w = self.word(w)
        mask = self.run_mask(self.full_mask, w.symbols)
        if not mask:
            raise WordNotAllowedError(f"word {w.text!r} is not allowed")
        symbols = list(w.symbols)
        for _ in range(count):
            options = [s for s in range(self.alphabet.size) if self.step_mask(mask, s)]
            sym = options[0] if rng is None else rng.choice(options)
            symbols.append(sym)
            mask = self.step_mask(mask, sym)
        return Word(self.alphabet, tuple(symbols))

    def extend_left(self, w, count, rng=None):
        """Prepend count symbols keeping the word allowed (least choice, or random)."""
        w = self.word(w)
        mask = self.back_run_mask(self.full_mask, w.symbols)
        if not mask:
            raise WordNotAllowedError(f"word {w.text!r} is not allowed")
        symbols = list(w.symbols)
        for _ in range(count):
            options = [s for s in range(self.alphabet.size) if self.back_step_mask(mask, s)]
            sym = options[0] if rng is None else rng.choice(options)
            symbols.insert(0, sym)
            mask = self.back_step_mask(mask, sym)
        return Word(self.alphabet, tuple(symbols))

    def random_walk_word(self, length, rng):
        """The label word of a random walk of the given length."""
        starts = sorted(self.graph.vertices, key=str)
        v = rng.choice(starts)
        out_edges = {}
        for src, dst, sym in self.graph.edges:
            out_edges.setdefault(src, []).append((dst, sym))
        symbols = []
        for _ in range(length):
            dst, sym = rng.choice(out_edges[v])
            symbols.append(sym)
            v = dst
        return Word(self.alphabet, tuple(symbols))

    def definition(self):
        """The JSON shift-definition form of this presentation."""
        if self.source.get("kind") == "sft":
            return {
                "alphabet": list(self.alphabet.tokens),
                "kind": "sft",
                "forbidden": list(self.source.get("forbidden", [])),
            }
        return {
            "alphabet": list(self.alphabet.tokens),
            "kind": "sofic",
            "vertices": [str(v) for v in self.graph.vertices],
            "edges": [[str(s), str(d), self.alphabet.tokens[sym]] for s, d, sym in self.graph.edges],
        }


def sofic_from_graph(alphabet, graph):
    """Compile a labeled graph into a presentation of its sofic shift."""
    return ShiftPresentation(alphabet, graph, {"kind": "sofic"})


def sft_from_forbidden(alphabet, forbidden):
    """Compile a finite forbidden-word set into a de Bruijn style presentation.

    Vertices are the allowed (m-1)-blocks for m the longest forbidden length
    (a single anonymous vertex when m <= 1); the edge reading symbol s out of
    block b exists when the m-block b+s contains no forbidden word.
    """
    words = [alphabet.word(f) for f in forbidden]
    if any(len(w) == 0 for w in words):
        raise ValueError("forbidden words must have length >= 1")
    forb = {w.symbols for w in words}
    m = max((len(w) for w in words), default=0)

    if m <= 1:
        allowed = [s for s in range(alphabet.size) if (s,) not in forb]
        if not allowed:
            raise EmptyShiftError("every symbol is forbidden")
        edges = tuple(("*", "*", s) for s in allowed)
        graph = LabeledGraph(("*",), edges)
    else:
        def clean(block):
            return not any(
                block[i : i + len(f)] == f
                for f in forb
                for i in range(len(block) - len(f) + 1)
            )

        blocks = [b for b in itertools.product(range(alphabet.size), repeat=m - 1) if clean(b)]
        edges = []
        for b in blocks:
            for s in range(alphabet.size):
                full = b + (s,)
                if any(full[len(full) - len(f) :] == f for f in forb):
                    continue
                nxt = full[1:]
                if clean(nxt):
                    edges.append((b, nxt, s))
        graph = LabeledGraph(tuple(blocks), tuple(edges))

    source = {"kind": "sft", "forbidden": [alphabet.word(f).text for f in forbidden]}
    try:
        return ShiftPresentation(alphabet, graph, source)
    except EmptyShiftError:
        raise EmptyShiftError("forbidden set leaves no bi-infinite point") from None


def presentation_from_definition(defn):
    """Build a presentation from the JSON shift-definition format."""
    alphabet = make_alphabet(defn["alphabet"])
    kind = defn.get("kind")
    if kind == "sft":
        return sft_from_forbidden(alphabet, defn.get("forbidden", []))
    if kind == "sofic":
        vertices = tuple(str(v) for v in defn["vertices"])
        edges = []
        for src, dst, label in defn["edges"]:
            sym = label if isinstance(label, int) else alphabet.index(str(label))
            edges.append((str(src), str(dst), sym))
        return sofic_from_graph(alphabet, LabeledGraph(vertices, tuple(edges)))
    raise ValueError(f"unknown shift definition kind {kind!r}")
