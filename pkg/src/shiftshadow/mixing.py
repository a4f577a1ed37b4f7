"""Mixing numbers, non-mixing witnesses, and quasi-finite-type certificates.

A mixing number M promises a connecting word of every length n >= M between
any two allowed words.  The quantifier ranges over the whole (infinite)
language, so the verifiers here are honest semi-decisions: brute force over
all words up to a length bound and all bridge lengths up to n_max, with the
bounds recorded inside every positive certificate.  Negative certificates
are unconditional and replayable.

The one constructive path is the primitivity exponent: the least e at which
every ordered vertex pair of the essential graph is joined by paths of every
length >= e.  Such an e is a genuine mixing number for the presented shift
(end states of u reach start states of v at every such length).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Word


@dataclass
class MixingCertificate:
    m: int
    passed: bool
    method: str
    length_bound: int
    n_max: int
    witness: dict | None = None

    def to_json(self):
        return {
            "kind": "mixing",
            "m": self.m,
            "verdict": "pass" if self.passed else "fail",
            "method": self.method,
            "bounds": {"length_bound": self.length_bound, "n_max": self.n_max},
            "scope": "verified at the stated bounds only" if self.passed else "unconditional counterexample",
            "witness": self.witness,
        }


@dataclass
class QftCertificate:
    m: int
    passed: bool
    length_bound: int
    n_max: int
    witness: dict | None = None

    def to_json(self):
        return {
            "kind": "quasi_finite_type",
            "m": self.m,
            "verdict": "pass" if self.passed else "fail",
            "bounds": {"length_bound": self.length_bound, "n_max": self.n_max},
            "scope": "verified at the stated bounds only" if self.passed else "unconditional counterexample",
            "witness": self.witness,
        }


@dataclass
class NonmixingWitness:
    """A pair (u, v) that defeats every bridge length simultaneously.

    No vertex reachable from an end state of u starts a walk labeled v, so
    u w v is forbidden for every w; the certificate is valid beyond any
    search bound.
    """

    u: str
    v: str
    reachable: tuple = field(default=())
    v_starts: tuple = field(default=())

    def to_json(self):
        return {
            "u": self.u,
            "v": self.v,
            "reachable_from_u": [str(x) for x in self.reachable],
            "v_start_vertices": [str(x) for x in self.v_starts],
        }


def default_n_max(X, m):
    """m + |V| + longest forbidden word: path-length sets are eventually
    periodic with period <= |V|, so a failure beyond this window would
    already recur inside it."""
    forb = X.source.get("forbidden", []) if X.source.get("kind") == "sft" else []
    longest = max((len(f) for f in forb), default=0)
    return m + X.vertex_count + longest


def primitivity_exponent(X):
    """Least e within the Wielandt bound with all vertex pairs joined at
    every length in [e, e + |V|]; None when the graph is not primitive."""
    n = X.vertex_count
    bound = (n - 1) ** 2 + 1
    masks = [X.step_any(1 << i) for i in range(n)]  # row i of the adjacency power
    for e in range(1, bound + n + 1):
        if e > 1:
            masks = [X.step_any(m) for m in masks]
        if all(m == X.full_mask for m in masks):
            if e > bound:
                return None
            # persistence check for the certificate; positivity propagates in
            # an essential graph, so this cannot fail
            probe = list(masks)
            for _ in range(n):
                probe = [X.step_any(m) for m in probe]
                if not all(m == X.full_mask for m in probe):  # pragma: no cover
                    return None
            return e
    return None


def _reach_closure(X, mask):
    seen = mask
    frontier = mask
    while frontier:
        nxt = X.step_any(frontier) & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _bridge_layers(X, q_mask, n_max):
    """layers[r] = vertices from which a length-r path reaches q_mask."""
    layers = [q_mask]
    for _ in range(n_max):
        layers.append(X.pre_any(layers[-1]))
    return layers


def verify_mixing_number(X, m, length_bound=6, n_max=None):
    """Brute-force the mixing-number condition at the stated bounds.

    Checks every allowed u, v with lengths <= length_bound and every
    n in [m, n_max]; the first failing triple (loop order: u, then v, then n)
    becomes the witness.  A pass only certifies the bounds tried.
    """
    if m < 1:
        raise ValueError("a mixing number is a positive integer")
    if n_max is None:
        n_max = default_n_max(X, m)
    if n_max < m:
        raise ValueError("n_max must be at least m")
    words = X.words_up_to(length_bound)
    end_mask = {}
    start_mask = {}
    for w in words:
        end_mask[w.symbols] = X.run_mask(X.full_mask, w.symbols)
        start_mask[w.symbols] = X.back_run_mask(X.full_mask, w.symbols)
    layer_cache = {}

    def layers_for(q):
        if q not in layer_cache:
            layer_cache[q] = _bridge_layers(X, q, n_max)
        return layer_cache[q]

    # first failing (v, n) for a given end-state set, scanning v then n
    inner_cache = {}

    def first_failure(p):
        if p in inner_cache:
            return inner_cache[p]
        found = None
        for v in words:
            q = start_mask[v.symbols]
            layers = layers_for(q)
            for n in range(m, n_max + 1):
                if not p & layers[n]:
                    found = (v, n)
                    break
            if found:
                break
        inner_cache[p] = found
        return found

    for u in words:
        p = end_mask[u.symbols]
        fail = first_failure(p)
        if fail:
            v, n = fail
            return MixingCertificate(
                m=m, passed=False, method="brute",
                length_bound=length_bound, n_max=n_max,
                witness={"u": u.text, "v": v.text, "n": n},
            )
    return MixingCertificate(m=m, passed=True, method="brute",
                             length_bound=length_bound, n_max=n_max)


def is_nonmixing_pair(X, u, v):
    """Replay check: u defeats v at every bridge length."""
    u, v = X.word(u), X.word(v)
    p = X.run_mask(X.full_mask, u.symbols)
    q = X.back_run_mask(X.full_mask, v.symbols)
    if not p or not q:
        raise ValueError("witness words must be allowed")
    return _reach_closure(X, p) & q == 0


def find_nonmixing_witness(X, length_bound=3):
    """Search for (u, v) whose reachable set misses every start of v.

    Returns the first witness in length-then-lex order over u then v, or
    None (e.g. when the graph is strongly connected).
    """
    words = X.words_up_to(length_bound)
    reach_cache = {}
    for u in words:
        p = X.run_mask(X.full_mask, u.symbols)
        reach = reach_cache.get(p)
        if reach is None:
            reach = _reach_closure(X, p)
            reach_cache[p] = reach
        if reach == X.full_mask:
            continue
        for v in words:
            q = X.back_run_mask(X.full_mask, v.symbols)
            if reach & q == 0:
                return NonmixingWitness(
                    u=u.text, v=v.text,
                    reachable=tuple(sorted(X.vertices_of(reach), key=str)),
                    v_starts=tuple(sorted(X.vertices_of(q), key=str)),
                )
    return None


def verify_qft_number(X, m, length_bound=6, n_max=None):
    """Brute-force the quasi-finite-type condition at the stated bounds.

    For every allowed u, v (lengths <= length_bound) and every n in
    [m, n_max]: whenever some w of length n has uw and wv allowed, some z of
    the same length must make uzv allowed.  z-existence depends only on the
    end states of u, the start states of v, and n, so w is only enumerated
    when z is missing, exactly to exhibit a counterexample.
    """
    if m < 1:
        raise ValueError("a quasi-finite-type number is a positive integer")
    if n_max is None:
        n_max = default_n_max(X, m)
    if n_max < m:
        raise ValueError("n_max must be at least m")
    words = X.words_up_to(length_bound)
    layer_cache = {}

    def layers_for(q):
        if q not in layer_cache:
            layer_cache[q] = _bridge_layers(X, q, n_max)
        return layer_cache[q]

    witness_cache = {}

    def qualifying_word(p, q, n):
        """Least w of length n with uw and wv allowed, for end/start sets p, q."""
        key = (p, q, n)
        if key in witness_cache:
            return witness_cache[key]
        found = None
        prefix = []

        def grow(a_mask, b_mask, depth):
            nonlocal found
            if found is not None:
                return
            if depth == n:
                if b_mask & q:
                    found = tuple(prefix)
                return
            for sym in range(X.alphabet.size):
                a_next = X.step_mask(a_mask, sym)
                if not a_next:
                    continue
                prefix.append(sym)
                grow(a_next, X.step_mask(b_mask, sym), depth + 1)
                prefix.pop()
                if found is not None:
                    return

        grow(p, X.full_mask, 0)
        witness_cache[key] = found
        return found

    pair_cache = {}

    def first_failure(p, q):
        key = (p, q)
        if key in pair_cache:
            return pair_cache[key]
        layers = layers_for(q)
        found = None
        for n in range(m, n_max + 1):
            if p & layers[n]:
                continue  # a z exists, every qualifying w is fine
            w = qualifying_word(p, q, n)
            if w is not None:
                found = (w, n)
                break
        pair_cache[key] = found
        return found

    for u in words:
        p = X.run_mask(X.full_mask, u.symbols)
        for v in words:
            q = X.back_run_mask(X.full_mask, v.symbols)
            fail = first_failure(p, q)
            if fail:
                w_syms, n = fail
                w = Word(X.alphabet, w_syms)
                return QftCertificate(
                    m=m, passed=False, length_bound=length_bound, n_max=n_max,
                    witness={"u": u.text, "w": w.text, "v": v.text, "n": n},
                )
    return QftCertificate(m=m, passed=True, length_bound=length_bound, n_max=n_max)


def qft_number_search(X, length_bound=6, n_max=None, m_max=8):
    """Least m <= m_max passing verify_qft_number at the bounds, or None.

    The result is a bounded-verification estimate, not a proof of
    minimality over the infinite language.
    """
    for m in range(1, m_max + 1):
        cert = verify_qft_number(X, m, length_bound=length_bound, n_max=n_max)
        if cert.passed:
            return m, cert
    return None, None
