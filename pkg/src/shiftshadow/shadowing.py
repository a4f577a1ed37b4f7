"""Shadow-pair constructions, verifiers, and the exhaustive set-search oracle.

The two-sided constructors build a pair of points from a validated
pseudo-orbit: each point copies the orbit's trace on an alternating family
of blocks and glues consecutive blocks with bridge words, so that around
every orbit index at least one of the two points reproduces the trace on a
radius-N window.  Block boundaries follow the arithmetic

    L_j = (5-6j)N   R_j = (6j-2)N     (first point)
    S_j = (2-6j)N   T_j = (6j-5)N     (second point)

with N > M and N > k, where M is the mixing (or quasi-finite-type) number
used to find bridges and 2**-k is the tracing accuracy.  The pseudo-orbit
must be certified at delta exponent 4N: that makes its trace equal to every
entry on a radius-4N window, which is what keeps all copied blocks inside
the language.

Everything here is finite-horizon.  The recursion runs until the scheduled
blocks overshoot the orbit horizon by a safety margin, the trace is extended
through the automaton where the outermost blocks need symbols beyond it, and
certificates only ever claim indices inside the real horizon.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import (
    AlphabetMismatchError,
    PseudoOrbit,
    Window,
    Word,
    agreement_radius,
    check_pseudo_orbit,
    shift_window,
    trace,
)


class BridgeNotFoundError(RuntimeError):
    """A constructor's bridge search failed.

    This refutes the number the construction was given (mixing or
    quasi-finite-type) at the failing context, which is carried in
    ``refutation`` for replay.
    """

    def __init__(self, refutation):
        self.refutation = refutation
        super().__init__("bridge search failed; the supplied number is refuted")


class BudgetExceededError(RuntimeError):
    """An exhaustive search would overrun its configured budget."""


@dataclass(frozen=True)
class BlockParams:
    """Dyadic translation of the constructors' parameter choices.

    block (N) is max(number+1, epsilon_exponent+1): agreement on the open
    radius-N window then implies distance below 2**-epsilon_exponent.  The
    delta exponent is 4N, the exact dyadic form of "d < delta forces
    agreement on [-4N, 4N]".
    """

    epsilon_exponent: int
    number: int
    block: int
    delta_exponent: int

    @classmethod
    def for_accuracy(cls, epsilon_exponent, number):
        if epsilon_exponent < 0:
            raise ValueError("epsilon exponent must be >= 0")
        if number < 1:
            raise ValueError("the mixing/qft number must be >= 1")
        n = max(number + 1, epsilon_exponent + 1)
        return cls(epsilon_exponent=epsilon_exponent, number=number,
                   block=n, delta_exponent=4 * n)


def first_block_left(n, j):
    """L_j = (5-6j)N."""
    return (5 - 6 * j) * n


def first_block_right(n, j):
    """R_j = (6j-2)N."""
    return (6 * j - 2) * n


def second_block_left(n, j):
    """S_j = (2-6j)N."""
    return (2 - 6 * j) * n


def second_block_right(n, j):
    """T_j = (6j-5)N."""
    return (6 * j - 5) * n


def specification_schedule(m, count):
    """First `count` rows of the staggered schedule for constant m.

    j_s = 2sm and k_s = j_s + m for the first point; p_0 = 0, p_s = k_s and
    q_s = j_{s+1} for the second.  The two interval families [j_s, k_s] and
    [p_s, q_s] tile the forward index line with gaps of length exactly m
    between consecutive blocks of the same family.
    """
    js = [2 * s * m for s in range(count)]
    ks = [j + m for j in js]
    ps = [0] + ks[1:]
    qs = [2 * (s + 1) * m for s in range(count)]
    return {"j": js, "k": ks, "p": ps, "q": qs}


@dataclass
class ShadowPair:
    """The constructed shadow set with its schedule and inserted bridges."""

    points: tuple
    variant: str
    epsilon_exponent: int
    number: int
    block: int
    delta_exponent: int
    schedule: dict
    bridges: list

    def to_json(self):
        return {
            "variant": self.variant,
            "epsilon_exponent": self.epsilon_exponent,
            "number": self.number,
            "block": self.block,
            "delta_exponent": self.delta_exponent,
            "points": [p.to_json() for p in self.points],
            "schedule": self.schedule,
            "bridges": self.bridges,
        }


@dataclass
class ShadowCertificate:
    """Per-index verification record for a candidate shadow set."""

    verdict: str  # "pass" | "clamped_pass" | "fail"
    epsilon_exponent: int
    horizon: tuple
    set_size: int
    size_bound: int | None
    diameter: dict
    table: list | None
    unverified: list
    first_failure: dict | None

    @property
    def passed(self):
        return self.verdict != "fail"

    def to_json(self):
        return {
            "kind": "shadowing",
            "verdict": self.verdict,
            "epsilon_exponent": self.epsilon_exponent,
            "horizon": list(self.horizon),
            "set_size": self.set_size,
            "size_bound": self.size_bound,
            "diameter": self.diameter,
            "unverified_indices": self.unverified,
            "first_failure": self.first_failure,
            "match_table": self.table,
        }


# -- trace extension ------------------------------------------------------


def extended_trace(X, po, need_lo, need_hi):
    """The pseudo-orbit trace, continued through the automaton to [need_lo, need_hi].

    Every window of the result with length <= 2K+1 is allowed: inside the
    real trace that is the pseudo-orbit guarantee, and each extension grows
    an allowed seed word (the outermost 2K+1 trace symbols), so windows
    reaching into the extension are subwords of an allowed word.
    """
    t = trace(po)
    guard = 2 * po.delta_exponent + 1
    symbols = list(t.word.symbols)
    base = t.base
    hi = base + len(symbols) - 1
    if need_hi > hi:
        seed_len = min(guard, len(symbols))
        seed = Word(po.alphabet, tuple(symbols[-seed_len:]))
        grown = X.extend_right(seed, need_hi - hi)
        symbols.extend(grown.symbols[seed_len:])
    if need_lo < base:
        seed_len = min(guard, len(symbols))
        seed = Word(po.alphabet, tuple(symbols[:seed_len]))
        grown = X.extend_left(seed, base - need_lo)
        symbols[0:0] = grown.symbols[: base - need_lo]
        base = need_lo
    return Window(Word(po.alphabet, tuple(symbols)), base)


# -- two-sided constructors ------------------------------------------------


def _rounds_needed(n, lo_fn, hi_fn, i_lo, i_hi):
    j = 1
    while hi_fn(n, j) < i_hi + 2 * n or lo_fn(n, j) > i_lo - 2 * n:
        j += 1
    return j


def _build_two_sided_point(X, c, n, rounds, lo_fn, hi_fn, qft, number):
    """Run the alternating block recursion for one point.

    Returns (window, bridges, agree_intervals); agree_intervals are the
    inclusive index blocks on which the point provably equals the trace.
    """
    lo1, hi1 = lo_fn(n, 1), hi_fn(n, 1)
    word = c.segment(lo1 + 1, hi1 - 1)
    agree = [(lo1 + 1, hi1 - 1)]
    bridges = []
    if qft:
        left_cap = c.segment(lo1 - n, lo1)
        right_cap = c.segment(hi1, hi1 + n)
    for j in range(1, rounds):
        lo_j, hi_j = lo_fn(n, j), hi_fn(n, j)
        lo_next, hi_next = lo_fn(n, j + 1), hi_fn(n, j + 1)
        if not qft:
            right_ctx = c.segment(hi_j + n, hi_next - 1)
            w_j = X.find_bridge(word, n, right_ctx)
            if w_j is None:
                raise BridgeNotFoundError({"kind": "mixing", "u": word.text,
                                           "n": n, "v": right_ctx.text})
            mid = word + w_j + right_ctx
            left_ctx = c.segment(lo_next + 1, lo_j - n)
            u_j = X.find_bridge(left_ctx, n, mid)
            if u_j is None:
                raise BridgeNotFoundError({"kind": "mixing", "u": left_ctx.text,
                                           "n": n, "v": mid.text})
            word = left_ctx + u_j + mid
            bridges.append({"base": hi_j, "word": w_j.text})
            bridges.append({"base": lo_j - n + 1, "word": u_j.text})
            agree.append((hi_j + n, hi_next - 1))
            agree.append((lo_next + 1, lo_j - n))
        else:
            right_far = c.segment(hi_j + n + 1, hi_next - 1)
            new_right_cap = c.segment(hi_next, hi_next + n)
            w_j = X.qft_bridge(left_cap + word, right_cap, right_far + new_right_cap)
            if w_j is None:
                raise BridgeNotFoundError({"kind": "qft",
                                           "u": (left_cap + word).text,
                                           "w": right_cap.text,
                                           "v": (right_far + new_right_cap).text})
            mid = word + w_j + right_far
            left_far = c.segment(lo_next + 1, lo_j - n - 1)
            new_left_cap = c.segment(lo_next - n, lo_next)
            u_j = X.qft_bridge(new_left_cap + left_far, left_cap, mid + new_right_cap)
            if u_j is None:
                raise BridgeNotFoundError({"kind": "qft",
                                           "u": (new_left_cap + left_far).text,
                                           "w": left_cap.text,
                                           "v": (mid + new_right_cap).text})
            word = left_far + u_j + mid
            bridges.append({"base": hi_j, "word": w_j.text})
            bridges.append({"base": lo_j - n, "word": u_j.text})
            agree.append((hi_j + n + 1, hi_next - 1))
            agree.append((lo_next + 1, lo_j - n - 1))
            left_cap, right_cap = new_left_cap, new_right_cap
    final_lo = lo_fn(n, rounds)
    window = Window(word, final_lo + 1)
    agree.sort()
    return window, bridges, agree


def _require_two_sided(po, params):
    if not po.two_sided:
        raise ValueError("this construction needs a two-sided pseudo-orbit")
    if po.delta_exponent < params.delta_exponent:
        raise ValueError(
            f"pseudo-orbit delta exponent {po.delta_exponent} below required {params.delta_exponent}")
    if po.radius < params.delta_exponent:
        raise ValueError(
            f"pseudo-orbit radius {po.radius} below required {params.delta_exponent}")


def _construct_two_sided(X, number, po, k, qft):
    params = BlockParams.for_accuracy(k, number)
    _require_two_sided(po, params)
    n = params.block
    i_lo, i_hi = po.base_index, po.last_index
    rounds_a = _rounds_needed(n, first_block_left, first_block_right, i_lo, i_hi)
    rounds_b = _rounds_needed(n, second_block_left, second_block_right, i_lo, i_hi)
    pad = n if qft else 0
    need_hi = max(first_block_right(n, rounds_a), second_block_right(n, rounds_b)) + pad
    need_lo = min(first_block_left(n, rounds_a), second_block_left(n, rounds_b)) - pad
    c = extended_trace(X, po, need_lo, need_hi)
    a, bridges_a, agree_a = _build_two_sided_point(
        X, c, n, rounds_a, first_block_left, first_block_right, qft, number)
    b, bridges_b, agree_b = _build_two_sided_point(
        X, c, n, rounds_b, second_block_left, second_block_right, qft, number)
    variant = "qft-two-sided" if qft else "mixing-two-sided"
    schedule = {
        "variant": variant,
        "block": n,
        "rounds": [rounds_a, rounds_b],
        "first_point_bounds": [[first_block_left(n, j), first_block_right(n, j)]
                               for j in range(1, rounds_a + 1)],
        "second_point_bounds": [[second_block_left(n, j), second_block_right(n, j)]
                                for j in range(1, rounds_b + 1)],
        "trace_agreement": {"first": [list(iv) for iv in agree_a],
                            "second": [list(iv) for iv in agree_b]},
    }
    bridges = ([dict(br, point=0) for br in bridges_a]
               + [dict(br, point=1) for br in bridges_b])
    return ShadowPair(points=(a, b), variant=variant,
                      epsilon_exponent=k, number=number, block=n,
                      delta_exponent=params.delta_exponent,
                      schedule=schedule, bridges=bridges)


def construct_pair_mixing(X, number, po, k):
    """Two-point shadow set for a two-sided pseudo-orbit, via a mixing number.

    Bridge words have length N; a bridge failure refutes ``number`` as a
    mixing number and surfaces the failing (u, n, v).
    """
    return _construct_two_sided(X, number, po, k, qft=False)


def construct_pair_qft(X, number, po, k):
    """Two-point shadow set via a quasi-finite-type number.

    Same block skeleton as the mixing construction, but each glue step
    replaces a length-(N+1) trace overlap with a word of equal length found
    by qft_bridge, preserving the surrounding contexts.
    """
    return _construct_two_sided(X, number, po, k, qft=True)


def construct_pair_mixing_forward(X, number, po, k):
    """Forward-orbit version: the block recursion proceeds rightward only."""
    params = BlockParams.for_accuracy(k, number)
    if po.two_sided:
        raise ValueError("this construction needs a forward pseudo-orbit")
    if po.base_index != 0:
        raise ValueError("forward pseudo-orbits start at index 0")
    if po.delta_exponent < params.delta_exponent:
        raise ValueError(
            f"pseudo-orbit delta exponent {po.delta_exponent} below required {params.delta_exponent}")
    if po.radius < params.delta_exponent:
        raise ValueError(
            f"pseudo-orbit radius {po.radius} below required {params.delta_exponent}")
    n = params.block
    i_hi = po.last_index

    def build(hi_fn):
        rounds = 1
        while hi_fn(n, rounds) < i_hi + 2 * n:
            rounds += 1
        c = extended_trace(X, po, 0, hi_fn(n, rounds) - 1)
        word = c.segment(0, hi_fn(n, 1) - 1)
        agree = [(0, hi_fn(n, 1) - 1)]
        bridges = []
        for j in range(1, rounds):
            hi_j, hi_next = hi_fn(n, j), hi_fn(n, j + 1)
            right_ctx = c.segment(hi_j + n, hi_next - 1)
            w_j = X.find_bridge(word, n, right_ctx)
            if w_j is None:
                raise BridgeNotFoundError({"kind": "mixing", "u": word.text,
                                           "n": n, "v": right_ctx.text})
            word = word + w_j + right_ctx
            bridges.append({"base": hi_j, "word": w_j.text})
            agree.append((hi_j + n, hi_next - 1))
        return Window(word, 0), bridges, agree, rounds

    a, bridges_a, agree_a, rounds_a = build(first_block_right)
    b, bridges_b, agree_b, rounds_b = build(second_block_right)
    schedule = {
        "variant": "forward",
        "block": n,
        "rounds": [rounds_a, rounds_b],
        "first_point_bounds": [first_block_right(n, j) for j in range(1, rounds_a + 1)],
        "second_point_bounds": [second_block_right(n, j) for j in range(1, rounds_b + 1)],
        "trace_agreement": {"first": [list(iv) for iv in agree_a],
                            "second": [list(iv) for iv in agree_b]},
    }
    bridges = ([dict(br, point=0) for br in bridges_a]
               + [dict(br, point=1) for br in bridges_b])
    return ShadowPair(points=(a, b), variant="forward",
                      epsilon_exponent=k, number=number, block=n,
                      delta_exponent=params.delta_exponent,
                      schedule=schedule, bridges=bridges)


def construct_pair_schedule(X, number, po, k):
    """Two-point shadow set from the staggered interval schedule.

    With schedule constant Ms = number + k + 1, the first point copies the
    trace on the blocks [j_s, k_s + k] for j_s = 2 s Ms, k_s = j_s + Ms; the
    second point uses p_0 = 0, p_s = k_s, q_s = j_{s+1}.  Gaps between
    consecutive extended blocks then have length exactly ``number``, so
    bridges are guaranteed by the mixing number.  The two block families
    jointly cover every forward index.
    """
    if po.two_sided:
        raise ValueError("the schedule construction needs a forward pseudo-orbit")
    if po.base_index != 0:
        raise ValueError("forward pseudo-orbits start at index 0")
    if number < 1:
        raise ValueError("the mixing number must be >= 1")
    m_sched = number + k + 1
    k_req = 2 * m_sched + k
    if po.delta_exponent < k_req:
        raise ValueError(
            f"pseudo-orbit delta exponent {po.delta_exponent} below required {k_req}")
    i_hi = po.last_index
    c = trace(po)

    def j_of(s):
        return 2 * s * m_sched

    def k_of(s):
        return j_of(s) + m_sched

    def p_of(s):
        return 0 if s == 0 else k_of(s)

    def q_of(s):
        return j_of(s + 1)

    def build(starts, stops):
        """Copy c on [starts(s), stops(s) + k] and bridge the gaps."""
        word = c.segment(starts(0), stops(0) + k)
        bridges = []
        blocks = [(starts(0), stops(0))]
        s = 1
        while starts(s) <= i_hi:
            block = c.segment(starts(s), stops(s) + k)
            gap = starts(s) - (stops(s - 1) + k) - 1
            w = X.find_bridge(word, gap, block)
            if w is None:  # pragma: no cover - gap == number is guaranteed
                raise BridgeNotFoundError({"kind": "mixing", "u": word.text,
                                           "n": gap, "v": block.text})
            bridges.append({"base": stops(s - 1) + k + 1, "word": w.text})
            word = word + w + block
            blocks.append((starts(s), stops(s)))
            s += 1
        if len(word) < i_hi + k + 1:
            word = X.extend_right(word, i_hi + k + 1 - len(word))
        return Window(word, 0), bridges, blocks

    z, bridges_z, blocks_z = build(j_of, k_of)
    w, bridges_w, blocks_w = build(p_of, q_of)
    schedule = {
        "variant": "spec-schedule",
        "schedule_constant": m_sched,
        "first_point_blocks": [list(b) for b in blocks_z],
        "second_point_blocks": [list(b) for b in blocks_w],
    }
    bridges = ([dict(br, point=0) for br in bridges_z]
               + [dict(br, point=1) for br in bridges_w])
    return ShadowPair(points=(z, w), variant="spec-schedule",
                      epsilon_exponent=k, number=number, block=m_sched,
                      delta_exponent=k_req, schedule=schedule, bridges=bridges)


# -- verification ----------------------------------------------------------


def verify_shadow_set(X, po, members, k, check_diameter=True, size_bound=None,
                      include_table=True):
    """Check a candidate set against a pseudo-orbit at accuracy 2**-k.

    Verifies membership of every point in the language, the size bound when
    given, the pairwise diameter condition unless disabled, and that at
    every orbit index some member matches the entry at radius k after
    shifting.  Indices (or pairs) whose windows are too short to decide are
    reported as unverified and cap the verdict at "clamped_pass".
    """
    members = list(members)
    if not members:
        raise ValueError("empty candidate set")
    one_sided = not po.two_sided
    for mwin in members:
        if mwin.word.alphabet != po.alphabet:
            raise AlphabetMismatchError("candidate alphabet differs from the orbit's")
    horizon = (po.base_index, po.last_index)
    size_ok = size_bound is None or len(members) <= size_bound
    first_failure = None
    verdict = "pass"
    for idx, mwin in enumerate(members):
        if not X.is_allowed(mwin.word):
            first_failure = {"reason": "member_not_in_language", "member": idx}
            break
    if first_failure is None and not size_ok:
        first_failure = {"reason": "size_bound_exceeded",
                         "size": len(members), "bound": size_bound}

    diameter = {"required": bool(check_diameter), "checked": False,
                "min_radius": None, "ok": None}
    if first_failure is None and check_diameter:
        min_radius = math.inf
        failed_pair = False
        undecided_pair = False
        for x, y in itertools.combinations(members, 2):
            agr = agreement_radius(x, y, one_sided=one_sided)
            min_radius = min(min_radius, agr.radius)
            if agr.radius < k:
                if agr.clamped:
                    undecided_pair = True
                else:
                    failed_pair = True
        diameter["checked"] = True
        diameter["min_radius"] = None if min_radius is math.inf else min_radius
        if failed_pair:
            diameter["ok"] = False
            first_failure = {"reason": "diameter_too_large", "min_radius": min_radius}
        elif undecided_pair:
            diameter["ok"] = None
            verdict = "clamped_pass"
        else:
            diameter["ok"] = True

    table = [] if include_table else None
    unverified = []
    if first_failure is None:
        for i in po.indices():
            entry = po.entry(i)
            matched = None
            undecided = False
            radii = []
            for midx, mwin in enumerate(members):
                shifted = shift_window(mwin, i)
                if not shifted.covers(0):
                    undecided = True
                    radii.append(None)
                    continue
                agr = agreement_radius(shifted, entry, one_sided=one_sided)
                radii.append(agr.radius)
                if agr.radius >= k:
                    matched = (midx, agr)
                    break
                if agr.clamped:
                    undecided = True
            if matched is not None:
                if include_table:
                    midx, agr = matched
                    table.append({"index": i, "member": midx,
                                  "radius": agr.radius if agr.radius is not math.inf else "unbounded",
                                  "clamped": agr.clamped})
            elif undecided:
                unverified.append(i)
            else:
                first_failure = {"reason": "no_member_matches", "index": i,
                                 "radii": radii}
                break
    if first_failure is not None:
        verdict = "fail"
    elif unverified:
        verdict = "clamped_pass"
    return ShadowCertificate(
        verdict=verdict, epsilon_exponent=k, horizon=horizon,
        set_size=len(members), size_bound=size_bound, diameter=diameter,
        table=table, unverified=unverified, first_failure=first_failure)


# -- exhaustive oracle ------------------------------------------------------


@dataclass
class ShadowSearchResult:
    witness: list | None
    exhausted: bool
    candidate_words: int
    sets_enumerated: int
    sets_verified: int
    checked_indices: tuple
    set_size: int
    epsilon_exponent: int
    half_width: int
    diameter_required: bool

    def to_json(self):
        return {
            "kind": "shadow_search",
            "witness": [w.to_json() for w in self.witness] if self.witness else None,
            "exhausted": self.exhausted,
            "candidate_words": self.candidate_words,
            "sets_enumerated": self.sets_enumerated,
            "sets_verified": self.sets_verified,
            "checked_indices": list(self.checked_indices),
            "set_size": self.set_size,
            "epsilon_exponent": self.epsilon_exponent,
            "half_width": self.half_width,
            "diameter_required": self.diameter_required,
        }


def search_shadow_sets(X, po, set_size, k, half_width, check_diameter=True,
                       budget=10**6):
    """Ground-truth oracle: try every candidate set of at most set_size points.

    Candidates are all allowed words on [-h, h] (or [0, h] for forward
    orbits), each extendable to a point of the shift by essentiality.  A
    returned witness is the first qualifying set in size-then-lex order; an
    exhausted result proves no qualifying set shadows the orbit on the
    indices the half-width can decide.  Refuses to start past the budget.
    """
    if half_width < k:
        raise ValueError("half width must be at least the accuracy exponent")
    one_sided = not po.two_sided
    if one_sided:
        length = half_width + 1
        base = 0
        lo = max(po.base_index, 0)
        hi = min(po.last_index, half_width - k)
    else:
        length = 2 * half_width + 1
        base = -half_width
        lo = max(po.base_index, -(half_width - k))
        hi = min(po.last_index, half_width - k)
    if lo > hi:
        raise ValueError("half width too small to verify any orbit index")
    count = X.count_words_of_length(length)
    total_sets = sum(math.comb(count, s) for s in range(1, set_size + 1))
    if total_sets > budget:
        raise BudgetExceededError(
            f"{total_sets} candidate sets exceed the budget of {budget}")
    words = X.words_of_length(length)

    checked = list(range(lo, hi + 1))
    full = (1 << len(checked)) - 1
    cands = [Window(w, base) for w in words]
    masks = []
    sigs = []
    for cand in cands:
        m = 0
        for t, i in enumerate(checked):
            shifted = shift_window(cand, i)
            agr = agreement_radius(shifted, po.entry(i), one_sided=one_sided)
            if agr.radius >= k:
                m |= 1 << t
        masks.append(m)
        # time-0 signature at radius k: equal signatures <=> pair diameter ok
        if one_sided:
            sigs.append(cand.word.symbols[: k + 1])
        else:
            mid = half_width
            sigs.append(cand.word.symbols[mid - k : mid + k + 1])

    sets_enumerated = 0
    sets_verified = 0
    witness = None
    for size in range(1, set_size + 1):
        for combo in itertools.combinations(range(count), size):
            sets_enumerated += 1
            if check_diameter and size > 1:
                sig0 = sigs[combo[0]]
                if any(sigs[c] != sig0 for c in combo[1:]):
                    continue
            sets_verified += 1
            acc = 0
            for c in combo:
                acc |= masks[c]
            if acc == full:
                witness = [cands[c] for c in combo]
                break
        if witness:
            break
    return ShadowSearchResult(
        witness=witness, exhausted=witness is None,
        candidate_words=count, sets_enumerated=sets_enumerated,
        sets_verified=sets_verified, checked_indices=(lo, hi),
        set_size=set_size, epsilon_exponent=k, half_width=half_width,
        diameter_required=bool(check_diameter))


# -- pseudo-orbit generators -------------------------------------------------


def make_spliced_pseudo_orbit(X, anchors, switch_times, delta_exponent, radius,
                              horizon, two_sided=True):
    """Assemble a pseudo-orbit that follows each anchor in turn.

    Anchor m is active on [t_m, t_{m+1}); entry i is the active anchor's
    window around index i, rebased to the entry frame.  The result is
    validated, so a disagreement wider than the delta exponent at a switch
    raises a PseudoOrbitViolation.
    """
    i_lo, i_hi = horizon
    if len(anchors) != len(switch_times) + 1:
        raise ValueError("need exactly one more anchor than switch times")
    if any(not i_lo < t <= i_hi for t in switch_times):
        raise ValueError("switch times must lie inside the horizon")
    if sorted(switch_times) != list(switch_times) or len(set(switch_times)) != len(switch_times):
        raise ValueError("switch times must be strictly increasing")
    entries = []
    for i in range(i_lo, i_hi + 1):
        active = 0
        for t in switch_times:
            if i >= t:
                active += 1
        anchor = anchors[active]
        if two_sided:
            entries.append(Window(anchor.segment(i - radius, i + radius), -radius))
        else:
            entries.append(Window(anchor.segment(i, i + radius), 0))
    return check_pseudo_orbit(entries, delta_exponent, X,
                              base_index=i_lo, two_sided=two_sided)


def random_pseudo_orbit(X, rng, horizon, delta_exponent, radius=None,
                        switches=2, two_sided=True):
    """A seeded random spliced pseudo-orbit.

    Each splice re-anchors onto a fresh random point that agrees with the
    previous anchor on the radius-K block around the switch time, which is
    exactly the validity requirement.
    """
    K = delta_exponent
    radius = K if radius is None else radius
    if radius < K:
        raise ValueError("radius must be at least the delta exponent")
    i_lo, i_hi = horizon
    span_lo = i_lo - radius if two_sided else i_lo
    span_hi = i_hi + radius
    span_len = span_hi - span_lo + 1

    def full_span_anchor_from(core_word, core_lo):
        w = core_word
        w = X.extend_right(w, span_hi - (core_lo + len(core_word) - 1), rng=rng)
        w = X.extend_left(w, core_lo - span_lo, rng=rng)
        return Window(w, span_lo)

    anchors = [Window(X.random_walk_word(span_len, rng), span_lo)]
    max_switches = max(0, min(switches, i_hi - i_lo))
    times = sorted(rng.sample(range(i_lo + 1, i_hi + 1), max_switches)) if max_switches else []
    for t in times:
        prev = anchors[-1]
        core_lo = max(span_lo, t - K)
        core = prev.segment(core_lo, t + K)
        anchors.append(full_span_anchor_from(core, core_lo))
    return make_spliced_pseudo_orbit(X, anchors, times, K, radius,
                                     horizon, two_sided=two_sided)
