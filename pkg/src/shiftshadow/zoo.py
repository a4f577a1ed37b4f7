"""Canonical shift fixtures, bundled definitions, and the related symbol maps.

Vertex ids and edge orders are fixed here so every derived object (automata,
enumerations, bridges, certificates) is stable across runs.
"""

from __future__ import annotations

import json
from importlib import resources

from .core import Window, Word, make_alphabet, trace
from .presentations import LabeledGraph, sft_from_forbidden, sofic_from_graph


def full_shift(size=2):
    """The full shift on `size` symbols (no forbidden words)."""
    alphabet = make_alphabet([str(i) for i in range(size)])
    return sft_from_forbidden(alphabet, [])


def golden_mean_shift():
    """Binary shift forbidding adjacent ones."""
    return sft_from_forbidden(make_alphabet(["0", "1"]), ["11"])


def even_shift():
    """Binary shift in which every maximal 0-run between two 1s has even length.

    Presented by the 3-edge graph v1 -1-> v1, v1 -0-> v2, v2 -0-> v1; the
    matching (infinite) forbidden family is {1 0^(2k+1) 1 : k >= 0}.
    """
    alphabet = make_alphabet(["0", "1"])
    graph = LabeledGraph(
        ("v1", "v2"),
        (
            ("v1", "v1", alphabet.index("1")),
            ("v1", "v2", alphabet.index("0")),
            ("v2", "v1", alphabet.index("0")),
        ),
    )
    return sofic_from_graph(alphabet, graph)


def two_chamber_shift():
    """Two loop vertices sharing symbol 0, with private markers 1 and 2.

    Its points never contain both markers, so the two chambers cannot see
    each other; the shift is sofic but has no mixing number.
    """
    alphabet = make_alphabet(["0", "1", "2"])
    graph = LabeledGraph(
        ("L", "R"),
        (
            ("L", "L", alphabet.index("1")),
            ("L", "L", alphabet.index("0")),
            ("R", "R", alphabet.index("2")),
            ("R", "R", alphabet.index("0")),
        ),
    )
    return sofic_from_graph(alphabet, graph)


def one_way_door_shift():
    """An even-like left component joined to an even-like right one by a one-way edge.

    Left walks read 0/1, right walks read 3/4, and the single symbol-2 edge
    crosses left to right with no way back: not mixing, not finite type, but
    quasi-finite type.
    """
    alphabet = make_alphabet(["0", "1", "2", "3", "4"])
    graph = LabeledGraph(
        ("v1", "v2", "v3", "v4"),
        (
            ("v2", "v2", alphabet.index("1")),
            ("v2", "v1", alphabet.index("0")),
            ("v1", "v2", alphabet.index("0")),
            ("v2", "v3", alphabet.index("2")),
            ("v3", "v3", alphabet.index("4")),
            ("v4", "v3", alphabet.index("3")),
            ("v3", "v4", alphabet.index("3")),
        ),
    )
    return sofic_from_graph(alphabet, graph)


def project_to_even(w):
    """Collapse a one-way-door word onto the even shift: 2,4 -> 1 and 3 -> 0."""
    table = {"0": "0", "1": "1", "2": "1", "3": "0", "4": "1"}
    src = w if isinstance(w, str) else w.text
    out = "".join(table[ch] for ch in src)
    if isinstance(w, str):
        return out
    return even_shift().alphabet.word(out)


def chamber_pair(po):
    """The two-point shadow set of a two-chamber pseudo-orbit.

    Point a pushes every nonzero trace symbol to marker 1, point b to
    marker 2; both are automatically allowed since each chamber carries 0
    plus its own marker.
    """
    alphabet = po.alphabet
    if tuple(alphabet.tokens) != ("0", "1", "2"):
        raise ValueError("chamber_pair expects the two-chamber alphabet 0/1/2")
    c = trace(po)
    zero = alphabet.index("0")
    one = alphabet.index("1")
    two = alphabet.index("2")
    a = tuple(zero if s == zero else one for s in c.word.symbols)
    b = tuple(zero if s == zero else two for s in c.word.symbols)
    return (Window(Word(alphabet, a), c.base), Window(Word(alphabet, b), c.base))


_BUILDERS = {
    "full2": lambda: full_shift(2),
    "full3": lambda: full_shift(3),
    "golden_mean": golden_mean_shift,
    "even": even_shift,
    "two_chamber": two_chamber_shift,
    "one_way_door": one_way_door_shift,
}


def builder_names():
    return sorted(_BUILDERS)


def build(name):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ValueError(f"unknown bundled shift {name!r}") from None


def bundled_definition(name):
    """The packaged JSON shift-definition for a bundled fixture."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown bundled shift {name!r}")
    path = resources.files("shiftshadow").joinpath("defs", f"{name}.json")
    return json.loads(path.read_text())
