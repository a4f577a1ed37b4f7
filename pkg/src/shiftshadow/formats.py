"""Parsers for the on-the-wire JSON formats (shift definitions, pseudo-orbits,
window lists).  Serialization lives on the objects themselves."""

from __future__ import annotations

from .core import Window, check_pseudo_orbit
from .presentations import presentation_from_definition


def window_from_json(alphabet, data):
    return Window(alphabet.word(data["symbols"]), int(data["base"]))


def windows_from_json(alphabet, data):
    return [window_from_json(alphabet, row) for row in data]


def pseudo_orbit_from_json(X, data):
    """Validate the pseudo-orbit file format against a presentation.

    Format: {"alphabet": [...], "delta_exponent": K, "radius": R,
    "base_index": i, "sided": "two"|"forward", "entries": [[tokens]...]};
    two-sided entries cover [-R, R], forward ones [0, R].
    """
    tokens = tuple(str(t) for t in data["alphabet"])
    if tokens != X.alphabet.tokens:
        raise ValueError("pseudo-orbit alphabet differs from the shift definition's")
    two_sided = data.get("sided", "two") != "forward"
    radius = int(data["radius"])
    base = -radius if two_sided else 0
    entries = [Window(X.alphabet.word(row), base) for row in data["entries"]]
    return check_pseudo_orbit(entries, int(data["delta_exponent"]), X,
                              base_index=int(data.get("base_index", 0)),
                              two_sided=two_sided)


__all__ = [
    "pseudo_orbit_from_json",
    "presentation_from_definition",
    "window_from_json",
    "windows_from_json",
]
