import warnings

import pytest

from shiftshadow import zoo

warnings.filterwarnings("ignore", message=".*starlette.testclient.*")


@pytest.fixture(scope="session")
def even():
    return zoo.even_shift()


@pytest.fixture(scope="session")
def golden():
    return zoo.golden_mean_shift()


@pytest.fixture(scope="session")
def full2():
    return zoo.full_shift(2)


@pytest.fixture(scope="session")
def chambers():
    return zoo.two_chamber_shift()


@pytest.fixture(scope="session")
def door():
    return zoo.one_way_door_shift()


# independent oracles, deliberately written without the package's automata


def naive_forbidden_scan(text, forbidden):
    return not any(f in text for f in forbidden)


def even_scan(text):
    """Reject an odd 0-run strictly between two 1s."""
    ones = [i for i, ch in enumerate(text) if ch == "1"]
    for a, b in zip(ones, ones[1:]):
        run = b - a - 1
        if run > 0 and run % 2 == 1:
            return False
    return True


def walk_scan(graph, alphabet, text):
    """Does some edge walk of the raw graph read this label sequence?"""
    word = [alphabet.index(ch) for ch in text]
    step = {}
    for src, dst, sym in graph.edges:
        step.setdefault((src, sym), []).append(dst)
    frontier = set(graph.vertices)
    for sym in word:
        frontier = {d for v in frontier for d in step.get((v, sym), [])}
        if not frontier:
            return False
    return True
