import os

import pytest

from gsplines import (
    BasicOpen,
    FactoredElement,
    RingDescriptor,
    integer_factors,
    make_factor,
    normalize,
    parse_element,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


ZZ = RingDescriptor.integers()
QXY = RingDescriptor.rational_polynomials("x", "y")
QX = RingDescriptor.rational_polynomials("x")


def int_label(n):
    """Label generated by n, split into prime factors; 0 means the zero ideal."""
    if n == 0:
        return FactoredElement.zero()
    return FactoredElement(integer_factors(n, ZZ))


def int_graph(vertices, edges):
    """edges: list of (u, v, n) with integer label generators."""
    return normalize(ZZ, vertices, [(u, v, int_label(n)) for u, v, n in edges])


@pytest.fixture
def triangle():
    return int_graph(["u", "v", "w"], [("u", "v", 3), ("v", "w", 5), ("u", "w", 7)])


@pytest.fixture
def path_graph():
    return int_graph(["u", "v", "w"], [("u", "v", 3), ("v", "w", 5)])


HEX_COFACTORS = (1, 2, 4, 8, 11, 13)


def hexchain_graph():
    """Three disjoint hexagons over the integers; hexagon i's labels share
    the prime (3, 5, 7)[i] with cofactors 1,2,4,8,11,13 around the ring."""
    vertices, edges = [], []
    for tag, p in (("1", 3), ("2", 5), ("3", 7)):
        hv = [f"{c}{tag}" for c in "ABCDEF"]
        vertices += hv
        for i, k in enumerate(HEX_COFACTORS):
            edges.append((hv[i], hv[(i + 1) % 6], p * k))
    return int_graph(vertices, edges)


@pytest.fixture
def hexchain():
    return hexchain_graph()


HEXPOLY_LINES = {1: "x-3", 2: "x-5", 3: "x-7"}
HEXPOLY_CENTERS = {1: 10, 2: 100, 3: 1000}


def hexpoly_graph():
    """The two-variable analogue: line factor times a circle cofactor."""
    vertices, edges = [], []
    for tag in (1, 2, 3):
        hv = [f"{c}{tag}" for c in "ABCDEF"]
        vertices += hv
        line = parse_element(HEXPOLY_LINES[tag], QXY)
        for i in range(6):
            circle = parse_element(
                f"(x-{HEXPOLY_CENTERS[tag] * (i + 1)})^2+y^2-1", QXY
            )
            label = FactoredElement(
                (make_factor(line, QXY), make_factor(circle, QXY))
            )
            edges.append((hv[i], hv[(i + 1) % 6], label))
    return normalize(QXY, vertices, edges)


def hexpoly_opens():
    def mk(name, line_tags, circle_tags):
        invert = [make_factor(parse_element(HEXPOLY_LINES[t], QXY), QXY) for t in line_tags]
        for t in circle_tags:
            for i in range(6):
                circle = parse_element(
                    f"(x-{HEXPOLY_CENTERS[t] * (i + 1)})^2+y^2-1", QXY
                )
                invert.append(make_factor(circle, QXY))
        return BasicOpen(name, tuple(invert))

    return (mk("U1", (1, 2), (1, 2)), mk("U2", (1, 3), (1, 3)), mk("U3", (2, 3), (2, 3)))


@pytest.fixture
def hexpoly():
    return hexpoly_graph()
