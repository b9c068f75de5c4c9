"""Small named graphs used throughout the docs and tests."""

from __future__ import annotations

from .graph import Graph


def loop() -> Graph:
    return Graph(["v"], [("e", "v", "v")])


def rose2() -> Graph:
    return Graph(["v"], [("e", "v", "v"), ("f", "v", "v")])


def line3() -> Graph:
    return Graph(["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v2", "v3")])


def fork() -> Graph:
    return Graph(["v", "w", "u"], [("a", "v", "w"), ("b", "v", "u")])


def vw() -> Graph:
    return Graph(["v", "w"], [("e", "v", "w")])


def loop_tail() -> Graph:
    return Graph(["v", "w"], [("e", "v", "v"), ("g", "v", "w")])


def point() -> Graph:
    return Graph(["v"], [])


def empty() -> Graph:
    return Graph([], [])


ZOO = {
    "loop": loop,
    "rose2": rose2,
    "line3": line3,
    "fork": fork,
    "vw": vw,
    "loop_tail": loop_tail,
    "point": point,
    "empty": empty,
}
