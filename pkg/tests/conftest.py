from __future__ import annotations

from hypothesis import strategies as st

from cpgraph.graph import Graph


@st.composite
def graphs(draw, max_vertices: int = 4, max_edges: int = 6, min_vertices: int = 1):
    n = draw(st.integers(min_vertices, max_vertices))
    m = draw(st.integers(0, max_edges))
    arcs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=m, max_size=m))
    return Graph([f"v{i}" for i in range(n)], [(f"e{j}", f"v{a}", f"v{b}") for j, (a, b) in enumerate(arcs)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
