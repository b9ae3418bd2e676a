"""Smoke test for the Python bindings.

Build and copy the extension next to this file first:

    cargo build -p causalflow-py --features extension-module --release
    cp target/release/libcausalflow_py.so python/causalflow.so
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import causalflow as cf  # noqa: E402

FIG1B = """
r1 r2
r2 r3
r1 r3
g1 g2
g2 g3
g1 g3
r1 g1
r2 g1
r3 g2
"""


def main():
    g = cf.Graph.from_edge_list(FIG1B)
    assert (g.node_count, g.edge_count) == (6, 9), g
    red = [g.node(x) for x in ("r1", "r2", "r3")]
    green = [g.node(x) for x in ("g1", "g2", "g3")]

    times = cf.simulate(g, red, threshold=2)
    assert all(t is not None for t in times), times
    times = cf.simulate(g, green, threshold=2)
    assert sum(t is not None for t in times) == 3, times

    s = cf.aggregate(g, threshold=2, seed_sets=[red, green])
    assert abs(s.density - 0.75) < 1e-12, s.density
    assert len(s.ties()) == 18
    assert max(s.ni_norm) == 1.0

    ws = cf.watts_strogatz(200, 8, 0.1, seed=42)
    assert ws.edge_count == 800
    again = cf.watts_strogatz(200, 8, 0.1, seed=42)
    assert ws.edges() == again.edges()

    scores = cf.aggregate(ws, threshold=2, sweeps=1, seed=1)
    xi = cf.flow_symmetry(scores, ws)
    assert xi is None or -1.0 <= xi <= 1.0
    assert len(cf.core_periphery(scores, ws)) == 3

    pl = cf.clustered_power_law(300, 4, 0.4, seed=3)
    assert pl.node_count == 300

    two, labels = cf.two_communities(20, 4, 0.1, seed=5)
    assert not cf.spreads(two, labels, "A", 1)

    sym, asym = cf.bridge_pair_counts(4, 4, 2)
    assert asym > sym > 0, (sym, asym)

    try:
        cf.watts_strogatz(10, 3, 0.1)
    except ValueError:
        pass
    else:
        raise AssertionError("odd k accepted")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
