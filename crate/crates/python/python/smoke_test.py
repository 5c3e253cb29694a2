"""Smoke test for the pyclustereval extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
or `pip install crates/python`.
"""

import json
import math

import pyclustereval as ce


def check_contingency():
    a = ["w%d" % i for i in range(8)]
    b = ["w%d" % i for i in range(2, 13)]
    t = ce.contingency(a, b)
    assert (t.yy, t.yn, t.ny) == (6, 2, 5), t
    s = t.scores()
    assert math.isclose(s.precision, 0.75)
    assert math.isclose(s.recall, 6 / 11)
    assert math.isclose(s.f_measure, 12 / 19)
    assert math.isclose(ce.f_measure(0.75, 6 / 11), 12 / 19)


def check_conflict():
    table = ce.FTable.from_matrix([[0.80, 0.50], [0.70, 0.65]])
    assert ce.initial_potentials(table) == [0, 0]
    m = ce.resolve_conflicts(table)
    assert m.assignment() == [0, 1], m.assignment()
    [(row, frm, to, loss)] = m.trace
    assert (row, frm, to) == (1, 0, 1)
    assert math.isclose(loss, 0.05, abs_tol=1e-12)
    best = ce.brute_force_mapping(table)
    assert m.total_f() <= best.total_f() + 1e-9


def check_evaluate():
    system = ce.Clustering([("A", ["w%d" % i for i in range(8)])], name="system")
    expert = ce.ExpertHierarchy.from_clustering(
        ce.Clustering([("B", ["w%d" % i for i in range(2, 13)])], name="expert")
    )
    r = ce.evaluate(system, expert)
    o = r.overall
    assert (o.yy, o.yn, o.ny) == (6, 2, 5)
    assert math.isclose(r.f_measure, 12 / 19)
    doc = json.loads(r.to_json())
    assert doc["overall"] == {"yy": 6, "yn": 2, "ny": 5}, doc["overall"]

    gold = ce.gen_clustering(7, overlap_rate=0.0)
    self_eval = ce.evaluate(gold, ce.ExpertHierarchy.from_clustering(gold))
    assert self_eval.f_measure == 1.0
    again = ce.Clustering.from_json(gold.to_json())
    assert again.classes() == gold.classes()


def check_baseline():
    system = ce.Clustering([("S", ["a", "b", "c"])])
    expert = ce.Clustering([("X", ["a", "b"]), ("Y", ["c"])])
    table, scores, reliable = ce.pair_baseline(system, expert)
    assert (table.yy, table.yn, table.ny) == (1, 2, 0)
    assert math.isclose(scores.precision, 1 / 3)
    assert reliable


def check_errors():
    try:
        ce.Clustering([("A", ["x", "x"])])
    except ValueError as e:
        assert "duplicate" in str(e).lower(), e
    else:
        raise AssertionError("duplicate member accepted")
    try:
        ce.resolve_conflicts(ce.FTable.from_matrix([[0.5]]), 1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("threshold 1.5 accepted")


def main():
    for check in (check_contingency, check_conflict, check_evaluate, check_baseline, check_errors):
        check()
        print("ok", check.__name__)


if __name__ == "__main__":
    main()
