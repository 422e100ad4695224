from fractions import Fraction

import pytest

import help2p


def test_root_trace():
    assert help2p.root_trace(12, 2) == Fraction(2)
    assert help2p.root_trace(3, 1) == Fraction(-1)


def test_table_round_trip():
    doc = help2p.table("PGL", 9)
    assert help2p.validate_table(doc) == "PGL(2,9)"
    doc["characters"][0][0]["terms"] = []
    with pytest.raises(help2p.DataError):
        help2p.validate_table(doc)


def test_solve_ablation():
    with_mod4 = help2p.solve("PSL", 27, 6)
    without = help2p.solve("PSL", 27, 6, mod4=False)
    assert with_mod4["survivors"] == []
    assert len(without["survivors"]) == 12


def test_order2p():
    verdict = help2p.order2p(13, "PGL")
    assert verdict["status"] == "NoUnitsProven"
    assert verdict["rules"][0]["provenance"]
    with pytest.raises(help2p.UnsupportedInput):
        help2p.order2p(17)


def test_pgq_and_conditions():
    assert help2p.pgq(27)["status"] == "Positive"
    v81 = help2p.pgq(81)
    assert v81["status"] == "Open"
    assert v81["unresolved"] == [[2, 3]]
    c = help2p.conditions(81)
    assert c["odd_part"] == "205"
    assert c["f_coprime"] is False


def test_oracle():
    report = help2p.oracle("d8", 3, samples=100, seed=5)
    assert report["passes"] == 100
    assert report["failures"] == []
    assert help2p.oracle("lambda")["closed"]
    assert help2p.lambda_membership(4, 16, 0) == (0, 4, -1)
    assert help2p.lambda_membership(1, 3, 1) is None
