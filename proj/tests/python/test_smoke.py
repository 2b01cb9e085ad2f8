from fractions import Fraction

import pytest

import majo


def example_pair():
    f = majo.StepFunction([(3, 1), ("1/2", 1)], "inf")
    g = majo.StepFunction([(2, 2)], float("inf"))
    return f, g


def test_integrals_are_fractions():
    f, g = example_pair()
    assert majo.integral(f) == Fraction(7, 2)
    assert isinstance(majo.integral(f), Fraction)
    assert majo.partial_integral(g, 1) == 2
    assert majo.hinge_integral(f, 1) == 2
    assert majo.distribution(f, -1) == float("inf")


def test_incomparable_pair_certificates():
    f, g = example_pair()
    fg = majo.weak_majorize(f, g)
    gf = majo.weak_majorize(g, f)
    assert not fg["holds"] and not gf["holds"]
    assert (fg["certificate"]["point"], fg["certificate"]["lhs"], fg["certificate"]["rhs"]) == (1, 3, 2)
    assert (gf["certificate"]["point"], gf["certificate"]["lhs"], gf["certificate"]["rhs"]) == (
        2,
        4,
        Fraction(7, 2),
    )
    report = majo.cross_check(f, g)
    assert report["consistent"] and not report["holds"]


def test_witness_round_trip():
    g = majo.StepFunction([(3, 1), (1, 1)], 4)
    f = majo.StepFunction([(2, 2)], 4)
    w = majo.ds_witness(f, g)
    assert w["steps"] == [(0, 1, Fraction(1, 2))]
    assert majo.apply_matrix(w["product"], w["source"]) == w["target"]
    assert majo.classify_matrix(w["product"]) == "doubly-stochastic"


def test_operators():
    assert majo.classify_matrix([[1, 1], [0, 0]]) == "markov"
    assert majo.lift([1, 2], [[0, 1], [1, 0]]) == [[0, 2], [Fraction(1, 2), 0]]
    assert majo.apply_matrix([["1/2", "1/2"], ["1/2", "1/2"]], [2, 0]) == [1, 1]


def test_diagnostics():
    f, g = example_pair()
    assert majo.small_set_modulus(f, 1) == 3
    assert majo.l1_distance(f, g) == Fraction(5, 2)


def test_errors_raise():
    with pytest.raises(majo.MajoError):
        majo.StepFunction([(1, 1), (-1, 1)], "inf")
    with pytest.raises(majo.MajoError):
        majo.ds_witness(*example_pair())
