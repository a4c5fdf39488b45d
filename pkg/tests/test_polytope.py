import numpy as np
import pytest

from cranbounds import polytope
from cranbounds.polytope import (AffineExpr, ConstraintSystem, LinearConstraint,
                                 SystemParseError, eliminate_all, fme_eliminate,
                                 format_system, is_member, numeric_feasible,
                                 parse_system, regions_equal_sampled,
                                 resolve_atoms, syntactic_reduce)


def system_of(text):
    return parse_system(text)


def test_fme_single_pair():
    sys_ = system_of("1*x <= 1*a\n-1*x <= -1*b\n")
    out = fme_eliminate(sys_, "x")
    # b <= a, expressed as 0 <= a - b
    assert len(out) == 1
    assert is_member(out, {"a": 2.0, "b": 1.0}, {})
    assert not is_member(out, {"a": 1.0, "b": 2.0}, {})


def test_fme_two_pairings():
    sys_ = system_of("1*y <= 5*a\n1*x - 1*y <= 3\n-1*y <= 0\n")
    out = fme_eliminate(sys_, "y")
    for a, x, member in [(1.0, 7.9, True), (1.0, 8.1, False), (-0.1, 0.0, False)]:
        assert is_member(out, {"a": a}, {"x": x}) == member


def test_fme_unknown_variable():
    with pytest.raises(KeyError):
        fme_eliminate(system_of("1*x <= 1*a\n"), "z")


def test_fme_varfree_identity():
    sys_ = system_of("1*x <= 1*a\n")
    sys_.variables.append("y")
    out = fme_eliminate(sys_, "y")
    assert [str(c) for c in out.constraints] == [str(c) for c in sys_.constraints]
    assert out.variables == ["x"]


def test_reduce_duplicates_and_constant_dominance():
    sys_ = system_of("1*x <= 1*a\n1*x <= 1*a\n1*x <= 1*a + 1\n2*x <= 2*a + 3\n")
    out = syntactic_reduce(sys_)
    assert len(out) == 1
    assert str(out.constraints[0]) == "1*x <= 1*a"


def test_reduce_keeps_distinct_atom_rhs():
    sys_ = system_of("1*x <= 1*a\n1*x <= 1*b\n")
    assert len(syntactic_reduce(sys_)) == 2


def test_reduce_drops_tautology():
    sys_ = system_of("0 <= 3\n1*x <= 1*a\n")
    assert len(syntactic_reduce(sys_)) == 1


def test_membership_closure_and_tolerance():
    sys_ = system_of("1*R1 <= 1*C1\n")
    assert is_member(sys_, {"C1": 1.0}, {"R1": 1.0})
    assert not is_member(sys_, {"C1": 1.0}, {"R1": 1.001}, tol=1e-9)


def test_membership_missing_valuation_entry():
    sys_ = system_of("1*R1 <= 1*C1\n")
    with pytest.raises(KeyError):
        is_member(sys_, {}, {"R1": 0.0})


def test_regions_equal_sampled_identical_and_different():
    a = system_of("1*R1 <= 1*C1\n")
    b = system_of("1*R1 <= 2*C1\n")
    val = {"C1": 1.0}
    rep = regions_equal_sampled(a, a, [val], n_points=200, seed=0)
    assert rep["agree"]
    rep = regions_equal_sampled(a, b, [val], n_points=500, seed=0)
    assert not rep["agree"]
    w = rep["witnesses"][0]
    assert 1.0 < w["point"]["R1"] <= 2.0 + 1e-6


def test_regions_equal_requires_valuations():
    a = system_of("1*R1 <= 1*C1\n")
    with pytest.raises(ValueError):
        regions_equal_sampled(a, a, [], n_points=10, seed=0)


def _interval_feasible(system, val, point, var, lo=-1e9, hi=1e9):
    """Brute interval oracle: does some value of `var` satisfy the system?"""
    for c in system.constraints:
        coeff = float(c.coeff(var))
        rest = sum(float(q) * point[k] for k, q in c.lhs if k != var)
        rhs = c.rhs.value(val) - rest
        if abs(coeff) < 1e-15:
            if rhs < -1e-12:
                return False
        elif coeff > 0:
            hi = min(hi, rhs / coeff)
        else:
            lo = max(lo, rhs / coeff)
    return lo <= hi + 1e-12


def test_fme_soundness_randomized():
    rng = np.random.default_rng(7)
    for trial in range(40):
        nvars, ncons = 3, 8
        names = ["x", "y", "z"]
        cons = []
        for _ in range(ncons):
            lhs = {names[i]: int(rng.integers(-2, 3)) for i in range(nvars)}
            rhs = AffineExpr.make({"a": int(rng.integers(-2, 3))},
                                  int(rng.integers(-3, 4)))
            cons.append(LinearConstraint.make(lhs, rhs))
        sys_ = ConstraintSystem(names, cons)
        out = fme_eliminate(sys_, "z")
        val = {"a": float(rng.uniform(-2, 2))}
        for _ in range(25):
            pt = {"x": float(rng.uniform(-3, 3)), "y": float(rng.uniform(-3, 3))}
            lhs_member = is_member(out, val, pt, tol=1e-12)
            oracle = _interval_feasible(sys_, val, pt, "z")
            assert lhs_member == oracle, (trial, pt)


def test_fme_order_independence():
    rng = np.random.default_rng(11)
    names = ["x", "y", "z", "w"]
    cons = []
    for _ in range(10):
        lhs = {n: int(rng.integers(-2, 3)) for n in names}
        rhs = AffineExpr.make({"a": int(rng.integers(-1, 2))}, int(rng.integers(-2, 5)))
        cons.append(LinearConstraint.make(lhs, rhs))
    sys_ = ConstraintSystem(names, cons)
    out1 = eliminate_all(sys_, ["z", "w"], greedy=False)
    out2 = eliminate_all(sys_, ["w", "z"], greedy=False)
    rep = regions_equal_sampled(out1, out2, [{"a": 0.7}, {"a": -0.4}],
                                n_points=400, seed=3)
    assert rep["agree"], rep["witnesses"][:3]


def test_kohler_pruning_preserves_membership():
    # eliminate several variables with and without history pruning and
    # compare sampled membership of the projections
    rng = np.random.default_rng(23)
    names = ["x", "y", "z", "w", "v"]
    cons = []
    for _ in range(12):
        lhs = {n: int(rng.integers(-1, 2)) for n in names}
        rhs = AffineExpr.make({"a": int(rng.integers(0, 2))}, int(rng.integers(0, 6)))
        cons.append(LinearConstraint.make(lhs, rhs))
    sys_ = ConstraintSystem(names, cons)
    pruned = eliminate_all(sys_, ["z", "w", "v"])
    plain = sys_
    for v in ["z", "w", "v"]:
        plain = fme_eliminate(plain, v)
    rep = regions_equal_sampled(pruned, plain, [{"a": 1.0}], n_points=600, seed=5)
    assert rep["agree"], rep["witnesses"][:3]


def test_resolve_atoms_and_numeric_feasible():
    sys_ = system_of("1*x <= 1*a\n-1*x <= 0\n")
    resolved = resolve_atoms(sys_, {"a": 0.5})
    assert numeric_feasible(resolved)
    assert not numeric_feasible(resolve_atoms(sys_, {"a": -0.5}))
    # tightening shrinks the feasible set
    assert not numeric_feasible(resolve_atoms(sys_, {"a": 1e-9}), tighten=1e-6)


def test_parse_format_roundtrip():
    text = "1*R1 + 1*R2 <= 1*C1 + -1/2*Gamma(U0,V0) + 3/2\n-1*R1 <= 0\n"
    sys_ = parse_system(text)
    again = parse_system(format_system(sys_))
    assert [c.key() for c in sys_.constraints] == [c.key() for c in again.constraints]


def test_parse_decimal_and_bare_names():
    sys_ = parse_system("0.5*x + y <= 2.25*a + 3\n")
    c = sys_.constraints[0]
    assert dict(c.lhs)["x"] == polytope.Q(1, 2)
    assert dict(c.lhs)["y"] == 1
    assert c.rhs.const == polytope.Q(3)


def test_parse_error_reports_location():
    with pytest.raises(SystemParseError) as exc:
        parse_system("1*x <= 1*a\n1*x ? 2\n")
    assert exc.value.line == 2
    with pytest.raises(SystemParseError) as exc:
        parse_system("1*x <= 1* \n")
    assert exc.value.line == 1 and exc.value.column is not None


def test_comments_and_blank_lines():
    sys_ = parse_system("# heading\n\n1*x <= 1*a  # trailing\n")
    assert len(sys_) == 1


def test_fme_cap_guard():
    rng = np.random.default_rng(1)
    names = [f"v{i}" for i in range(6)]
    cons = []
    for _ in range(40):
        lhs = {n: int(rng.integers(-3, 4)) for n in names}
        rhs = AffineExpr.make({f"a{rng.integers(0, 20)}": 1}, int(rng.integers(0, 9)))
        cons.append(LinearConstraint.make(lhs, rhs))
    sys_ = ConstraintSystem(names, cons)
    with pytest.raises(polytope.FMEBlowupError):
        eliminate_all(sys_, names, max_constraints=50)
