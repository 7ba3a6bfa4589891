"""Smoke tests for the pybind11 module: the main operations round-trip."""

import math

import pytest

seqode = pytest.importorskip("seqode")


def test_version():
    assert seqode.__version__


def test_seminorm_power_series():
    spec = seqode.SpaceSpec.power_series()
    x = seqode.CoeffVec([1.0])
    nv = seqode.seminorm(x, 1, spec)
    assert nv.value == 1.0
    assert nv.tail_bound == 0.0

    anchored = seqode.CoeffVec.from_anchor(seqode.AnchorSeq.poly(1.0, 1))
    nv = seqode.seminorm(anchored, 1, spec, 1e-10)
    assert abs(nv.tail_bound - 4.0) < 1e-8  # sum (k+1) 2^-k = 4


def test_order_and_sup():
    assert seqode.leq(seqode.CoeffVec([0.0, 0.0]), seqode.CoeffVec([1.0, 2.0])).holds
    s = seqode.coordwise_sup(
        [seqode.CoeffVec([1.0, 5.0]), seqode.CoeffVec([3.0, 2.0])],
        seqode.CoeffVec([10.0, 10.0]),
    )
    assert [s.coord(0), s.coord(1)] == [3.0, 5.0]


def test_solve_decoupled_closed_form():
    field = seqode.heaviside_field(
        1, seqode.IndexMap.identity(),
        lambda k: seqode.PiecewiseConstantFn.constant(1.0),
    )
    problem = seqode.Problem(
        space=seqode.SpaceSpec.power_series(),
        field=field,
        x_hat=seqode.CoeffVec.zero(),
        x_star=seqode.CoeffVec.from_anchor(seqode.AnchorSeq.poly(-1.0, 1)),
        C=seqode.CoeffVec.from_anchor(seqode.AnchorSeq.poly(1.0, 1)),
        T=1.0,
        N=4,
        grid=seqode.TimeGrid.uniform(1.0, 64),
        rng_seed=42,
    )
    report = seqode.solve(problem)
    assert report.converged
    assert report.monotone_certificate and report.enclosure_certificate
    nodes = report.trajectory.grid.nodes
    for j, t in enumerate(nodes):
        for k in range(4):
            assert report.trajectory.value(j, k) == (k + 1) * t
    assert report.residual.coord_max == 0.0


def test_oracle_and_diagnostic():
    sol = seqode.scalar_heaviside_solve(
        2.0, seqode.PiecewiseConstantFn.constant(1.0), 0.0, 1.0
    )
    assert sol.eval(0.5) == 1.0
    assert sol.switch_times == []

    rep = seqode.dieudonne_diagnostic(1.0, [0, 9], 100000)
    assert rep.inf_value >= 0.249


def test_hypothesis_checker_witness():
    field = seqode.scalar_h_field()
    box = seqode.OrderInterval(seqode.CoeffVec([0.0]), seqode.CoeffVec([2.0]))
    rep = seqode.check_monotone(field, box, [0.0, 1.0], 500, 7, 1)
    assert not rep.ok
    assert rep.witness.lhs == 1.0 and rep.witness.rhs == -1.0


def test_problem_file_parsing():
    text = """
    {
      "space": {"kind": "weighted-sum", "weights": {"type": "power-series"}},
      "field": {"type": "dieudonne", "params": {}},
      "problem": {"T": 1.0, "N": 2, "M": 16,
                  "x_hat": {"type": "zero"}, "x_star": {"type": "zero"},
                  "C": {"type": "constant", "value": 3.0}},
      "solver": {"tol_residual": 1e-9, "max_iters": 8, "max_refines": 0, "rng_seed": 1}
    }
    """
    with pytest.raises(seqode.ProblemFileError):
        seqode.parse_problem(text)  # C must be a vector object, not an anchor

    fixed = text.replace(
        '{"type": "constant", "value": 3.0}',
        '{"type": "anchor", "anchor": {"type": "constant", "value": 3.0}}',
    )
    problem = seqode.parse_problem(fixed)
    assert problem.N == 2
    assert math.isclose(problem.T, 1.0)
