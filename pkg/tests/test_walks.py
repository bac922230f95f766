import numpy as np
import pytest

from conftest import graph
from groverwalk.arcs import build_arc_space
from groverwalk.errors import ValidationError
from groverwalk.factorizer import factorize, grover_walk
from groverwalk.walks import ArcState, compare_evolutions, continuous_evolve, discrete_evolve


def setup(name):
    X = graph(name)
    res = factorize(X)
    return res.walk.arc_space, res.walk, res


def test_zero_steps_identity():
    S, W, res = setup("K_3")
    psi = ArcState.basis(S, (0, 1))
    assert np.array_equal(discrete_evolve(W, psi, 0).amplitudes, psi.amplitudes)
    assert np.array_equal(continuous_evolve(res, psi, 0).amplitudes, psi.amplitudes)
    assert compare_evolutions(W, res, psi, 0) == 0.0


def test_k3_single_step():
    S, W, res = setup("K_3")
    out = discrete_evolve(W, ArcState.basis(S, (0, 1)), 1).amplitudes
    # U acts on column vectors: (0,1) is fed by (2,0) with weight 2/k = 1
    # and by its reversal (1,0) with weight 2/k - 1 = 0
    assert out[S.index((1, 0))] == 0
    assert out[S.index((2, 0))] == pytest.approx(1.0)
    # the row of U: (0,1) hands its amplitude forward to (1,2)
    row = W.U[S.index((0, 1))]
    assert row[S.index((1, 2))] == 1.0 and row[S.index((1, 0))] == 0.0


def test_norm_preserved_petersen():
    S, W, res = setup("Petersen")
    psi = ArcState.basis(S, 0)
    assert abs(discrete_evolve(W, psi, 100).norm - 1.0) < 1e-10
    assert abs(continuous_evolve(res, psi, 37).norm - 1.0) < 1e-10


def test_k3_continuous_matches_two_steps():
    S, W, res = setup("K_3")
    psi = ArcState.basis(S, (0, 1))
    a = continuous_evolve(res, psi, 1).amplitudes
    b = discrete_evolve(W, psi, 2).amplitudes
    assert np.linalg.norm(a - b) < 1e-8


def test_petersen_five_vs_ten():
    S, W, res = setup("Petersen")
    psi = ArcState.uniform(S)
    a = continuous_evolve(res, psi, 5).amplitudes
    b = discrete_evolve(W, psi, 10).amplitudes
    assert np.linalg.norm(a - b) < 1e-7


def test_k4_uniform():
    S, W, res = setup("K_4")
    assert compare_evolutions(W, res, ArcState.uniform(S), 10) < 1e-7


def test_q3_single_arc():
    S, W, res = setup("Q_3")
    assert compare_evolutions(W, res, ArcState.basis(S, 0), 25) < 1e-7


def test_semigroup(corpus_graph):
    res = factorize(corpus_graph)
    psi = ArcState.basis(res.walk.arc_space, 1)
    a = continuous_evolve(res, continuous_evolve(res, psi, 3), 4).amplitudes
    b = continuous_evolve(res, psi, 7).amplitudes
    assert np.linalg.norm(a - b) < 1e-9


def test_agreement_on_even_steps(corpus_graph):
    res = factorize(corpus_graph)
    S = res.walk.arc_space
    rng = np.random.default_rng(11)
    psi = ArcState(rng.normal(size=S.size) + 1j * rng.normal(size=S.size)).normalized()
    for m in (1, 2, 7, 20):
        assert compare_evolutions(res.walk, res, psi, m) < 1e-7


def test_arc_state_validation():
    S = build_arc_space(graph("K_3"))
    with pytest.raises(ValidationError):
        ArcState.basis(S, 6)
    with pytest.raises(ValidationError):
        ArcState(np.zeros(3)).normalized()
    with pytest.raises(ValidationError):
        discrete_evolve(grover_walk(S), ArcState.uniform(S), -1)
