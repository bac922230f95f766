import math

import numpy as np
import pytest
import scipy.linalg

from conftest import graph
from groverwalk.arcs import build_arc_space, distance_digraphs_bfs
from groverwalk.errors import HypothesisError, ValidationError
from groverwalk.factorizer import (
    build_generator,
    factorize,
    grover_walk,
    invertibility_gate,
    log_oracle,
    verify_strongly_regular_claim,
)
from groverwalk.graphs import build_family
from groverwalk.linalg import expand_in_basis, expm_skew, symmetric_eig

# principal log of U^2 projected on S(LD(K_n)); scipy.linalg.logm oracle,
# matching (2 theta - 2 pi)/(k sin theta) with cos theta = -1/(n-1)
KN_T = {
    3: -1.2091995761561452,
    4: -0.8704197513671036,
    5: -0.6806722125172942,
    6: -0.5590708881469216,
}


def _oracle_coefficients(res):
    """Least squares of scipy's principal log of U^2 on the factor skews."""
    U = res.walk.U
    L = scipy.linalg.logm(U @ U).real
    B = np.stack([S.ravel() for S in res.skews], axis=1).astype(float)
    coeffs, *_ = np.linalg.lstsq(B, L.ravel(), rcond=None)
    return coeffs


def test_walk_entries():
    S = build_arc_space(graph("K_3"))
    U = grover_walk(S).U
    assert U[S.index((0, 1)), S.index((1, 0))] == 0.0
    S = build_arc_space(graph("Petersen"))
    U = grover_walk(S).U
    assert U[S.index((0, 1)), S.index((1, 0))] == pytest.approx(-1 / 3, abs=1e-15)


def test_walk_orthogonal(corpus_graph):
    S = build_arc_space(corpus_graph)
    U = grover_walk(S).U
    assert np.linalg.norm(U.T @ U - np.eye(S.size)) < 1e-12
    R = S.R.astype(float)
    coin = (2 / corpus_graph.degree) * S.Dt.T @ S.Dt - np.eye(S.size)
    assert np.linalg.norm(U - R @ coin) < 1e-12


@pytest.mark.parametrize(
    "family,params,expected",
    [("complete", [3], True), ("cycle", [4], False), ("complete_bipartite", [3, 3], False), ("petersen", [], True)],
)
def test_invertibility_gate(family, params, expected):
    X = build_family(family, params)
    assert invertibility_gate(X, symmetric_eig(X.adjacency)) is expected


def test_c4_square_has_eigenvalue_minus_one():
    X = build_family("cycle", [4])
    S = build_arc_space(X)
    U = grover_walk(S).U
    assert np.min(np.abs(np.linalg.eigvals(U @ U) + 1)) < 1e-9
    with pytest.raises(HypothesisError, match="singular"):
        build_generator(symmetric_eig(X.adjacency), S)


def test_generator_k3():
    X = graph("K_3")
    S = build_arc_space(X)
    gen = build_generator(symmetric_eig(X.adjacency), S)
    SLD = distance_digraphs_bfs(S).skews[1]
    t = expand_in_basis(gen.K, [SLD]).coefficients[0]
    assert t == pytest.approx(KN_T[3], abs=1e-12)
    assert abs(t) == pytest.approx(2 * math.pi / (3 * math.sqrt(3)), abs=1e-12)
    assert np.linalg.norm(gen.K - t * SLD) < 1e-12
    (c,) = gen.contributions
    assert c.theta == pytest.approx(2 * math.pi / 3)
    assert c.angle == pytest.approx(-2 * math.pi / 3)


def test_lifted_branch_k3():
    """Doubling U's eigenphases without wrapping gives 4 pi / (3 sqrt 3)."""
    X = graph("K_3")
    S = build_arc_space(X)
    U = grover_walk(S).U
    gen = build_generator(symmetric_eig(X.adjacency), S, branch="lifted")
    SLD = distance_digraphs_bfs(S).skews[1]
    t = expand_in_basis(gen.K, [SLD]).coefficients[0]
    assert t == pytest.approx(4 * math.pi / (3 * math.sqrt(3)), abs=1e-12)
    assert np.linalg.norm(expm_skew(SLD, t) - U @ U) < 1e-9
    assert np.linalg.norm(expm_skew(SLD, KN_T[3]) - U @ U) < 1e-9


def test_generator_petersen():
    X = graph("Petersen")
    S = build_arc_space(X)
    U = grover_walk(S).U
    gen = build_generator(symmetric_eig(X.adjacency), S)
    lams = sorted(round(c.lam, 9) for c in gen.contributions)
    assert lams == [-2.0, 1.0]
    assert np.linalg.norm(expm_skew(gen.K) - U @ U) < 1e-9
    assert np.linalg.norm(gen.K + gen.K.T) < 1e-12


def test_generator_q3_skips_minus_k():
    X = graph("Q_3")
    gen = build_generator(symmetric_eig(X.adjacency), build_arc_space(X))
    assert sorted(round(c.lam, 9) for c in gen.contributions) == [-1.0, 1.0]


def test_generator_matches_scipy_logm(corpus_graph):
    S = build_arc_space(corpus_graph)
    U = grover_walk(S).U
    gen = build_generator(symmetric_eig(corpus_graph.adjacency), S)
    assert np.linalg.norm(gen.K - scipy.linalg.logm(U @ U).real) < 1e-9
    assert np.linalg.norm(log_oracle(U) - gen.K) < 1e-9
    assert np.max(np.abs(np.imag(np.linalg.eigvals(gen.K)))) < math.pi


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_complete_graph_single_factor(n):
    res = factorize(build_family("complete", [n]))
    assert len(res.t) == 1
    assert res.t[0] == pytest.approx(KN_T[n], abs=1e-9)
    U = res.walk.U
    assert np.linalg.norm(U @ U - expm_skew(res.skews[0], res.t[0])) < 1e-8


def test_petersen_two_factors():
    X = graph("Petersen")
    res = factorize(X)
    assert len(res.t) == 2 and all(abs(t) > 1e-3 for t in res.t)
    assert res.product_error < 1e-8
    assert np.allclose(res.t, _oracle_coefficients(res), atol=1e-9)
    assert verify_strongly_regular_claim(X, res)


def test_c5_strongly_regular():
    X = graph("C_5")
    res = factorize(X)
    assert len(res.t) == 2
    assert verify_strongly_regular_claim(X, res)
    assert np.allclose(res.t, _oracle_coefficients(res), atol=1e-9)


def test_q3_only_second_digraph():
    res = factorize(graph("Q_3"))
    t1, t2, t3 = res.t
    assert abs(t1) < 1e-9 and abs(t3) < 1e-9 and abs(t2) > 0.1
    U = res.walk.U
    assert np.linalg.norm(U @ U - expm_skew(res.skews[1], t2)) < 1e-8
    # S(Y_1) = -S(Y_3) for the cube, so the Gram matrix has rank 2
    assert res.rank == 2
    assert np.array_equal(res.skews[0], -res.skews[2])


def test_q3_generator_expansion():
    res = factorize(graph("Q_3"))
    exp = expand_in_basis(res.generator.K, res.skews)
    assert exp.residual < 1e-9
    assert abs(exp.coefficients[0]) < 1e-9 and abs(exp.coefficients[2]) < 1e-9
    L = scipy.linalg.logm(res.walk.U @ res.walk.U).real
    S2 = res.skews[1].astype(float)
    assert exp.coefficients[1] == pytest.approx(np.sum(L * S2) / np.sum(S2 * S2), abs=1e-9)


def test_factor_order_independent(corpus_graph):
    res = factorize(corpus_graph)
    U2 = res.walk.U @ res.walk.U
    forward = np.linalg.norm(U2 - res.product())
    backward = np.linalg.norm(U2 - res.product(reversed(range(len(res.t)))))
    assert abs(forward - backward) < 1e-10


def test_factors_commute_and_are_orthogonal(corpus_graph):
    res = factorize(corpus_graph)
    for F in res.per_factor:
        assert np.linalg.norm(F.T @ F - np.eye(F.shape[0])) < 1e-10
    for a in res.per_factor:
        for b in res.per_factor:
            assert np.linalg.norm(a @ b - b @ a) < 1e-9


@pytest.mark.parametrize(
    "family,params,match",
    [("cycle", [4], "singular"), ("complete_bipartite", [3, 3], "singular"), ("prism", [], "distance-regular")],
)
def test_factorize_refusals(family, params, match):
    with pytest.raises(HypothesisError, match=match):
        factorize(build_family(family, params))


def test_strongly_regular_claim_needs_diameter_two():
    X = graph("Q_3")
    with pytest.raises(ValidationError):
        verify_strongly_regular_claim(X, factorize(X))


def test_lifted_branch_q3_needs_first_digraph():
    """Without wrapping, the cube's generator is not a multiple of S(Y_2)."""
    res = factorize(graph("Q_3"), branch="lifted")
    assert res.product_error < 1e-8
    assert abs(res.t[0]) > 0.1
    assert res.t[0] == pytest.approx(-res.t[2], abs=1e-9)
