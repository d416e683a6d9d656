"""Gauss-Legendre quadrature and the nodal Lagrange basis on (-1/2, 1/2).

The reference element is the unit-length interval centered at zero, so the
quadrature weights sum to one and cell integrals are `h * sum(w_k f_k)`.
"""

from dataclasses import dataclass

import numpy as np

_NEWTON_TOL = 1e-15
_NEWTON_MAXIT = 100


def _legendre_and_derivative(n: int, x: np.ndarray):
    """Evaluate P_n and P_n' at x via the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights on the reference interval (-1/2, 1/2)."""

    n_points: int
    nodes: np.ndarray
    weights: np.ndarray


def gauss_legendre_rule(n_points: int) -> QuadratureRule:
    """Gauss-Legendre rule with `n_points` nodes, exact through degree 2n-1.

    Nodes are found by Newton iteration from the Chebyshev initial guess;
    the computation is deterministic and converges in a handful of steps.
    """
    n = int(n_points)
    if n < 1:
        raise ValueError(f"need at least one quadrature point, got {n_points}")
    if n == 1:
        return QuadratureRule(1, np.zeros(1), np.ones(1))

    # work on [-1, 1], then scale to the unit-length reference element
    x = -np.cos(np.pi * (np.arange(n) + 0.75) / (n + 0.5))
    for _ in range(_NEWTON_MAXIT):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < _NEWTON_TOL:
            break
    else:
        raise RuntimeError("Legendre node iteration did not converge")
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    # symmetrize exactly: nodes come out pairwise mirrored up to roundoff
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return QuadratureRule(n, 0.5 * x, 0.5 * w)


def _barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


@dataclass(frozen=True)
class NodalBasis:
    """Lagrange basis on the Gauss nodes of the reference element.

    diff_matrix[i, j] = phi_j'(x_i); rows sum to zero since sum_j phi_j = 1.
    left_trace[j] = phi_j(-1/2), right_trace[j] = phi_j(+1/2).
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    diff_matrix: np.ndarray
    left_trace: np.ndarray
    right_trace: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.order + 1

    def eval_lagrange(self, points) -> np.ndarray:
        """Matrix L with L[p, j] = phi_j(points[p])."""
        pts = np.atleast_1d(np.asarray(points, dtype=float))
        bw = _barycentric_weights(self.nodes)
        diff = pts[:, None] - self.nodes[None, :]
        exact = np.isclose(diff, 0.0, atol=1e-14)
        diff_safe = np.where(exact, 1.0, diff)
        terms = bw[None, :] / diff_safe
        L = terms / np.sum(terms, axis=1, keepdims=True)
        hit = exact.any(axis=1)
        if np.any(hit):
            L[hit] = exact[hit].astype(float)
        return L


def nodal_basis(order: int) -> NodalBasis:
    """Nodal basis of polynomial degree `order` (order+1 Gauss nodes)."""
    if order < 0:
        raise ValueError(f"polynomial order must be >= 0, got {order}")
    rule = gauss_legendre_rule(order + 1)
    x = rule.nodes
    n = order + 1
    bw = _barycentric_weights(x)

    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                D[i, j] = (bw[j] / bw[i]) / (x[i] - x[j])
    np.fill_diagonal(D, -np.sum(D, axis=1))

    def lagrange_at(point: float) -> np.ndarray:
        vals = np.empty(n)
        for j in range(n):
            others = np.delete(np.arange(n), j)
            vals[j] = np.prod((point - x[others]) / (x[j] - x[others]))
        return vals

    return NodalBasis(
        order=order,
        nodes=x,
        weights=rule.weights,
        diff_matrix=D,
        left_trace=lagrange_at(-0.5),
        right_trace=lagrange_at(0.5),
    )
