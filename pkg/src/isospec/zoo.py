"""Worked-example fixtures, pseudo-fermion pairs, and ladder-pair verification.

Every fixture packages a concrete (Theta1, X) pair together with the
closed-form values its construction is known to produce, so tests can
assert against stored expectations instead of re-deriving them.  All mode
indices here are 0-based: e.g. the 3x3 example loses eigenvector index 2,
and the block example loses the even positions (the first vector of each
2x2 block).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateError,
    DimensionError,
    ParameterError,
    SeedVectorError,
    SpectrumError,
)
from .intertwining import (
    IntertwiningModel,
    RelationReport,
    build_case3,
    build_model,
)
from .linalg import (
    MULTIPLICITY_TOL,
    EpsilonSequence,
    Eigensystem,
    as_matrix,
    opnorm,
)

FIXTURE_IDS = ("ex2x2", "ex3x3", "shift", "block", "coherent_demo")

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Fixture:
    """A named example: operators, the built model, and its documented values.

    ``model`` is None only when the requested parameters give a repeated
    seed spectrum (the eigensystem transport is then undefined); the raw
    operators and ``expected`` closed forms are still populated.
    """

    id: str
    parameters: dict
    truncation: int
    theta1: np.ndarray
    x: np.ndarray
    expected: dict = field(default_factory=dict)
    model: IntertwiningModel | None = None

    def require_model(self) -> IntertwiningModel:
        if self.model is None:
            raise SpectrumError(
                f"fixture {self.id} was built with a non-simple seed spectrum; "
                "no eigensystem transport is available"
            )
        return self.model


_DEFAULT_2X2_THETA1 = np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex)


def fixture_2x2(x11: complex, x12: complex, theta1=None) -> Fixture:
    """2x2 example: X = [[x11, x12], [-conj(x12), conj(x11)]].

    X X-adjoint = X-adjoint X = xt * identity with xt = |x11|^2 + |x12|^2,
    so X is invertible (det = xt) and commutes-compatible with every seed:
    the regime is always InvertibleCommuting.  X^{-1} = X-adjoint / xt, so
    the similarity eigenvectors are the transported ones divided by xt.
    """
    x11 = complex(x11)
    x12 = complex(x12)
    xt = abs(x11) ** 2 + abs(x12) ** 2
    if xt == 0.0:
        raise DegenerateError("(x11, x12) = (0, 0) gives X = 0; no invertible intertwiner")
    x = np.array([[x11, x12], [-np.conj(x12), np.conj(x11)]], dtype=complex)
    theta1 = _DEFAULT_2X2_THETA1 if theta1 is None else as_matrix(theta1)
    if theta1.shape != (2, 2):
        raise DimensionError("the 2x2 example needs a 2x2 seed")
    model = build_model(theta1, x)
    expected = {
        "xtilde": xt,
        "case": "InvertibleCommuting",
        "n1": xt * np.eye(2),
        "n2": xt * np.eye(2),
        "x_inverse": x.conj().T / xt,
        "tilde_k": np.array([xt, xt]),
        "kernel_set": (),
    }
    return Fixture(
        id="ex2x2",
        parameters={"x11": x11, "x12": x12},
        truncation=2,
        theta1=theta1,
        x=x,
        expected=expected,
        model=model,
    )


def _phi_3x3() -> np.ndarray:
    s2, s6, s23 = math.sqrt(2.0), math.sqrt(6.0), math.sqrt(2.0 / 3.0)
    phi0 = [-1 / s2 - 1 / s6, s23, 1 / s2 - 1 / s6]
    phi1 = [-s23 - 1 / s2, 2 * s23, -s23 + 1 / s2]
    phi2 = [1 / math.sqrt(3.0)] * 3
    return np.array([phi0, phi1, phi2], dtype=complex).T


def theta1_3x3_closed_form(e1: float, e2: float, e3: float) -> np.ndarray:
    """Entrywise closed form of the 3x3 seed (surd coefficients over 6)."""
    s3 = _SQRT3
    rows = [
        [
            (5 + s3) * e1 - (1 + s3) * e2 + 2 * e3,
            2 * ((1 + s3) * e1 - (2 + s3) * e2 + e3),
            (-7 - 3 * s3) * e1 + (5 + 3 * s3) * e2 + 2 * e3,
        ],
        [
            2 * ((1 - 2 * s3) * e1 + 2 * (-1 + s3) * e2 + e3),
            2 * (-2 * e1 + 4 * e2 + e3),
            2 * ((1 + 2 * s3) * e1 - 2 * (1 + s3) * e2 + e3),
        ],
        [
            (-7 + 3 * s3) * e1 + (5 - 3 * s3) * e2 + 2 * e3,
            2 * ((1 - s3) * e1 + (-2 + s3) * e2 + e3),
            (5 - s3) * e1 + (-1 + s3) * e2 + 2 * e3,
        ],
    ]
    return np.array(rows, dtype=complex) / 6.0


def theta2_3x3_closed_form(e1: float, e2: float) -> np.ndarray:
    """Entrywise closed form of the 3x3 example's partner (2x2)."""
    s3 = _SQRT3
    return (
        np.array(
            [
                [-(1 + s3) * e1 + (5 + s3) * e2, (7 - 3 * s3) * (e1 - e2)],
                [-(5 + 3 * s3) * (e1 - e2), (5 + s3) * e1 - (1 + s3) * e2],
            ],
            dtype=complex,
        )
        / 4.0
    )


def fixture_3x3(e1: float, e2: float, e3: float) -> Fixture:
    """3x3 -> 2x2 non-invertible example with kernel index 2.

    The seed is rebuilt from its eigendata, Theta1 = Phi diag(E) Phi^{-1};
    the third seed eigenvalue is absent from the partner spectrum because
    X-adjoint annihilates the third eigenvector.  tilde_k = 3/2 on the two
    survivors.
    """
    es = (float(e1), float(e2), float(e3))
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(es[i] - es[j]) <= MULTIPLICITY_TOL:
                raise SpectrumError(
                    f"eigenvalues {es[i]} and {es[j]} coincide; the example "
                    "needs a simple spectrum"
                )
    phi = _phi_3x3()
    theta1 = phi @ np.diag(es) @ np.linalg.inv(phi)
    x = np.array(
        [[0.0, 1.0], [-_SQRT3 / 2, -0.5], [_SQRT3 / 2, -0.5]], dtype=complex
    )
    eigensystem = Eigensystem(values=np.array(es, dtype=complex), vectors=phi)
    model = build_model(theta1, x, eigensystem=eigensystem)
    s2, s6, s3 = math.sqrt(2.0), math.sqrt(6.0), _SQRT3
    s23 = math.sqrt(2.0 / 3.0)
    psi_closed = np.array(
        [
            [-s2 + 1 / s6, -s23, s2 + 1 / s6],
            [1 / s2 - 1 / s6, s23, -(1 / s2 + 1 / s6)],
            [1 / math.sqrt(3.0)] * 3,
        ],
        dtype=complex,
    ).T
    phi2_closed = np.array(
        [
            [(-3 + s3) / (2 * s2), -math.sqrt(3 * (2 + s3)) / 2],
            [(-6 + s3) / (2 * s2), -(3 + 2 * s3) / (2 * s2)],
        ],
        dtype=complex,
    ).T
    psi2_closed = np.array(
        [
            [math.sqrt(1.5) + 3 / (2 * s2), (-6 + s3) / (2 * s2)],
            [-math.sqrt(3 * (2 + s3)) / 2, math.sqrt(3 * (2 - s3)) / 2],
        ],
        dtype=complex,
    ).T
    expected = {
        "case": "NonInvertible",
        "theta1_closed_form": theta1_3x3_closed_form(*es),
        "theta2": theta2_3x3_closed_form(es[0], es[1]),
        "n1": np.array(
            [[1, -0.5, -0.5], [-0.5, 1, -0.5], [-0.5, -0.5, 1]], dtype=complex
        ),
        "n2": 1.5 * np.eye(2),
        "kernel_set": (2,),
        "tilde_k": np.array([1.5, 1.5, 0.0]),
        "psi1": psi_closed,
        "phi2_survivors": phi2_closed,
        "psi2_survivors": psi2_closed,
        "pairing_level2": 1.5,
    }
    return Fixture(
        id="ex3x3",
        parameters={"e1": es[0], "e2": es[1], "e3": es[2]},
        truncation=3,
        theta1=theta1,
        x=x,
        expected=expected,
        model=model,
    )


def fixture_shift(eps, theta, n: int) -> Fixture:
    """Diagonal seed with a weighted-shift intertwiner on n modes.

    Theta1 = sum eps_k e^{i theta_k} |e_k><e_k| on C^n; X maps C^{n-1} into
    C^n with X e_k = sqrt(eps_{k+1}) e_{k+1}, so X-adjoint lowers and
    annihilates e_0.  The partner is the once-shifted diagonal.
    """
    if not isinstance(eps, EpsilonSequence):
        eps = EpsilonSequence(np.asarray(eps, dtype=float))
    if n < 2:
        raise DimensionError("shift example needs at least 2 modes")
    if len(eps) < n:
        raise DimensionError(f"need {n} epsilon values, got {len(eps)}")
    if not eps.strictly_increasing:
        raise ParameterError("epsilon values must increase strictly from 0")
    theta_arr = np.asarray(theta, dtype=float)
    if theta_arr.ndim == 0:
        theta_arr = np.full(n, float(theta_arr))
    if theta_arr.size < n:
        raise ParameterError(f"need {n} phase angles, got {theta_arr.size}")
    theta_arr = theta_arr[:n]
    if np.all(np.abs(np.sin(theta_arr)) <= 1e-15):
        raise ParameterError(
            "all phases are multiples of pi; the example needs a genuinely "
            "non-self-adjoint seed"
        )
    values = eps.values[:n] * np.exp(1j * theta_arr)
    theta1 = np.diag(values)
    x = np.zeros((n, n - 1), dtype=complex)
    for k in range(n - 1):
        x[k + 1, k] = math.sqrt(eps.values[k + 1])
    eigensystem = Eigensystem(values=values, vectors=np.eye(n, dtype=complex))
    model = build_model(theta1, x, eigensystem=eigensystem)
    expected = {
        "case": "NonInvertible",
        "n1_diag": eps.values[:n].copy(),
        "n2_diag": eps.values[1:n].copy(),
        "kernel_set": (0,),
        "tilde_k": eps.values[:n].copy(),
        "theta2_diag": values[1:].copy(),
    }
    return Fixture(
        id="shift",
        parameters={"eps": eps.values[:n].copy(), "theta": theta_arr.copy(), "n": n},
        truncation=n,
        theta1=theta1,
        x=x,
        expected=expected,
        model=model,
    )


def _pair_swap(n_blocks: int) -> np.ndarray:
    p = np.zeros((2 * n_blocks, 2 * n_blocks), dtype=complex)
    for j in range(n_blocks):
        p[2 * j, 2 * j + 1] = 1.0
        p[2 * j + 1, 2 * j] = 1.0
    return p


def _block_operators(alpha, beta, n_blocks, sign: float):
    """Block-diagonal seed and rank-1-per-block frame analysis map.

    ``sign`` is the relative sign of the two frame vectors per block: +1
    keeps the plus-combination eigenvectors, -1 keeps the minus ones.
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    if alpha.size != beta.size:
        raise DimensionError("alpha and beta lists must have equal length")
    if alpha.size < n_blocks:
        raise DimensionError(f"need {n_blocks} (alpha, beta) pairs, got {alpha.size}")
    alpha = alpha[:n_blocks]
    beta = beta[:n_blocks]
    dim = 2 * n_blocks
    theta1 = np.zeros((dim, dim), dtype=complex)
    x = np.zeros((dim, n_blocks), dtype=complex)
    inv_s2 = 1.0 / math.sqrt(2.0)
    for j in range(n_blocks):
        theta1[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = [
            [alpha[j], beta[j]],
            [beta[j], alpha[j]],
        ]
        x[2 * j, j] = inv_s2
        x[2 * j + 1, j] = sign * inv_s2
    # eigenvalue order: minus combination first within each block
    values = np.empty(dim, dtype=complex)
    vectors = np.zeros((dim, dim), dtype=complex)
    for j in range(n_blocks):
        values[2 * j] = alpha[j] - beta[j]
        values[2 * j + 1] = alpha[j] + beta[j]
        vectors[2 * j, 2 * j] = inv_s2
        vectors[2 * j + 1, 2 * j] = -inv_s2
        vectors[2 * j, 2 * j + 1] = inv_s2
        vectors[2 * j + 1, 2 * j + 1] = inv_s2
    return alpha, beta, theta1, x, values, vectors


def fixture_block(alpha, beta, n_blocks: int) -> Fixture:
    """2n x 2n block seed with the equal-pair tight frame.

    Each 2x2 block [[a, b], [b, a]] has eigenvectors (1, -1)/sqrt(2)
    (listed first, eigenvalue a-b) and (1, 1)/sqrt(2) (eigenvalue a+b).
    The frame sends both members of pair j to e_j/sqrt(2), so the minus
    combinations (even positions) form the kernel and the partner is
    diag(a_j + b_j).
    """
    alpha, beta, theta1, x, values, vectors = _block_operators(
        alpha, beta, n_blocks, sign=+1.0
    )
    eigensystem = Eigensystem(values=values, vectors=vectors)
    model = None
    if eigensystem.simple_spectrum:
        model = build_model(theta1, x, eigensystem=eigensystem)
    expected = {
        "case": "NonInvertible",
        "theta2": np.diag(alpha + beta),
        "n2": np.eye(n_blocks, dtype=complex),
        "n1": (np.eye(2 * n_blocks, dtype=complex) + _pair_swap(n_blocks)) / 2,
        "kernel_set": tuple(range(0, 2 * n_blocks, 2)),
        "tilde_k": np.array([0.0, 1.0] * n_blocks),
        "values": values,
    }
    if model is None:
        expected["theta2_direct"] = build_case3(theta1, x)
    return Fixture(
        id="block",
        parameters={"alpha": alpha.copy(), "beta": beta.copy(), "n_blocks": n_blocks},
        truncation=2 * n_blocks,
        theta1=theta1,
        x=x,
        expected=expected,
        model=model,
    )


def coherent_demo(alpha1: float, n_blocks: int) -> Fixture:
    """Block model tuned so the seed spectrum is the linear ladder 2*n*alpha1.

    Block j (0-based) uses alpha = (4j+1)*alpha1, beta = alpha1, giving
    eigenvalues 4j*alpha1 and (4j+2)*alpha1: merged and sorted they are
    eps_n = 2*n*alpha1 starting at 0.  The frame here alternates sign, so
    the surviving eigenvectors are the minus combinations (even positions)
    and the partner is diag(4l*alpha1) with tilde_k = 1.
    """
    alpha1 = float(alpha1)
    if alpha1 <= 0:
        raise ParameterError("alpha1 must be positive")
    if n_blocks < 2:
        raise DimensionError("need at least 2 blocks")
    alpha = np.array([(4 * j + 1) * alpha1 for j in range(n_blocks)])
    beta = np.full(n_blocks, alpha1)
    _, _, theta1, x, values, vectors = _block_operators(
        alpha, beta, n_blocks, sign=-1.0
    )
    eigensystem = Eigensystem(values=values, vectors=vectors)
    model = build_model(theta1, x, eigensystem=eigensystem)
    dim = 2 * n_blocks
    eps = EpsilonSequence(2.0 * alpha1 * np.arange(dim))
    survivors = tuple(range(0, dim, 2))
    expected = {
        "case": "NonInvertible",
        "epsilon": eps.values.copy(),
        "kernel_set": tuple(range(1, dim, 2)),
        "survivors": survivors,
        "theta2_diag": 4.0 * alpha1 * np.arange(n_blocks),
        "tilde_k_survivor": 1.0,
        # N(|z|) = exp(-rate * |z|^2) for the level-1 states
        "normalization_rate": 1.0 / (4.0 * alpha1),
        # survivor factorials keep original indices: prod of eps_1..eps_{2l}
        "level2_factorials": np.array(
            [(2.0 * alpha1) ** (2 * l) * math.factorial(2 * l) for l in range(n_blocks)]
        ),
    }
    return Fixture(
        id="coherent_demo",
        parameters={"alpha1": alpha1, "n_blocks": n_blocks},
        truncation=dim,
        theta1=theta1,
        x=x,
        expected=expected,
        model=model,
    )


_FIXTURE_BUILDERS = {
    "ex2x2": lambda p: fixture_2x2(p.get("x11", 1.0), p.get("x12", 1.0j)),
    "ex3x3": lambda p: fixture_3x3(p.get("e1", 1.0), p.get("e2", 2.0), p.get("e3", 3.0)),
    "shift": lambda p: fixture_shift(
        EpsilonSequence.linear(p.get("s", 1.0), int(p.get("n", 8))),
        p.get("theta", math.pi / 4.0),
        int(p.get("n", 8)),
    ),
    "block": lambda p: fixture_block(
        p.get("alpha", np.arange(1.0, float(int(p.get("n_blocks", 4))) + 1.0)),
        p.get("beta", 0.5j * np.arange(1.0, float(int(p.get("n_blocks", 4))) + 1.0)),
        int(p.get("n_blocks", 4)),
    ),
    "coherent_demo": lambda p: coherent_demo(
        p.get("alpha1", 1.0), int(p.get("n_blocks", 32))
    ),
}


def get_fixture(fixture_id: str, **params) -> Fixture:
    """Build a fixture by id with keyword parameters (defaults documented)."""
    if fixture_id not in _FIXTURE_BUILDERS:
        raise ParameterError(
            f"unknown fixture id {fixture_id!r}; choose from {FIXTURE_IDS}"
        )
    return _FIXTURE_BUILDERS[fixture_id](params)


# ---------------------------------------------------------------------------
# pseudo-fermion pairs


@dataclass(frozen=True)
class PseudoFermionPair:
    """2x2 pair with {a, b} = 1 and a^2 = b^2 = 0.

    gamma is the effective scalar 1/(alpha - beta); its square equals
    -alpha12*beta12 by the admissibility constraint.
    """

    a: np.ndarray
    b: np.ndarray
    alpha: complex
    beta: complex
    alpha12: complex
    beta12: complex
    gamma: complex

    def anticommutator_defect(self) -> float:
        return opnorm(self.a @ self.b + self.b @ self.a - np.eye(2))

    def nilpotency_defect(self) -> float:
        return max(opnorm(self.a @ self.a), opnorm(self.b @ self.b))

    def hamiltonian(self, omega: complex, rho: complex) -> np.ndarray:
        return omega * (self.b @ self.a) + rho * np.eye(2)

    def hamiltonian_closed_form(self, omega: complex, rho: complex) -> np.ndarray:
        wg = omega * self.gamma
        return np.array(
            [
                [wg * self.alpha + rho, wg],
                [-wg * self.alpha * self.beta, -wg * self.beta + rho],
            ],
            dtype=complex,
        )


def pseudo_fermion(
    alpha: complex,
    beta: complex,
    alpha12: complex,
    beta12: complex,
    tol: float = 1e-10,
) -> PseudoFermionPair:
    """Rank-1 nilpotent pair a = alpha12*[[alpha,1],[-alpha^2,-alpha]], etc.

    Admissibility requires (alpha-beta)^2 * (-alpha12*beta12) = 1; the
    effective gamma is 1/(alpha-beta) (the constraint only fixes gamma^2,
    the product b a fixes the branch).
    """
    alpha, beta = complex(alpha), complex(beta)
    alpha12, beta12 = complex(alpha12), complex(beta12)
    gamma_sq = -alpha12 * beta12
    defect = abs((alpha - beta) ** 2 * gamma_sq - 1.0)
    if defect > tol:
        raise ParameterError(
            f"(alpha-beta)^2 * (-alpha12*beta12) = 1 violated by {defect:.3e}"
        )
    a = alpha12 * np.array([[alpha, 1.0], [-alpha**2, -alpha]], dtype=complex)
    b = beta12 * np.array([[beta, 1.0], [-beta**2, -beta]], dtype=complex)
    return PseudoFermionPair(
        a=a,
        b=b,
        alpha=alpha,
        beta=beta,
        alpha12=alpha12,
        beta12=beta12,
        gamma=1.0 / (alpha - beta),
    )


def ex3x3_pseudo_fermion_params(e1: float, e2: float) -> dict:
    """Parameter set whose Hamiltonian reproduces the 3x3 fixture's partner."""
    s3 = _SQRT3
    alpha = -2.0 - s3
    beta = (s3 + 1.0) / (3.0 * s3 - 7.0)
    alpha12 = math.sqrt((38.0 - 21.0 * s3) / 8.0)
    wg = (7.0 - 3.0 * s3) * (e1 - e2) / 4.0
    return {
        "alpha": alpha,
        "beta": beta,
        "alpha12": alpha12,
        "beta12": -alpha12,
        "omega": wg * (alpha - beta),
        "rho": complex(e1),
    }


def block_pseudo_fermion_params(alpha_j: complex, beta_j: complex) -> dict:
    """Pseudo-fermion parameters realizing the block [[a_j, b_j], [b_j, a_j]]."""
    beta_j = complex(beta_j)
    if beta_j == 0:
        raise ParameterError(
            "beta_j = 0 collapses the block to a multiple of the identity; "
            "omega = 2*beta_j would vanish"
        )
    return {
        "alpha": 1.0,
        "beta": -1.0,
        "alpha12": 0.5,
        "beta12": -0.5,
        "omega": 2.0 * beta_j,
        "rho": complex(alpha_j) - beta_j,
    }


# ---------------------------------------------------------------------------
# deformed ladder-pair verification


def standard_boson(dim: int):
    """Truncated boson pair: a lowers, b = a-adjoint raises; eps_n = n."""
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = math.sqrt(n)
    eps = EpsilonSequence(np.arange(dim, dtype=float))
    e0 = np.zeros(dim, dtype=complex)
    e0[0] = 1.0
    return a, a.conj().T, eps, e0.copy(), e0.copy()


def nlpb_verify(a, b, eps, phi0, eta0, n_modes: int, tol: float = 1e-10) -> RelationReport:
    """Check a deformed ladder pair against its defining properties.

    Builds Phi_n = b^n Phi_0 / sqrt(eps_n!) and eta_n = (a-adjoint)^n eta_0
    / sqrt(eps_n!), then verifies lowering/raising one step at a time, the
    eigen-equations of M = b a and its adjoint, biorthonormality of the two
    families, and the shifted-eigenvector property of a b.  The basis
    property is only decidable at truncation, so it is reported as the
    condition number of the Phi column matrix, never as a boolean.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError("a and b must be square with equal shape")
    dim = a.shape[0]
    if not isinstance(eps, EpsilonSequence):
        eps = EpsilonSequence(np.asarray(eps, dtype=float))
    if n_modes < 2:
        raise DimensionError("need at least 2 modes to check ladder steps")
    if len(eps) < n_modes:
        raise DimensionError(f"need {n_modes} epsilon values, got {len(eps)}")
    phi0 = np.asarray(phi0, dtype=complex).reshape(-1)
    eta0 = np.asarray(eta0, dtype=complex).reshape(-1)
    if phi0.size != dim or eta0.size != dim:
        raise DimensionError("seed vectors must match the operator dimension")

    n0 = np.linalg.norm(phi0)
    m0 = np.linalg.norm(eta0)
    if n0 == 0 or m0 == 0:
        raise SeedVectorError("seed vectors must be non-zero")
    r1 = np.linalg.norm(a @ phi0) / n0
    if r1 > tol:
        raise SeedVectorError(f"a Phi_0 has relative norm {r1:.3e}; not a lowest mode")
    r2 = np.linalg.norm(b.conj().T @ eta0) / m0
    if r2 > tol:
        raise SeedVectorError(
            f"b-adjoint eta_0 has relative norm {r2:.3e}; not a lowest mode"
        )
    overlap = np.vdot(eta0, phi0)
    if abs(overlap) <= 1e-12 * n0 * m0:
        raise SeedVectorError("seed vectors are (numerically) orthogonal")
    eta0 = eta0 / np.conj(overlap)

    facts = eps.factorials(n_modes)
    phis = np.zeros((dim, n_modes), dtype=complex)
    etas = np.zeros((dim, n_modes), dtype=complex)
    phis[:, 0] = phi0
    etas[:, 0] = eta0
    bp = phi0.copy()
    ae = eta0.copy()
    ah = a.conj().T
    for n in range(1, n_modes):
        bp = b @ bp
        ae = ah @ ae
        phis[:, n] = bp / math.sqrt(facts[n])
        etas[:, n] = ae / math.sqrt(facts[n])

    residuals: dict[str, float] = {}
    details: dict = {}
    lowering = []
    raising = []
    for n in range(1, n_modes):
        root = math.sqrt(eps.values[n])
        scale = max(np.linalg.norm(phis[:, n - 1]), 1e-300)
        lowering.append(
            float(np.linalg.norm(a @ phis[:, n] - root * phis[:, n - 1]) / (root * scale + 1e-300))
        )
        scale = max(np.linalg.norm(etas[:, n - 1]), 1e-300)
        raising.append(
            float(
                np.linalg.norm(b.conj().T @ etas[:, n] - root * etas[:, n - 1])
                / (root * scale + 1e-300)
            )
        )
    residuals["p3_lowering"] = max(lowering)
    residuals["p3_raising"] = max(raising)
    details["p3_lowering_per_mode"] = lowering
    details["p3_raising_per_mode"] = raising

    m = b @ a
    sm = max(opnorm(m), 1e-300)
    em, ema = [], []
    for n in range(n_modes):
        e = eps.values[n]
        em.append(
            float(
                np.linalg.norm(m @ phis[:, n] - e * phis[:, n])
                / (sm * np.linalg.norm(phis[:, n]))
            )
        )
        ema.append(
            float(
                np.linalg.norm(m.conj().T @ etas[:, n] - e * etas[:, n])
                / (sm * np.linalg.norm(etas[:, n]))
            )
        )
    residuals["eigen_m"] = max(em)
    residuals["eigen_m_adjoint"] = max(ema)
    details["eigen_m_per_mode"] = em

    gram = etas.conj().T @ phis
    residuals["biorthogonality"] = float(np.max(np.abs(gram - np.eye(n_modes))))

    shifted = []
    ab = a @ b
    sab = max(opnorm(ab), 1e-300)
    for n in range(1, n_modes):
        v = a @ phis[:, n]
        nv = np.linalg.norm(v)
        if nv <= 1e-300:
            continue
        shifted.append(float(np.linalg.norm(ab @ v - eps.values[n] * v) / (sab * nv)))
    residuals["shifted_eigen"] = max(shifted) if shifted else 0.0

    sing = np.linalg.svd(phis, compute_uv=False)
    details["phi_condition_number"] = float(sing[0] / max(sing[-1], 1e-300))

    return RelationReport(residuals=residuals, tolerance=tol, details=details)
