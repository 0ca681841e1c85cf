"""Decompositions of a state into weighted components and the bounds they imply.

Local orthogonality is certified only through the sufficient condition of
pairwise-orthogonal local supports; the general operational notion (correlate
to an ancilla and reset, all by local means) is not decidable here. A positive
certificate is sound, a negative one is inconclusive.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .curves import PointKind, ProtocolPoint
from .linalg import (
    DensityOperator,
    PureState,
    hermitian_eigensystem,
    partial_trace,
    support_projector,
    validate_density,
)
from .measures import eof_2q, pure_state_entanglement, von_neumann_entropy
from .tolerances import DEFAULT, Tolerances

_SEARCH_SEED = 20608  # fixed so repeated runs certify identically
_MEMBERSHIP_TOL = 1e-10  # 1 - <ab|P|ab> for a product vector to count as inside

# Bell basis columns: (|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2, (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2
_BELL_BASIS = np.array(
    [
        [1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, -1.0],
        [1.0, -1.0, 0.0, 0.0],
    ],
    dtype=complex,
) / math.sqrt(2.0)


class ComponentCostUnknown(ValueError):
    """No rule yields the formation cost of a mixture component."""


class NotCertifiedOrthogonal(ValueError):
    """The operation needs a locally-orthogonal decomposition certificate."""


class NotApplicable(ValueError):
    """The closed-form values do not apply to this state."""


def _as_density(state) -> DensityOperator:
    return state.projector() if isinstance(state, PureState) else state


@dataclass(frozen=True)
class Ensemble:
    """Weighted mixture of component states on one pair of dimensions."""

    components: tuple[tuple[float, DensityOperator | PureState], ...]

    def __post_init__(self):
        comps = tuple((float(w), s) for w, s in self.components)
        if not comps:
            raise ValueError("ensemble needs at least one component")
        dims = {(s.dim_a, s.dim_b) for _, s in comps}
        if len(dims) != 1:
            raise ValueError(f"components live on different dimensions: {sorted(dims)}")
        weights = np.array([w for w, _ in comps])
        if weights.min() < -DEFAULT.probability_drift:
            raise ValueError(f"negative component weight {weights.min()}")
        drift = abs(float(weights.sum()) - 1.0)
        if drift > DEFAULT.probability_drift:
            raise ValueError(f"component weights sum to {weights.sum()}, drift {drift:.3g}")
        object.__setattr__(self, "components", comps)

    @property
    def dims(self) -> tuple[int, int]:
        _, s = self.components[0]
        return s.dim_a, s.dim_b


@dataclass(frozen=True)
class ComponentCost:
    """Formation bookkeeping for one component.

    ``resettable`` records whether the component's own pure-state
    decomposition is locally orthogonal, i.e. whether the instruction set
    used to prepare it can be reclaimed.
    """

    ec: float
    s: float
    resettable: bool


@dataclass(frozen=True)
class LocalOrthogonality:
    """Outcome of the pairwise local-support orthogonality certificate."""

    certified: bool
    side: str | None = None


def ensemble_average(e: Ensemble, tol: Tolerances = DEFAULT) -> DensityOperator:
    """Weighted average of the components, validated as a density operator."""
    dim_a, dim_b = e.dims
    total = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for w, s in e.components:
        total += w * _as_density(s).matrix
    return validate_density(total, dim_a, dim_b, tol)


def local_orthogonality_check(e: Ensemble, tol: Tolerances = DEFAULT) -> LocalOrthogonality:
    """Certify pairwise-orthogonal component supports on one side.

    Returns the first side ('A' before 'B') on which every pair of reduced
    component supports has projector overlap within tolerance. A negative
    result is inconclusive for the general operational definition.
    """
    for side in ("A", "B"):
        projectors = [
            support_projector(partial_trace(_as_density(s), side).matrix, tol)
            for _, s in e.components
        ]
        ok = all(
            float(np.linalg.norm(projectors[i] @ projectors[j])) <= tol.overlap
            for i in range(len(projectors))
            for j in range(i + 1, len(projectors))
        )
        if ok:
            return LocalOrthogonality(True, side)
    return LocalOrthogonality(False, None)


class ProductBasis(enum.Enum):
    PRODUCT = "product"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProductBasisResult:
    """Verdict plus, when found, the product eigenbasis itself.

    ``basis`` holds (eigenvalue, a_factor, b_factor) triples covering the
    whole space, eigenspace by eigenspace.
    """

    status: ProductBasis
    basis: tuple[tuple[float, np.ndarray, np.ndarray], ...] | None = None


def _schmidt_factors(vec: np.ndarray, dim_a: int, dim_b: int) -> tuple[float, np.ndarray, np.ndarray]:
    """Second Schmidt coefficient and the dominant product factors of a vector."""
    m = vec.reshape(dim_a, dim_b)
    w, v = hermitian_eigensystem(m @ m.conj().T)
    a = v[:, -1]
    b_raw = a.conj() @ m
    nb = float(np.linalg.norm(b_raw))
    b = b_raw / nb if nb > 0.0 else np.eye(dim_b, dtype=complex)[0]
    c2 = math.sqrt(max(0.0, 1.0 - min(1.0, float(w[-1]))))
    return c2, a, b


def _product_vector_in_subspace(
    proj: np.ndarray, dim_a: int, dim_b: int, rng, restarts: int, convergence: float
):
    """Alternating maximization of the top Schmidt overlap with a subspace.

    Returns (a, b) with a (x) b inside the subspace within tolerance, or None
    if no restart certifies membership.
    """
    p4 = proj.reshape(dim_a, dim_b, dim_a, dim_b)
    for start in range(restarts):
        if start == 0:
            b = np.zeros(dim_b, dtype=complex)
            b[0] = 1.0
        else:
            raw = rng.normal(size=dim_b) + 1j * rng.normal(size=dim_b)
            b = raw / np.linalg.norm(raw)
        value = -1.0
        a = np.zeros(dim_a, dtype=complex)
        for _ in range(200):
            m_a = np.einsum("j,ijkl,l->ik", b.conj(), p4, b)
            w, v = hermitian_eigensystem((m_a + m_a.conj().T) / 2.0)
            a = v[:, -1]
            m_b = np.einsum("i,ijkl,k->jl", a.conj(), p4, a)
            w, v = hermitian_eigensystem((m_b + m_b.conj().T) / 2.0)
            b = v[:, -1]
            new_value = float(w[-1])
            if abs(new_value - value) < convergence:
                value = new_value
                break
            value = new_value
        if 1.0 - value <= _MEMBERSHIP_TOL:
            return a, b
    return None


def _product_basis_of_subspace(
    columns: np.ndarray, dim_a: int, dim_b: int, rng, restarts: int = 32, convergence: float = 1e-12
):
    """Orthonormal product basis of the span of the given columns, or None."""
    proj = columns @ columns.conj().T
    found = []
    for _ in range(columns.shape[1]):
        hit = _product_vector_in_subspace(proj, dim_a, dim_b, rng, restarts, convergence)
        if hit is None:
            return None
        a, b = hit
        u = proj @ np.kron(a, b)
        u = u / np.linalg.norm(u)  # deflate along the in-subspace representative
        proj = proj - np.outer(u, u.conj())
        found.append((a, b))
    return found


def product_eigenbasis_check(rho: DensityOperator, tol: Tolerances = DEFAULT) -> ProductBasisResult:
    """Decide whether a two-qubit state has an orthonormal product eigenbasis.

    Nondegenerate eigenvectors are tested directly by Schmidt rank; an
    entangled one settles the answer as NO. Degenerate eigenspaces are
    searched for a product basis by alternating maximization with deflation;
    a failed search leaves that space, and so the verdict, INCONCLUSIVE.
    """
    if (rho.dim_a, rho.dim_b) != (2, 2):
        raise ValueError(f"product-eigenbasis check needs a two-qubit state, got dims "
                         f"({rho.dim_a}, {rho.dim_b})")
    w, v = hermitian_eigensystem(rho.matrix, tol)
    groups: list[list[int]] = [[0]]
    for k in range(1, len(w)):
        if w[k] - w[groups[-1][-1]] <= tol.eigen_residual:
            groups[-1].append(k)
        else:
            groups.append([k])
    rng = np.random.default_rng(_SEARCH_SEED)
    basis: list[tuple[float, np.ndarray, np.ndarray]] = []
    inconclusive = False
    pending: list[tuple[list[int], float]] = []
    for group in groups:
        mean_val = float(np.mean(w[group]))
        if len(group) == 1:
            c2, a, b = _schmidt_factors(v[:, group[0]], rho.dim_a, rho.dim_b)
            if c2 > tol.schmidt:
                return ProductBasisResult(ProductBasis.NO)
            basis.append((mean_val, a, b))
        else:
            pending.append((group, mean_val))
    for group, mean_val in pending:
        found = _product_basis_of_subspace(v[:, group], rho.dim_a, rho.dim_b, rng)
        if found is None:
            inconclusive = True
            continue
        basis.extend((mean_val, a, b) for a, b in found)
    if inconclusive:
        return ProductBasisResult(ProductBasis.INCONCLUSIVE)
    return ProductBasisResult(ProductBasis.PRODUCT, tuple(basis))


def _component_cost(state, tol: Tolerances) -> ComponentCost:
    """Formation cost of a single component under the computable rules.

    Pure components cost their entanglement. A mixed component whose spectral
    decomposition is locally orthogonal costs the weighted entanglement of its
    eigenvectors, and its entropy stays reclaimable. A two-qubit
    Bell-diagonal component falls back to the formation-entanglement oracle,
    but its internal instruction set cannot be reclaimed. Anything else is a
    hard error: no point gets emitted without a protocol behind it.
    """
    if isinstance(state, PureState):
        return ComponentCost(ec=pure_state_entanglement(state, tol), s=0.0, resettable=True)
    purity = state.purity()
    if purity >= 1.0 - tol.purity:
        _, v = hermitian_eigensystem(state.matrix, tol)
        psi = PureState(v[:, -1], state.dim_a, state.dim_b)
        return ComponentCost(ec=pure_state_entanglement(psi, tol), s=0.0, resettable=True)
    w, v = hermitian_eigensystem(state.matrix, tol)
    keep = w > tol.support_cutoff
    weights = w[keep] / float(np.sum(w[keep]))
    vectors = [PureState(v[:, k], state.dim_a, state.dim_b) for k in np.nonzero(keep)[0]]
    sub = Ensemble(tuple(zip(weights, vectors)))
    if local_orthogonality_check(sub, tol).certified:
        ec = float(sum(wk * pure_state_entanglement(psi, tol) for wk, psi in zip(weights, vectors)))
        return ComponentCost(ec=ec, s=von_neumann_entropy(state, tol), resettable=True)
    if (state.dim_a, state.dim_b) == (2, 2) and _is_bell_diagonal(state, tol):
        return ComponentCost(
            ec=eof_2q(state, tol), s=von_neumann_entropy(state, tol), resettable=False
        )
    raise ComponentCostUnknown(
        "component is mixed, not certified locally decomposable, and not Bell-diagonal"
    )


def _is_bell_diagonal(rho: DensityOperator, tol: Tolerances) -> bool:
    m = _BELL_BASIS.conj().T @ rho.matrix @ _BELL_BASIS
    return float(np.max(np.abs(m - np.diag(np.diagonal(m))))) <= tol.overlap


def formation_point(e: Ensemble, tol: Tolerances = DEFAULT) -> ProtocolPoint:
    """Intermediate formation point of a decomposition.

    Communication is the weighted component cost. The information cost is the
    qubit count minus whatever entropy the protocol can reclaim: component
    entropies whose instruction sets reset locally, or the full mixture
    entropy when the whole decomposition is certified locally orthogonal
    (then formation is reversible).
    """
    avg = ensemble_average(e, tol)
    n = avg.n_qubits
    costs = [(w, _component_cost(s, tol)) for w, s in e.components]
    q = float(sum(w * c.ec for w, c in costs))
    if all(c.resettable for _, c in costs) and local_orthogonality_check(e, tol).certified:
        info_cost = n - von_neumann_entropy(avg, tol)
    else:
        info_cost = n - float(sum(w * c.s for w, c in costs if c.resettable))
    return ProtocolPoint(
        q=max(q, 0.0),
        i=max(info_cost, 0.0),
        kind=PointKind.FORMATION_INTERMEDIATE,
        label="decomposition",
    )


def reversible_cost_bound(e: Ensemble, tol: Tolerances = DEFAULT) -> float:
    """Communication at which formation from this decomposition is reversible.

    Requires the local-orthogonality certificate; the value is the smaller of
    the two sides' weighted reduced-component entropies. Upper-bounds the
    true reversibility cost, evaluated on this decomposition only.
    """
    if not local_orthogonality_check(e, tol).certified:
        raise NotCertifiedOrthogonal("decomposition is not certified locally orthogonal")
    sums = []
    for side in ("A", "B"):
        sums.append(
            float(
                sum(
                    w * von_neumann_entropy(partial_trace(_as_density(s), side), tol)
                    for w, s in e.components
                )
            )
        )
    return min(sums)


def formation_surplus_bound(e: Ensemble, tol: Tolerances = DEFAULT) -> float:
    """Weighted component entropy: dissipation bound for this decomposition.

    Requires the local-orthogonality certificate and never exceeds the
    entropy of the averaged state.
    """
    if not local_orthogonality_check(e, tol).certified:
        raise NotCertifiedOrthogonal("decomposition is not certified locally orthogonal")
    value = float(sum(w * von_neumann_entropy(_as_density(s), tol) for w, s in e.components))
    ceiling = von_neumann_entropy(ensemble_average(e, tol), tol)
    if value > ceiling + 1e-9:
        raise ArithmeticError(
            f"component-entropy bound {value} exceeds the mixture entropy {ceiling}"
        )
    return value


@dataclass(frozen=True)
class AssumedExactValues:
    """Surplus and reversibility cost under the maximal-dissipation assumption."""

    surplus: float
    reversible_cost: float
    assumption_dependent: bool = True


def assumed_exact_values(rho: DensityOperator, tol: Tolerances = DEFAULT) -> AssumedExactValues:
    """Closed-form surplus S(rho) and reversible cost min(S_A, S_B).

    Applies only to mixed two-qubit states without a product eigenbasis, and
    only under the assumption that the decomposition bounds are tight; the
    result is flagged accordingly. Pure states are guarded out: their surplus
    is exactly zero and their single point comes from formation_point.
    """
    if rho.purity() >= 1.0 - tol.purity:
        raise NotApplicable("pure state: the surplus vanishes identically")
    status = product_eigenbasis_check(rho, tol).status
    if status is not ProductBasis.NO:
        raise NotApplicable(f"product-eigenbasis check returned {status.value!r}")
    s_total = von_neumann_entropy(rho, tol)
    s_a = von_neumann_entropy(partial_trace(rho, "A"), tol)
    s_b = von_neumann_entropy(partial_trace(rho, "B"), tol)
    return AssumedExactValues(surplus=s_total, reversible_cost=min(s_a, s_b))


def ensemble_to_dict(e: Ensemble) -> dict:
    """JSON-ready form: weights plus pure vectors or mixed matrices."""
    dim_a, dim_b = e.dims
    components = []
    for w, s in e.components:
        if isinstance(s, PureState):
            data = [[float(z.real), float(z.imag)] for z in s.amplitudes]
            components.append({"weight": float(w), "type": "pure", "data": data})
        else:
            data = [[[float(z.real), float(z.imag)] for z in row] for row in s.matrix]
            components.append({"weight": float(w), "type": "mixed", "data": data})
    return {"dims": [dim_a, dim_b], "components": components}


def ensemble_from_dict(d: dict, tol: Tolerances = DEFAULT) -> Ensemble:
    """Parse the ensemble JSON schema, validating every component."""
    try:
        dim_a, dim_b = (int(x) for x in d["dims"])
        raw = d["components"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed ensemble document: {exc}") from exc
    components: list[tuple[float, DensityOperator | PureState]] = []
    for entry in raw:
        weight = float(entry["weight"])
        kind = entry["type"]
        data = entry["data"]
        if kind == "pure":
            amplitudes = np.array([complex(re, im) for re, im in data])
            components.append((weight, PureState(amplitudes, dim_a, dim_b)))
        elif kind == "mixed":
            matrix = np.array([[complex(re, im) for re, im in row] for row in data])
            components.append((weight, validate_density(matrix, dim_a, dim_b, tol)))
        else:
            raise ValueError(f"component type must be 'pure' or 'mixed', got {kind!r}")
    return Ensemble(tuple(components))
