"""Brute-force reference paths used to cross-check the analytic mode sums.

None of these routines touch the closed-form dispersion or the cosine mode
sums: normal modes come from a dense eigendecomposition of the real-space
coupling matrix, thermal moments from a truncated Fock-space density
matrix, and negativity from symplectic eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .covariance import TwoSiteCovariance, canonical_separation, coth_factors, symplectic_form
from .errors import BadSeparation, CutoffInsufficient, TooLarge, Unphysical, ZeroModeDivergence
from .model import LatticeSpec

MAX_DENSE_SITES = 10_000
MAX_FOCK_DIM = 1_000_000
EIGEN_CLAMP = 1e-12
TAIL_THRESHOLD = 1e-6
PHYSICALITY_TOL = 1e-8


@dataclass(frozen=True)
class DenseModeDecomposition:
    spec: LatticeSpec
    coupling_matrix: np.ndarray  # units omega^2
    frequencies: np.ndarray  # units omega, ascending
    eigenvectors: np.ndarray  # columns are normal modes


@dataclass(frozen=True)
class FockOracleConfig:
    sites: int
    cutoff: int
    xi: float

    def __post_init__(self):
        if not 2 <= self.sites <= 4:
            raise ValueError(f"sites must be in [2, 4], got {self.sites}")
        if self.cutoff < 2:
            raise ValueError(f"cutoff must be >= 2, got {self.cutoff}")
        if not self.xi > 0:
            raise ValueError(f"xi must be > 0, got {self.xi}")

    @property
    def hilbert_dimension(self) -> int:
        return (self.cutoff + 1) ** self.sites


def coupling_matrix(spec: LatticeSpec) -> np.ndarray:
    """Real-space potential matrix K (units omega^2) of one polarization branch."""
    n_sites = spec.total_sites()
    if n_sites > MAX_DENSE_SITES:
        raise TooLarge(f"{n_sites} sites exceeds dense limit {MAX_DENSE_SITES}")
    shape = (spec.side,) * spec.dimension
    k = np.zeros((n_sites, n_sites))
    k[np.diag_indices(n_sites)] = spec.trap_ratio**2 + 2.0 * spec.dimension
    coords = np.indices(shape).reshape(spec.dimension, -1)
    here = np.arange(n_sites)
    for axis in range(spec.dimension):
        shifted = coords.copy()
        shifted[axis] = (shifted[axis] + 1) % spec.side
        there = np.ravel_multi_index(tuple(shifted), shape)
        k[here, there] -= 1.0
        k[there, here] -= 1.0
    return k


def dense_modes(spec: LatticeSpec) -> DenseModeDecomposition:
    k = coupling_matrix(spec)
    evals, evecs = np.linalg.eigh(k)
    if evals.min() < -EIGEN_CLAMP:
        raise ArithmeticError(f"coupling matrix has eigenvalue {evals.min():.3g} < 0")
    # eigensolver noise around the zero mode would otherwise become ~1e-8 after the square root
    evals = np.where(np.abs(evals) <= EIGEN_CLAMP, 0.0, evals)
    freqs = np.sqrt(evals)
    return DenseModeDecomposition(spec=spec, coupling_matrix=k, frequencies=freqs, eigenvectors=evecs)


def site_index(spec: LatticeSpec, site) -> int:
    if np.ndim(site) == 0:
        return int(site)
    return int(np.ravel_multi_index(tuple(int(c) % spec.side for c in site), (spec.side,) * spec.dimension))


def covariance_from_modes(decomp: DenseModeDecomposition, temperature: float, site_r, site_p) -> TwoSiteCovariance:
    """Two-site covariance from the eigenvectors of K at scaled temperature ``temperature``."""
    spec = decomp.spec
    i, j = site_index(spec, site_r), site_index(spec, site_p)
    if i == j:
        raise BadSeparation("the two sites must differ")
    x = decomp.frequencies
    if x.min() <= 0.0:
        raise ZeroModeDivergence("zero-frequency normal mode present")
    c = coth_factors(x, temperature)
    v = decomp.eigenvectors
    pos, mom = c / x, x * c
    shape = (spec.side,) * spec.dimension
    ci, cj = np.unravel_index(i, shape), np.unravel_index(j, shape)
    r = canonical_separation([b - a for a, b in zip(ci, cj)], spec.side)
    return TwoSiteCovariance(
        a=float(v[i] ** 2 @ pos),
        b=float(v[i] ** 2 @ mom),
        e=float((v[i] * v[j]) @ pos),
        f=float((v[i] * v[j]) @ mom),
        separation=r,
        temperature=float(temperature),
    )


def _site_operator(single: sparse.spmatrix, site: int, sites: int, dim: int) -> sparse.csr_matrix:
    out = sparse.identity(1, format="csr")
    eye = sparse.identity(dim, format="csr")
    for s in range(sites):
        out = sparse.kron(out, single if s == site else eye, format="csr")
    return out


@dataclass(frozen=True)
class FockSystem:
    hamiltonian: sparse.csr_matrix  # units hbar*omega, zero-point energy included
    positions: list
    momenta: list
    top_projectors: list


def fock_system(config: FockOracleConfig, spec: LatticeSpec) -> FockSystem:
    """Lattice Hamiltonian in a truncated site occupation basis.

    Each site's ladder operators are those of its local oscillator of
    frequency sqrt(delta^2 + 2 omega^2); the bond couplings -omega^2 u_R u_P
    are added as truncated operators.
    """
    if spec.dimension != 1 or spec.side != config.sites:
        raise ValueError("the Fock oracle needs a 1D spec with side == config.sites")
    if config.hilbert_dimension > MAX_FOCK_DIM:
        raise TooLarge(f"Hilbert space dimension {config.hilbert_dimension} exceeds {MAX_FOCK_DIM}")
    dim = config.cutoff + 1
    sites = config.sites
    omega_loc = math.sqrt(spec.trap_ratio**2 + 2.0)
    lower = sparse.diags(np.sqrt(np.arange(1, dim, dtype=float)), 1, format="csr")
    raise_ = lower.T.tocsr()
    u1 = (lower + raise_) / math.sqrt(2.0 * omega_loc)
    p1 = 1j * math.sqrt(omega_loc / 2.0) * (raise_ - lower)
    local = sparse.diags(omega_loc * (np.arange(dim) + 0.5), format="csr")
    top = sparse.diags(np.eye(dim)[-1], format="csr")

    u = [_site_operator(u1, s, sites, dim) for s in range(sites)]
    p = [_site_operator(p1, s, sites, dim) for s in range(sites)]
    h = sum(_site_operator(local, s, sites, dim) for s in range(sites))
    # each periodic bond once; at sites == 2 the pair would be counted twice
    bonds = {tuple(sorted((s, (s + 1) % sites))) for s in range(sites)}
    for a, b in sorted(bonds):
        h = h - u[a] @ u[b]
    return FockSystem(
        hamiltonian=h.tocsr(),
        positions=u,
        momenta=p,
        top_projectors=[_site_operator(top, s, sites, dim) for s in range(sites)],
    )


def fock_thermal_moments(config: FockOracleConfig, spec: LatticeSpec) -> TwoSiteCovariance:
    """Nearest-neighbour moments of exp(-beta H) in the truncated basis of :func:`fock_system`."""
    if spec.trap == 0:
        raise ZeroModeDivergence("the Fock oracle needs delta > 0")
    system = fock_system(config, spec)
    evals, evecs = np.linalg.eigh(system.hamiltonian.toarray())
    beta = 2.0 * config.xi  # beta * hbar * omega
    weights = np.exp(-beta * (evals - evals[0]))
    weights /= weights.sum()

    def expect(op) -> complex:
        return complex(np.einsum("ik,ik,k->", evecs.conj(), op @ evecs, weights))

    tail = max(expect(top).real for top in system.top_projectors)
    if tail > TAIL_THRESHOLD:
        raise CutoffInsufficient(f"top occupation level holds population {tail:.3g} > {TAIL_THRESHOLD}")
    u, p = system.positions, system.momenta
    return TwoSiteCovariance(
        a=2.0 * expect(u[0] @ u[0]).real,
        b=2.0 * expect(p[0] @ p[0]).real,
        e=2.0 * expect(u[0] @ u[1]).real,
        f=2.0 * expect(p[0] @ p[1]).real,
        separation=(1,),
        temperature=1.0 / config.xi,
    )


def symplectic_eigenvalues(gamma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum (moduli of the eigenvalues of i sigma Gamma), ascending, one per mode."""
    modes = gamma.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(modes) @ gamma)))
    return moduli[::2]


def partial_transpose(gamma: np.ndarray) -> np.ndarray:
    """Time-reverse the second mode: p_P -> -p_P."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return flip @ gamma @ flip


def symplectic_negativity(cov4x4: np.ndarray) -> float:
    gamma = np.asarray(cov4x4, dtype=float)
    if gamma.shape != (4, 4) or not np.allclose(gamma, gamma.T, atol=PHYSICALITY_TOL):
        raise Unphysical("expected a symmetric 4x4 covariance matrix")
    margin = np.linalg.eigvalsh(gamma + 1j * symplectic_form(2)).min()
    if margin < -PHYSICALITY_TOL:
        raise Unphysical(f"Gamma + i sigma has eigenvalue {margin:.3g} < 0")
    nu = symplectic_eigenvalues(partial_transpose(gamma))
    return float(sum(max(0.0, -math.log(v)) for v in nu))


def random_physical_covariance(rng: np.random.Generator) -> TwoSiteCovariance:
    """Random (A, B, E, F) satisfying (A +- E)(B +- F) >= 1, i.e. a physical two-mode state."""
    u_plus, u_minus = np.exp(rng.normal(0.0, 1.0, size=2))
    p_plus = (1.0 + rng.exponential(1.0)) / u_plus
    p_minus = (1.0 + rng.exponential(1.0)) / u_minus
    return TwoSiteCovariance(
        a=0.5 * (u_plus + u_minus),
        b=0.5 * (p_plus + p_minus),
        e=0.5 * (u_plus - u_minus),
        f=0.5 * (p_plus - p_minus),
    )
