"""Sandwiched and two-parameter Renyi divergences with full case analysis.

Values are carried by :class:`DivergenceValue`: a finite nonnegative quantity
or +inf with a machine-readable reason.  Logarithms are natural.  For order
alpha > 1 the defining sandwich equation is solved by support pseudo-inverse
powers after an explicit support-nesting test; an independent least-squares
solver for the same equation is provided for cross-checking uniqueness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import AlgebraElement, BlockAlgebra, hermitian_eig
from .config import resolve_eps_rel
from .errors import ConditioningError, DomainError, ShapeError
from .functionals import PositiveFunctional
from .reports import CheckReport
from .tensor import TensorAlgebra, kron_functional

SUPPORT_VIOLATION_RTOL = 1e-10
SHARP_RECOMP_TOL = 1e-9
CHANNEL_UNITALITY_TOL = 1e-10


class Reason(str, Enum):
    FINITE = "finite"
    SUPPORT_VIOLATION = "support_violation"
    ZERO_Q_ALPHA_LT_1 = "zero_Q_alpha_lt_1"
    ZERO_REFERENCE = "zero_reference"


@dataclass(frozen=True)
class DivergenceValue:
    """A divergence outcome: finite value, or +inf with a reason code."""

    value: float
    reason: Reason = Reason.FINITE

    def __post_init__(self):
        if math.isinf(self.value) != (self.reason != Reason.FINITE):
            raise DomainError(
                f"value {self.value} inconsistent with reason {self.reason}")

    @property
    def is_finite(self) -> bool:
        return self.reason == Reason.FINITE

    @classmethod
    def infinite(cls, reason: Reason) -> "DivergenceValue":
        return cls(math.inf, reason)

    def __str__(self):
        if self.is_finite:
            return repr(self.value)
        return f"inf reason={self.reason.value}"


@dataclass(frozen=True)
class DivergenceParams:
    """Order alpha and sandwich power z; z=None selects the sandwiched family.

    Sandwiched mode requires alpha >= 1/2; the two-parameter mode accepts any
    alpha, z > 0 with alpha != 1.
    """

    alpha: float
    z: float | None = None

    def __post_init__(self):
        alpha = float(self.alpha)
        if alpha <= 0 or alpha == 1:
            raise DomainError(f"alpha must be positive and != 1, got {alpha}")
        object.__setattr__(self, "alpha", alpha)
        if self.z is None:
            if alpha < 0.5:
                raise DomainError(
                    f"sandwiched divergence needs alpha >= 1/2, got {alpha}")
        else:
            z = float(self.z)
            if z <= 0:
                raise DomainError(f"z must be positive, got {z}")
            object.__setattr__(self, "z", z)

    @property
    def is_sandwiched(self) -> bool:
        return self.z is None

    @property
    def effective_z(self) -> float:
        return self.alpha if self.z is None else self.z

    def label(self) -> str:
        if self.is_sandwiched:
            return f"alpha={self.alpha:g}"
        return f"alpha={self.alpha:g},z={self.z:g}"


def _check_pair(psi: PositiveFunctional, phi: PositiveFunctional):
    if psi.algebra != phi.algebra:
        raise ShapeError("functionals must live on the same algebra")
    if psi.is_zero:
        raise DomainError("left functional must be nonzero")


def _support_violates(psi: PositiveFunctional, phi: PositiveFunctional,
                      eps_rel: float | None) -> bool:
    """True when s(psi) <= s(phi) fails beyond the relative budget."""
    comp = psi.algebra.identity() - phi.support(eps_rel)
    leak = (comp @ psi.density @ comp).frobenius()
    return leak > SUPPORT_VIOLATION_RTOL * psi.density.frobenius()


def _psd_trace_power(s: AlgebraElement, power: float,
                     eps_rel: float | None) -> float:
    """trace(s^power) for PSD s with the kernel convention 0^power := 0."""
    spec = hermitian_eig(s, hermitize=True, eps_rel=eps_rel).clip_psd()
    total = 0.0
    for vals, mask in zip(spec.eigenvalues, spec.kernel_mask):
        kept = vals[~mask]
        total += float(np.sum(kept ** power))
    return total


def _trace_power_blocks(blocks, power: float, eps_rel: float | None) -> float:
    """trace(m^power) summed over raw PSD blocks, kernel convention applied."""
    eps = resolve_eps_rel(eps_rel)
    vals_list = [np.linalg.eigvalsh((m + m.conj().T) / 2.0) for m in blocks]
    radius = max(float(np.max(np.abs(v))) for v in vals_list)
    if np.any([np.any(v < -1e-10 * radius) for v in vals_list]):
        raise DomainError("sandwich block is not PSD within clip tolerance")
    total = 0.0
    for vals in vals_list:
        kept = vals[vals > eps * radius]
        total += float(np.sum(kept ** power))
    return total


def _eigenbasis_sandwich(phi: PositiveFunctional, target: AlgebraElement,
                         expo: float, eps_rel: float | None):
    """Blocks of h_phi^expo target h_phi^expo, computed in phi's eigenbasis.

    Returns (middles, spectrum): middles[k] = S^expo C S^expo with
    C = U* target U and S the diagonal of clipped eigenvalues (kernel
    directions scale to 0).  Matched positive/negative exponents of the same
    phi then cancel entrywise instead of amplifying conditioning.
    """
    spec = phi.spectrum(eps_rel)
    mids = []
    for vals, vecs, mask, tb in zip(spec.eigenvalues, spec.eigenvectors,
                                    spec.kernel_mask, target.blocks):
        keep = ~mask
        scale = np.zeros_like(vals)
        scale[keep] = vals[keep] ** expo
        c = vecs.conj().T @ tb @ vecs
        mids.append((scale[:, None] * c) * scale[None, :])
    return mids, spec


def q_tilde_alpha(psi: PositiveFunctional, phi: PositiveFunctional,
                  alpha: float, eps_rel: float | None = None
                  ) -> DivergenceValue:
    """Sandwiched Q-functional of order alpha in [1/2, inf) \\ {1}.

    For alpha < 1 this is the direct sandwiched trace; for alpha > 1 the
    value is finite exactly when s(psi) <= s(phi), in which case it equals
    the alpha-th power of the eta=1/2 interpolated norm of the density.
    """
    _check_pair(psi, phi)
    if alpha < 0.5 or alpha == 1:
        raise DomainError(
            f"sandwiched order must lie in [1/2, inf) without 1, got {alpha}")
    if alpha < 1:
        r = (1.0 - alpha) / (2.0 * alpha)
        mids, _ = _eigenbasis_sandwich(phi, psi.density, r, eps_rel)
        return DivergenceValue(_trace_power_blocks(mids, alpha, eps_rel))
    if _support_violates(psi, phi, eps_rel):
        return DivergenceValue.infinite(Reason.SUPPORT_VIOLATION)
    r = (alpha - 1.0) / (2.0 * alpha)
    mids, _ = _eigenbasis_sandwich(phi, psi.density, -r, eps_rel)
    return DivergenceValue(_trace_power_blocks(mids, alpha, eps_rel))


def q_tilde_alpha_z(psi: PositiveFunctional, phi: PositiveFunctional,
                    params: DivergenceParams, eps_rel: float | None = None
                    ) -> DivergenceValue:
    """Two-parameter Q-functional Q_{alpha,z}.

    For alpha > 1 the sandwich equation
    h_psi^{alpha/z} = h_phi^{(alpha-1)/2z} x h_phi^{(alpha-1)/2z} is solved
    on the corner s(phi) . s(phi) by pseudo-inverse powers; solvability is
    equivalent to s(psi) <= s(phi) here, and the recomposition residual
    certifies the solution (ConditioningError beyond budget).
    """
    _check_pair(psi, phi)
    alpha, z = params.alpha, params.effective_z
    if alpha < 1:
        sv = _half_sandwich_singular_values(
            psi, phi, alpha / (2.0 * z), (1.0 - alpha) / (2.0 * z), eps_rel)
        return DivergenceValue(_sigma_power_sum(sv, z, eps_rel))
    if _support_violates(psi, phi, eps_rel):
        return DivergenceValue.infinite(Reason.SUPPORT_VIOLATION)
    _sharp_pinv_middles(psi, phi, params, eps_rel)  # recomposition certificate
    sv = _half_sandwich_singular_values(
        psi, phi, alpha / (2.0 * z), -(alpha - 1.0) / (2.0 * z), eps_rel)
    return DivergenceValue(_sigma_power_sum(sv, z, eps_rel))


def _half_sandwich_singular_values(psi: PositiveFunctional,
                                   phi: PositiveFunctional, psi_expo: float,
                                   phi_expo: float,
                                   eps_rel: float | None) -> np.ndarray:
    """Singular values of B = h_psi^{psi_expo} h_phi^{phi_expo} per block.

    The sandwich h_phi^{phi_expo} h_psi^{2 psi_expo} h_phi^{phi_expo} equals
    B* B, so its spectrum is sigma(B)^2; going through sigma keeps small
    genuine eigenvalues accurate (no square-root amplification of the noise
    floor) and exact kernels collapse to sigma ~ eps, far below the cutoff.
    The phi factor is applied as an exact diagonal column scaling in phi's
    eigenbasis (singular values are right-unitarily invariant).
    """
    half = psi.power(psi_expo, eps_rel)
    spec = phi.spectrum(eps_rel)
    out = []
    for vals, vecs, mask, hb in zip(spec.eigenvalues, spec.eigenvectors,
                                    spec.kernel_mask, half.blocks):
        keep = ~mask
        scale = np.zeros_like(vals)
        scale[keep] = vals[keep] ** phi_expo
        g = (hb @ vecs) * scale[None, :]
        out.append(np.linalg.svd(g, compute_uv=False))
    return np.concatenate(out)


def _sigma_power_sum(sv: np.ndarray, z: float,
                     eps_rel: float | None) -> float:
    """sum sigma^{2z} over non-kernel singular values."""
    eps = resolve_eps_rel(eps_rel)
    smax = float(np.max(sv)) if sv.size else 0.0
    kept = sv[sv > eps * smax]
    return float(np.sum(kept ** (2.0 * z)))


def _sharp_pinv_middles(psi: PositiveFunctional, phi: PositiveFunctional,
                        params: DivergenceParams, eps_rel: float | None):
    """Eigenbasis blocks of the pseudo-inverse corner solution of the
    sandwich equation, with its recomposition certificate.

    In phi's eigenbasis the solution is X_ij = C_ij / (s_i^e s_j^e) on the
    support corner (C the transformed right-hand side); re-scaling recovers C
    entrywise, so the recomposition residual measures exactly the part of the
    right-hand side outside the corner plus rounding, independent of phi's
    conditioning.
    """
    alpha, z = params.alpha, params.effective_z
    e = (alpha - 1.0) / (2.0 * z)
    hp = psi.power(alpha / z, eps_rel)
    spec = phi.spectrum(eps_rel)
    mids, resid_sq = [], 0.0
    for vals, vecs, mask, tb in zip(spec.eigenvalues, spec.eigenvectors,
                                    spec.kernel_mask, hp.blocks):
        keep = ~mask
        down = np.zeros_like(vals)
        down[keep] = vals[keep] ** (-e)
        up = np.zeros_like(vals)
        up[keep] = vals[keep] ** e
        c = vecs.conj().T @ tb @ vecs
        mid = (down[:, None] * c) * down[None, :]
        back = (up[:, None] * mid) * up[None, :]
        resid_sq += float(np.sum(np.abs(back - c) ** 2))
        mids.append(mid)
    residual = math.sqrt(resid_sq)
    if residual > SHARP_RECOMP_TOL * (1.0 + hp.frobenius()):
        raise ConditioningError(
            f"sandwich-equation recomposition residual {residual:.3e} "
            f"exceeds budget", residual=residual)
    return mids, spec, residual


def solve_sharp_pseudo_inverse(psi: PositiveFunctional,
                               phi: PositiveFunctional,
                               params: DivergenceParams,
                               eps_rel: float | None = None
                               ) -> AlgebraElement:
    """Corner solution of the sandwich equation by pseudo-inverse powers.

    Returns x = h_phi^{-e} h_psi^{alpha/z} h_phi^{-e} compressed to the
    support corner of phi, with e = (alpha-1)/2z; the recomposition residual
    certifies the solve (ConditioningError beyond budget).  Requires
    s(psi) <= s(phi), else the equation has no corner solution.
    """
    _check_pair(psi, phi)
    if params.alpha <= 1:
        raise DomainError("the sandwich-equation solve applies to alpha > 1")
    if _support_violates(psi, phi, eps_rel):
        raise DomainError(
            "sandwich equation unsolvable: s(psi) <= s(phi) fails")
    mids, spec, _ = _sharp_pinv_middles(psi, phi, params, eps_rel)
    blocks = [vecs @ mid @ vecs.conj().T
              for vecs, mid in zip(spec.eigenvectors, mids)]
    return AlgebraElement(psi.algebra, blocks)


def solve_sharp_least_squares(psi: PositiveFunctional,
                              phi: PositiveFunctional,
                              params: DivergenceParams,
                              eps_rel: float | None = None) -> AlgebraElement:
    """Independent corner-restricted least-squares solve of the sandwich
    equation for alpha > 1.

    Builds the explicit linearization of x -> h_phi^e (s x s) h_phi^e per
    block and returns the minimum-norm least-squares solution compressed to
    the corner.  Coincides with the pseudo-inverse solution whenever the
    equation is solvable.
    """
    _check_pair(psi, phi)
    alpha, z = params.alpha, params.effective_z
    if alpha <= 1:
        raise DomainError("the sandwich-equation solve applies to alpha > 1")
    e = (alpha - 1.0) / (2.0 * z)
    a = phi.power(e, eps_rel)
    s = phi.support(eps_rel)
    target = psi.power(alpha / z, eps_rel)
    blocks = []
    for ab, sb, cb in zip(a.blocks, s.blocks, target.blocks):
        n = ab.shape[0]
        # row-major vec: vec(A X A) = kron(A, A^T) vec(X)
        full = np.kron(ab, ab.T) @ np.kron(sb, sb.T)
        sol, *_ = np.linalg.lstsq(full, cb.ravel(), rcond=None)
        xb = sol.reshape(n, n)
        blocks.append(sb @ xb @ sb)
    return AlgebraElement(psi.algebra, blocks)


def d_from_q(q: DivergenceValue, psi: PositiveFunctional,
             phi: PositiveFunctional, alpha: float) -> DivergenceValue:
    """Divergence from its Q-value: log(Q / psi(1)) / (alpha - 1), nat log."""
    if not q.is_finite:
        return q
    if alpha < 1 and q.value == 0.0:
        reason = Reason.ZERO_REFERENCE if phi.is_zero \
            else Reason.ZERO_Q_ALPHA_LT_1
        return DivergenceValue.infinite(reason)
    return DivergenceValue(
        math.log(q.value / psi.mass) / (alpha - 1.0))


def d_tilde(psi: PositiveFunctional, phi: PositiveFunctional,
            params: DivergenceParams, eps_rel: float | None = None
            ) -> DivergenceValue:
    """Renyi divergence for the given parameters (natural logarithm).

    Sandwiched parameters run the sandwiched Q path; explicit (alpha, z)
    parameters run the two-parameter path.  May be negative for inputs whose
    masses differ from 1.
    """
    if params.is_sandwiched:
        q = q_tilde_alpha(psi, phi, params.alpha, eps_rel)
    else:
        q = q_tilde_alpha_z(psi, phi, params, eps_rel)
    return d_from_q(q, psi, phi, params.alpha)


def lemma9_check(psi: PositiveFunctional, phi: PositiveFunctional,
                 alpha: float, tol: float = 1e-10,
                 eps_rel: float | None = None) -> CheckReport:
    """Agreement of the two code paths at z = alpha.

    Finite values must agree to relative tol; infinite values must carry the
    same reason code.
    """
    qa = q_tilde_alpha(psi, phi, alpha, eps_rel)
    qz = q_tilde_alpha_z(psi, phi, DivergenceParams(alpha, z=alpha), eps_rel)
    info = {"q_sandwiched": str(qa), "q_alpha_z": str(qz), "alpha": alpha}
    if qa.is_finite and qz.is_finite:
        residual = abs(qa.value - qz.value) / (1.0 + abs(qa.value))
        return CheckReport.from_residuals(
            "lemma9", {"path_agreement": residual},
            {"path_agreement": tol}, info)
    agreement = 0.0 if qa.reason == qz.reason else math.inf
    return CheckReport.from_residuals(
        "lemma9", {"reason_agreement": agreement},
        {"reason_agreement": 0.0}, info)


def additivity_check(psi1: PositiveFunctional, phi1: PositiveFunctional,
                     psi2: PositiveFunctional, phi2: PositiveFunctional,
                     params: DivergenceParams, tol_q: float = 1e-9,
                     tol_d: float = 1e-8,
                     eps_rel: float | None = None) -> CheckReport:
    """Multiplicativity of Q and additivity of D across a tensor pair.

    Asserted whenever both factor Q-values are finite (any alpha, z), and on
    the infinite branch when alpha = z (where the product must be +inf as
    well).  For alpha > 1 with z != alpha and an infinite factor, the values
    are recorded without assertion.
    """
    T = TensorAlgebra(psi1.algebra, psi2.algebra)
    psi12 = kron_functional(T, psi1, psi2)
    phi12 = kron_functional(T, phi1, phi2)

    def q_of(a, b):
        if params.is_sandwiched:
            return q_tilde_alpha(a, b, params.alpha, eps_rel)
        return q_tilde_alpha_z(a, b, params, eps_rel)

    q1, q2, q12 = q_of(psi1, phi1), q_of(psi2, phi2), q_of(psi12, phi12)
    d1 = d_from_q(q1, psi1, phi1, params.alpha)
    d2 = d_from_q(q2, psi2, phi2, params.alpha)
    d12 = d_from_q(q12, psi12, phi12, params.alpha)
    info = {
        "params": params.label(),
        "q_factors": [str(q1), str(q2)], "q_product": str(q12),
        "d_factors": [str(d1), str(d2)], "d_product": str(d12),
    }

    if q1.is_finite and q2.is_finite:
        prod = q1.value * q2.value
        res_q = abs(q12.value - prod) / (1.0 + prod) \
            if q12.is_finite else math.inf
        if d1.is_finite and d2.is_finite and d12.is_finite:
            res_d = abs(d12.value - d1.value - d2.value)
        else:
            finite_sum = d1.is_finite and d2.is_finite
            res_d = 0.0 if (not finite_sum and not d12.is_finite) else math.inf
        return CheckReport.from_residuals(
            "prop11_additivity",
            {"q_multiplicativity": res_q, "d_additivity": res_d},
            {"q_multiplicativity": tol_q, "d_additivity": tol_d}, info)

    alpha_eq_z = params.is_sandwiched or params.z == params.alpha
    if alpha_eq_z:
        res = 0.0 if not q12.is_finite else math.inf
        return CheckReport.from_residuals(
            "prop11_additivity", {"infinite_branch": res},
            {"infinite_branch": 0.0}, info)
    info["asserted"] = False
    return CheckReport.from_residuals("prop11_additivity", {}, {}, info)


# -- channels and monotonicity ------------------------------------------------


class QuantumChannel:
    """Unital completely positive map given by Kraus operators.

    The map sends b in the domain algebra to E(sum_i V_i* b V_i) in the
    codomain algebra, where each V_i is a carrier-space matrix from the
    codomain carrier to the domain carrier and E is the block-diagonal
    conditional expectation (a pinching, itself unital CP).  Functionals on
    the codomain pull back through :func:`precompose`.
    """

    __slots__ = ("domain", "codomain", "kraus")

    def __init__(self, domain: BlockAlgebra, codomain: BlockAlgebra, kraus):
        mats = tuple(np.array(v, dtype=np.complex128) for v in kraus)
        if not mats:
            raise DomainError("a channel needs at least one Kraus operator")
        n_dom, n_cod = domain.carrier_dim, codomain.carrier_dim
        for v in mats:
            if v.shape != (n_dom, n_cod):
                raise ShapeError(
                    f"Kraus operator shape {v.shape} != ({n_dom}, {n_cod})")
            v.setflags(write=False)
        acc = sum(v.conj().T @ v for v in mats)
        defect = float(np.linalg.norm(acc - np.eye(n_cod)))
        if defect > CHANNEL_UNITALITY_TOL:
            raise DomainError(
                f"channel is not unital: |sum V*V - 1| = {defect:.3e}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "kraus", mats)

    def unitality_defect(self) -> float:
        acc = sum(v.conj().T @ v for v in self.kraus)
        return float(np.linalg.norm(acc - np.eye(self.codomain.carrier_dim)))

    def apply(self, b: AlgebraElement) -> AlgebraElement:
        """Forward action on a domain element (lands in the codomain)."""
        if b.algebra != self.domain:
            raise ShapeError("element does not live on the channel domain")
        full = b.full_matrix()
        acc = sum(v.conj().T @ full @ v for v in self.kraus)
        return self.codomain.from_full(acc)


def precompose(psi: PositiveFunctional, channel: QuantumChannel,
               eps_rel: float | None = None) -> PositiveFunctional:
    """Pull a codomain functional back through the channel.

    The density maps through the adjoint Kraus sum followed by block-diagonal
    compression; unital channels preserve the mass.
    """
    if psi.algebra != channel.codomain:
        raise ShapeError("functional does not live on the channel codomain")
    full = psi.density.full_matrix()
    acc = sum(v @ full @ v.conj().T for v in channel.kraus)
    h = channel.domain.from_full(acc)
    return PositiveFunctional(h, hermitize=True, eps_rel=eps_rel)


def identity_channel(algebra: BlockAlgebra) -> QuantumChannel:
    return QuantumChannel(algebra, algebra,
                          [np.eye(algebra.carrier_dim)])


def pinching_channel(algebra: BlockAlgebra) -> QuantumChannel:
    """Projective Kraus set onto the carrier diagonal; zeroes off-diagonals."""
    n = algebra.carrier_dim
    eye = np.eye(n)
    return QuantumChannel(
        algebra, algebra,
        [np.outer(eye[i], eye[i]) for i in range(n)])


def embed_left_channel(T: TensorAlgebra) -> QuantumChannel:
    """The unital embedding a -> a (x) 1 of the left factor into the product.

    Precomposing a product functional with this channel yields the partial
    trace over the right factor (scaled by the right mass on simple tensors).
    """
    dom, cod = T.left, T.product
    n_dom, n_cod = dom.carrier_dim, cod.carrier_dim
    dom_offsets = np.cumsum([0, *dom.block_dims])
    cod_offsets = np.cumsum([0, *cod.block_dims])
    kraus = []
    for j, m in enumerate(T.right.block_dims):
        for b in range(m):
            v = np.zeros((n_dom, n_cod), dtype=np.complex128)
            for i, n in enumerate(T.left.block_dims):
                k = T.block_index(i, j)
                row = dom_offsets[i]
                col = cod_offsets[k]
                sel = np.zeros((1, m))
                sel[0, b] = 1.0
                v[row:row + n, col:col + n * m] = np.kron(np.eye(n), sel)
            kraus.append(v)
    return QuantumChannel(dom, cod, kraus)


def random_unital_channel(rng: np.random.Generator, domain: BlockAlgebra,
                          codomain: BlockAlgebra,
                          num_kraus: int = 3) -> QuantumChannel:
    """Random unital CP map: Gaussian Kraus draws whitened to sum V*V = 1."""
    n_dom, n_cod = domain.carrier_dim, codomain.carrier_dim
    if num_kraus * n_dom < n_cod:
        raise DomainError(
            f"{num_kraus} Kraus operators of height {n_dom} cannot be unital "
            f"onto a carrier of dimension {n_cod}")
    ws = [(rng.standard_normal((n_dom, n_cod))
           + 1j * rng.standard_normal((n_dom, n_cod))) / math.sqrt(2.0)
          for _ in range(num_kraus)]
    gram = sum(w.conj().T @ w for w in ws)
    vals, vecs = np.linalg.eigh(gram)
    inv_sqrt = (vecs * (vals ** -0.5)) @ vecs.conj().T
    return QuantumChannel(domain, codomain, [w @ inv_sqrt for w in ws])


# Monotonicity region of the two-parameter family, as affine bounds on z per
# alpha interval: valid iff k_lo*alpha + c_lo <= z <= k_hi*alpha + c_hi.
# This is configuration data (the finite-dimensional characterization due to
# Zhang); it only decides whether dpi_probe asserts or merely records.
DPI_VALID_TABLE = (
    {"alpha_min": 0.0, "alpha_max": 0.5, "z_lo": (-1.0, 1.0), "z_hi": None},
    {"alpha_min": 0.5, "alpha_max": 1.0, "z_lo": (1.0, 0.0), "z_hi": None},
    {"alpha_min": 1.0, "alpha_max": 2.0, "z_lo": (0.5, 0.0),
     "z_hi": (1.0, 0.0)},
    {"alpha_min": 2.0, "alpha_max": math.inf, "z_lo": (1.0, -1.0),
     "z_hi": (1.0, 0.0)},
)


def dpi_valid(alpha: float, z: float) -> bool:
    """Whether monotonicity under unital CP maps is known to hold at (alpha, z)."""
    for row in DPI_VALID_TABLE:
        if not (row["alpha_min"] <= alpha <= row["alpha_max"]):
            continue
        k, c = row["z_lo"]
        if z < k * alpha + c:
            continue
        if row["z_hi"] is not None:
            k, c = row["z_hi"]
            if z > k * alpha + c:
                continue
        return True
    return False


def dpi_probe(psi: PositiveFunctional, phi: PositiveFunctional,
              channel: QuantumChannel, params: DivergenceParams,
              slack: float = 1e-9,
              eps_rel: float | None = None) -> CheckReport:
    """Monotonicity probe: D after the channel against D before it.

    The decrease is asserted only when (alpha, z) lies in the known-valid
    monotonicity region; outside it both values are recorded without
    assertion.
    """
    d_in = d_tilde(psi, phi, params, eps_rel)
    psi_c = precompose(psi, channel, eps_rel)
    phi_c = precompose(phi, channel, eps_rel)
    d_out = d_tilde(psi_c, phi_c, params, eps_rel)
    if not d_in.is_finite:
        violation = 0.0
    elif not d_out.is_finite:
        violation = math.inf
    else:
        violation = max(0.0, d_out.value - d_in.value)
    asserted = dpi_valid(params.alpha, params.effective_z)
    info = {"d_before": str(d_in), "d_after": str(d_out),
            "params": params.label(), "asserted": asserted}
    if asserted:
        return CheckReport.from_residuals(
            "dpi", {"monotonicity_violation": violation},
            {"monotonicity_violation": slack}, info)
    info["observed_violation"] = violation if math.isfinite(violation) \
        else "inf"
    return CheckReport.from_residuals("dpi", {}, {}, info)
