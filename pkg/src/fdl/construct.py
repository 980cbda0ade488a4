"""Explicit constructions: plateau bumps, modulated saturating polynomials,
disjoint-spectrum families, the pole-comb kernel, its boundary log-lift, the
log-rate saturator, and the two-scale residual witness.

Everything here is deterministic. Wherever a closed form exists for the
Fourier coefficients it is used directly, so the returned polynomials are
exact sparse objects and the grid only enters when a certificate is
evaluated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sets import CombParams, DyadicFamilyParams, comb_membership, dyadic_family, smallest_admissible_level
from .trig import GridSignal, SpectrumInterval, TrigPoly, modulate, validate_norm_exponent
from .util import is_pow2, next_pow2


def chi_coefficients(params: DyadicFamilyParams, kmax: int | None = None) -> TrigPoly:
    """Exact Fourier coefficients of the plateau bump, up to frequency kmax.

    The bump is the sum over centers K/2^J of a trapezoid with plateau
    radius 2^-j and support radius 2^(1-j); it equals the convolution of
    two box indicators scaled by 2^j, so its transform is a product of two
    sinc factors supported on multiples of 2^J.
    """
    j, J = params.j, params.J
    if kmax is None:
        kmax = (1 << j) - 1
    qmax = kmax >> J
    q = np.arange(-qmax, qmax + 1)
    u = q * 2.0 ** (J - j)
    vals = 3.0 * 2.0 ** (J - j) * np.sinc(3.0 * u) * np.sinc(u)
    return TrigPoly({int(qi) << J: complex(v) for qi, v in zip(q, vals)})


def bump_chi(params: DyadicFamilyParams, M: int) -> GridSignal:
    """Piecewise linear plateau function sampled on the grid.

    Equals 1 on the level-j intervals, 0 outside the doubled intervals,
    and ramps linearly with slope 2^j in between.
    """
    if not is_pow2(M) or M < 8 * (1 << params.j):
        raise ValueError(f"grid must be a power of two with M >= {8 * (1 << params.j)}")
    fam = dyadic_family(params)
    dist = fam._center_distance(np.arange(M) / M)
    vals = np.clip(2.0 - dist * (1 << params.j), 0.0, 1.0)
    return GridSignal(vals.astype(complex))


def saturator_scale(params: DyadicFamilyParams, p) -> float:
    p = validate_norm_exponent(p)
    if math.isinf(p):
        return 1.0
    return 2.0 ** (-(params.J - params.j + 2) / p)


def saturator_pj(params: DyadicFamilyParams, p, M: int | None = None) -> TrigPoly:
    """Modulated Fejer-smoothed bump, normalized to unit p-norm scale.

    Fejer smoothing at order 2^j keeps only bump frequencies below 2^j;
    modulating by 2^j then puts the spectrum inside (0, 2^(j+1) - 1], and
    the scale factor 2^(-(J-j+2)/p) caps the p-norm at 1 while the modulus
    stays above the quarter of the scale on the target intervals.
    """
    j = params.j
    if M is None:
        M = next_pow2(8 * (1 << (j + 1)))
    if not is_pow2(M) or M < 8 * (1 << (j + 1)):
        raise ValueError(f"grid must be a power of two with M >= {8 * (1 << (j + 1))}")
    n = 1 << j
    chi = chi_coefficients(params, kmax=n - 1)
    scale = saturator_scale(params, p)
    coeffs = {}
    for k, c in chi.items():
        coeffs[n + k] = scale * c * (1.0 - abs(k) / n)
    return TrigPoly(coeffs)


def saturator_certificate(poly: TrigPoly, params: DyadicFamilyParams, p, M: int | None = None) -> dict:
    """Grid certificate: p-norm and the modulus minimum over target points."""
    if M is None:
        M = next_pow2(8 * (1 << (params.j + 1)))
    sig = poly.sample(M)
    fam = dyadic_family(params)
    mask = fam.contains(sig.points())
    if not mask.any():
        raise ValueError("grid resolves no target point; increase M")
    from .trig import lp_norm

    required = 0.25 * saturator_scale(params, p)
    observed = float(np.abs(sig.samples[mask]).min())
    return {
        "norm": lp_norm(sig.samples, p),
        "min_on_target_set": observed,
        "bound_required": required,
        "margin": observed - required,
        "grid": M,
    }


@dataclass(frozen=True)
class SaturatorFamily:
    """Family of s polynomials with pairwise disjoint block spectra."""

    s: int
    alpha: float
    p: float
    jmax: int
    j_min: int
    members: tuple
    blocks: dict
    tail_norm_bound: float
    freq_constant: int
    grid_M: int

    def member(self, r: int) -> TrigPoly:
        if not (1 <= r <= self.s):
            raise ValueError("member index out of range")
        return self.members[r - 1]

    def block_window(self, j: int, r: int) -> SpectrumInterval:
        return self.blocks[(j, r)]

    def block_poly(self, j: int, r: int) -> TrigPoly:
        return self.member(r).restrict(self.block_window(j, r))


def disjoint_family(s: int, alpha: float, p, jmax: int, M: int | None = None) -> SaturatorFamily:
    """Builds the s saturating sums with spectra shifted onto disjoint blocks.

    Member r is the sum over levels j of (1/j^2) times the level-j saturator
    modulated to start at (s+r)*2^(j+1). Blocks from different members and
    levels never overlap, so partial-sum differences isolate single blocks
    exactly on coefficients.
    """
    if s < 1:
        raise ValueError("family size must be positive")
    j_min = smallest_admissible_level(alpha)
    if jmax < j_min:
        raise ValueError(f"jmax must be at least {j_min} for alpha={alpha}")
    if M is None:
        M = next_pow2(8 * s * (1 << (jmax + 2)))
    if not (2 * s * (1 << (jmax + 2)) < M // 2):
        raise ValueError("grid too small for the top block frequency")
    validate_norm_exponent(p)

    saturators = {j: saturator_pj(DyadicFamilyParams(j, alpha), p) for j in range(j_min, jmax + 1)}
    members = []
    blocks = {}
    for r in range(1, s + 1):
        g = TrigPoly()
        for j in range(j_min, jmax + 1):
            shift = (s + r) * (1 << (j + 1))
            g = g + (1.0 / (j * j)) * modulate(saturators[j], shift)
            blocks[(j, r)] = SpectrumInterval(shift, shift + (1 << (j + 1)) - 1)
        members.append(g)

    windows = sorted(blocks.values(), key=lambda w: w.lo)
    for a, b in zip(windows, windows[1:]):
        if a.overlaps(b):
            raise AssertionError("block windows must be pairwise disjoint")

    tail = 1.0 / jmax
    return SaturatorFamily(
        s=s,
        alpha=float(alpha),
        p=float(p),
        jmax=jmax,
        j_min=j_min,
        members=tuple(members),
        blocks=blocks,
        tail_norm_bound=tail,
        freq_constant=2 * (2 * s + 1),
        grid_M=M,
    )


@dataclass(frozen=True)
class HoloKernelParams:
    """Pole comb: k simple poles just outside the unit circle above each root of unity."""

    k: int
    omega: float

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("need at least 3 poles")
        if self.omega < math.log(self.k):
            raise ValueError("sharpness omega must be at least log k")

    @property
    def eps(self) -> float:
        return 1.0 / (self.omega * self.k)

    def nodes(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.k) / self.k)

    @property
    def comb(self) -> CombParams:
        return CombParams(self.k, self.omega)


def _pole_sums(params: HoloKernelParams, z: np.ndarray, with_derivative: bool):
    flat = np.asarray(z, dtype=complex).reshape(-1)
    w = np.conj(params.nodes())
    one = 1.0 + params.eps
    f = np.empty(flat.size, dtype=complex)
    d = np.empty(flat.size, dtype=complex) if with_derivative else None
    chunk = max(1, (1 << 22) // params.k)
    for i in range(0, flat.size, chunk):
        den = one - np.outer(flat[i : i + chunk], w)
        f[i : i + chunk] = (one / den).sum(axis=1) / params.k
        if with_derivative:
            d[i : i + chunk] = (one * w / (den * den)).sum(axis=1) / params.k
    return f, d


def holo_kernel(params: HoloKernelParams, z):
    """Mean of the k pole terms; holomorphic on the closed disk, f(0) = 1."""
    f, _ = _pole_sums(params, z, with_derivative=False)
    out = f.reshape(np.asarray(z, dtype=complex).shape)
    return out[()] if np.ndim(z) == 0 else out


def holo_log_derivative(params: HoloKernelParams, z):
    """f'/f via the analytic ratio of pole sums (no numerical differencing)."""
    f, d = _pole_sums(params, z, with_derivative=True)
    out = (d / f).reshape(np.asarray(z, dtype=complex).shape)
    return out[()] if np.ndim(z) == 0 else out


def holo_boundary(params: HoloKernelParams, M: int) -> GridSignal:
    if not is_pow2(M):
        raise ValueError("grid size must be a power of two")
    z = np.exp(2j * np.pi * np.arange(M) / M)
    return GridSignal(holo_kernel(params, z))


def log_lift(params: HoloKernelParams, M: int) -> GridSignal:
    """Principal-branch boundary logarithm of the comb kernel.

    Re f > 0 on the closed disk keeps the argument inside (-pi/2, pi/2),
    so the principal branch is continuous and the lift stays one-sided in
    frequency up to grid aliasing.
    """
    if not is_pow2(M) or M < 64 * params.k:
        raise ValueError(f"grid must be a power of two with M >= {64 * params.k}")
    f = holo_boundary(params, M).samples
    if float(f.real.min()) <= 0:
        raise AssertionError("kernel lost positivity of the real part; log lift invalid")
    return GridSignal(np.log(f))


def negative_frequency_ratio(sig: GridSignal) -> float:
    """Total modulus of negative-frequency coefficients relative to the 2-norm."""
    spec = np.fft.fft(sig.samples) / sig.M
    neg = spec[sig.M // 2 + 1 :]
    total = float(np.sqrt(np.mean(np.abs(sig.samples) ** 2)))
    if total == 0:
        return 0.0
    return float(np.abs(neg).sum() / total)


def eps_floor(n: int) -> float:
    """Smallest admissible divergence rate at degree n: loglog(n)/(4 pi log n)."""
    if n < 3:
        raise ValueError("degree must be at least 3")
    return math.log(math.log(n)) / (4.0 * math.pi * math.log(n))


@dataclass(frozen=True)
class LogSaturator:
    """Degree-n polynomial whose partial sum is large on its comb set."""

    n: int
    eps_n: float
    floored: bool
    omega: float
    k: int
    grid_M: int
    neg_energy_ratio: float
    poly: TrigPoly

    @property
    def comb(self) -> CombParams:
        return CombParams(self.k, self.omega)

    @property
    def target_level(self) -> float:
        """The certified partial-sum level eps_n * log n."""
        return self.eps_n * math.log(self.n)


def log_saturator(n: int, eps_n: float | None = None, M: int | None = None) -> LogSaturator:
    """Builds the saturator with rate eps_n (floored at the admissible rate).

    The sharpness omega and tooth count k are derived from the rate; the
    polynomial is (2/pi) e_n sigma_n(Im g) with g the boundary log-lift,
    computed from FFT coefficients on a grid of at least 64 samples per
    degree and 32 per tooth.
    """
    floor = eps_floor(n)
    floored = eps_n is None or eps_n < floor
    eps = floor if floored else float(eps_n)
    omega = math.exp(4.0 * math.pi * math.log(n) * eps)
    k = int(n / (2.0 * math.pi * omega))
    if k < 3:
        raise ValueError(f"rate too aggressive at degree {n}: tooth count {k} < 3")
    params = HoloKernelParams(k, omega)
    if M is None:
        M = next_pow2(64 * max(k, n))
    M = max(M, next_pow2(32 * int(omega * k) + 1), next_pow2(64 * max(k, n)))

    g = log_lift(params, M)
    ratio = negative_frequency_ratio(g)
    if ratio > 1e-6:
        raise ValueError(f"analyticity loss: negative-frequency mass ratio {ratio:.3e}")
    spec = np.fft.fft(g.samples) / M

    coeffs = {}
    for q in range(-(n - 1), n):
        ghat_q = spec[q % M]
        ghat_mq = spec[(-q) % M]
        c = (2.0 / math.pi) * (1.0 - abs(q) / n) * (ghat_q - np.conj(ghat_mq)) / 2j
        coeffs[n + q] = c
    poly = TrigPoly(coeffs)

    window = SpectrumInterval(0, 2 * n - 1)
    if not window.contains_spectrum(poly):
        raise AssertionError("saturator spectrum escaped [1, 2n-1]")
    sup = float(np.abs(poly.sample(M).samples).max())
    if sup > 1.0 + 1e-9:
        raise AssertionError(f"sup norm certificate failed: {sup}")
    return LogSaturator(
        n=n,
        eps_n=eps,
        floored=floored,
        omega=omega,
        k=k,
        grid_M=M,
        neg_energy_ratio=ratio,
        poly=poly,
    )


def logsat_certificate(sat: LogSaturator, M: int | None = None) -> dict:
    """Sup-norm and the comb minimum of the degree-n partial sum."""
    M = sat.grid_M if M is None else M
    sig = sat.poly.sample(M)
    partial = sat.poly.truncate(sat.n).sample(M)
    mask = comb_membership(sat.comb, sig.points())
    points_per_tooth = int(mask.sum()) / sat.k
    target = sat.target_level
    observed = float(np.abs(partial.samples[mask]).min())
    return {
        "n": sat.n,
        "eps_n": sat.eps_n,
        "omega": sat.omega,
        "k": sat.k,
        "floored": sat.floored,
        "sup_norm": float(np.abs(sig.samples).max()),
        "min_partial_on_comb": observed,
        "target_level": target,
        "margin": observed - target,
        "points_per_tooth": points_per_tooth,
        "neg_energy_ratio": sat.neg_energy_ratio,
        "grid": M,
    }


def residual_witness(g: TrigPoly, j: int, eta_j: float, eps_j: float, sat: LogSaturator | None = None) -> TrigPoly:
    """Adds a scaled modulated saturator block on top of a low-degree function.

    The input spectrum must fit inside [-j, j] and the added block lives in
    [j+1, 3j-1]. The difference S_2j - S_j recovers the modulated degree-j
    partial sum of the saturator, so its modulus on the comb set is at least
    eta_j * log j whenever the saturator certificate holds. The full block
    itself can vanish on the comb; only the two-scale difference saturates.
    """
    if g.degree > j:
        raise ValueError("base function degree exceeds the block level")
    if eps_j < eps_floor(j) - 1e-15:
        raise ValueError("rate below the admissible floor")
    if eta_j <= 0:
        raise ValueError("target rate eta_j must be positive")
    if sat is None:
        sat = log_saturator(j, eps_j)
    return g + (eta_j / eps_j) * modulate(sat.poly, j)
