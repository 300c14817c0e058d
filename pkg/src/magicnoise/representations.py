"""Quasiprobability representations of states, effects, and channels over a
frame, Kirkwood-Dirac distributions in their three equivalent forms, and the
nonclassicality witness built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .frames import ExactFrame
from .qudit import (
    DEFAULT_TOLERANCES,
    Dimension,
    DimensionMismatchError,
    Operator,
    Tolerances,
    WeylIndex,
    clifford_generators,
    depolarize,
    stabilizer_states,
    weyl_operator,
)

_SUBJECTS = ("state", "effect", "channel")


@dataclass(frozen=True)
class QuasiDistribution:
    """Complex-valued distribution over frame sample points.

    values is 1-D for states and effects (aligned with labels) and 2-D for
    channels, where values[out, in] pairs with labels[out * n + in].
    State-subject distributions must sum to one.
    """

    labels: tuple
    values: np.ndarray
    subject: str

    def __post_init__(self):
        arr = np.array(self.values, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.subject not in _SUBJECTS:
            raise ValueError(f"subject must be one of {_SUBJECTS}")
        if arr.size != len(self.labels):
            raise ValueError("labels and values must have matching sizes")
        if self.subject == "state":
            total = arr.sum()
            if abs(total - 1.0) > DEFAULT_TOLERANCES.validation:
                raise ValueError(
                    f"state distribution must sum to 1, got {total:.12g}"
                )

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)


@dataclass(frozen=True)
class Channel:
    """A completely positive trace-preserving map in Kraus form."""

    dim: Dimension
    kraus: tuple[np.ndarray, ...]
    name: str = "channel"

    def __post_init__(self):
        d = self.dim.d
        frozen = []
        for k in self.kraus:
            arr = np.array(k, dtype=complex)
            if arr.shape != (d, d):
                raise ValueError(f"Kraus operators must be {d}x{d}")
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "kraus", tuple(frozen))
        total = sum(k.conj().T @ k for k in self.kraus)
        if np.abs(total - np.eye(d)).max() > DEFAULT_TOLERANCES.validation:
            raise ValueError(f"channel {self.name!r} is not trace preserving")

    def apply(self, mat: np.ndarray) -> np.ndarray:
        return sum(k @ mat @ k.conj().T for k in self.kraus)


def identity_channel(dim: Dimension) -> Channel:
    return Channel(dim, (np.eye(dim.d, dtype=complex),), name="identity")


def unitary_channel(u: Operator, name: str = "unitary") -> Channel:
    return Channel(u.dim, (u.entries,), name=name)


def depolarizing_channel(dim: Dimension, p: float) -> Channel:
    """Kraus form of rho -> (1-p) rho + p 1/d.

    Uses the Weyl twirl: the d^2 displacements with weight sqrt(p)/d plus
    the identity with weight sqrt(1-p).
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"noise weight must lie in [0, 1], got {p}")
    d = dim.d
    ops: list[np.ndarray] = []
    if p < 1.0:
        ops.append(np.sqrt(1.0 - p) * np.eye(d, dtype=complex))
    if p > 0.0:
        for a in range(d):
            for b in range(d):
                w = weyl_operator(dim, WeylIndex(a, b)).entries
                ops.append(np.sqrt(p) / d * w)
    return Channel(dim, tuple(ops), name=f"depolarizing({p:g})")


@dataclass(frozen=True)
class OperationalSet:
    """States, channels, and effects probed by the witness at one noise level.

    states holds every pure stabilizer projector plus the noisy magic state
    (also stored as magic_state); channels holds the identity, the
    depolarizing channel at the same noise level, and the Clifford
    generators; effects holds the rank-1 MUB projectors plus the unit effect.
    """

    dim: Dimension
    states: tuple[Operator, ...]
    channels: tuple[Channel, ...]
    effects: tuple[Operator, ...]
    magic_state: Operator
    noise: float

    def __post_init__(self):
        if not self.states or not self.channels or not self.effects:
            raise ValueError("operational set must populate all three slots")
        for op in self.states + self.effects + (self.magic_state,):
            if op.dim != self.dim:
                raise DimensionMismatchError("operational set mixes dimensions")


def standard_operational_set(rho_m: Operator, p: float) -> OperationalSet:
    """Assemble the stabilizer subtheory plus one depolarized magic state."""
    dim = rho_m.dim
    noisy = depolarize(rho_m, p)
    stab = stabilizer_states(dim)
    states = stab.states + (noisy,)
    effects = tuple(
        Operator(dim, op.entries, role="effect") for op in stab.states
    ) + (Operator(dim, np.eye(dim.d), role="effect"),)
    cliffords = clifford_generators(dim)
    channels = (
        identity_channel(dim),
        depolarizing_channel(dim, p),
        unitary_channel(cliffords[0], name="fourier"),
        unitary_channel(cliffords[1], name="quadratic_phase"),
        unitary_channel(cliffords[2], name="shift"),
        unitary_channel(cliffords[3], name="clock"),
    )
    return OperationalSet(dim, states, channels, effects, noisy, float(p))


def represent_state(frame: ExactFrame, rho: Operator) -> QuasiDistribution:
    """mu(lam) = Tr(F_lam rho); sums to Tr(rho) = 1 for any valid frame."""
    if rho.dim != frame.dim:
        raise DimensionMismatchError("state and frame dimensions differ")
    fs = frame.analysis_stack()
    values = np.einsum("lij,ji->l", fs, rho.entries)
    return QuasiDistribution(frame.labels, values, "state")


def represent_effect(frame: ExactFrame, effect: Operator) -> QuasiDistribution:
    """xi(lam) = Tr(E D_lam); identically 1 for the unit effect."""
    if effect.dim != frame.dim:
        raise DimensionMismatchError("effect and frame dimensions differ")
    ds = frame.synthesis_stack()
    values = np.einsum("lij,ji->l", ds, effect.entries)
    return QuasiDistribution(frame.labels, values, "effect")


def represent_channel(
    frame_in: ExactFrame, frame_out: ExactFrame, channel: Channel
) -> QuasiDistribution:
    """Gamma[out, in] = Tr(F_out E(D_in)); every column sums to one.

    Composition is functorial: representing E2 after E1 equals the matrix
    product Gamma2 @ Gamma1 when the frames chain.
    """
    if channel.dim != frame_in.dim or channel.dim != frame_out.dim:
        raise DimensionMismatchError("channel and frame dimensions differ")
    ds = frame_in.synthesis_stack()
    fs = frame_out.analysis_stack()
    moved = np.stack([channel.apply(dk) for dk in ds])
    values = np.einsum("oij,lji->ol", fs, moved)
    labels = tuple(
        (lo, li) for lo in frame_out.labels for li in frame_in.labels
    )
    return QuasiDistribution(labels, values, "channel")


def _check_basis(dim: Dimension, mat: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(mat, dtype=complex)
    if arr.shape != (dim.d, dim.d):
        raise ValueError(f"basis {name} must be {dim.d}x{dim.d}")
    if np.abs(arr.conj().T @ arr - np.eye(dim.d)).max() > DEFAULT_TOLERANCES.validation:
        raise ValueError(f"basis {name} is not orthonormal")
    return arr


def kd_matrix(
    rho: Operator, basis_a: np.ndarray, basis_b: np.ndarray
) -> QuasiDistribution:
    """Kirkwood-Dirac distribution rho_(i,j) = <b_j|a_i><a_i|rho|b_j>.

    Row marginals give Born probabilities in basis A, column marginals in
    basis B, and the total sum is Tr(rho) = 1.
    """
    dim = rho.dim
    a = _check_basis(dim, basis_a, "A")
    b = _check_basis(dim, basis_b, "B")
    values = (a.conj().T @ rho.entries @ b) * (b.conj().T @ a).T
    labels = tuple((i, j) for i in range(dim.d) for j in range(dim.d))
    return QuasiDistribution(labels, values.reshape(-1), "state")


def kd_sequential(rho: Operator, bases: Sequence[np.ndarray]) -> QuasiDistribution:
    """Order-k Kirkwood-Dirac distribution from a chain of k bases.

    value(i_1, .., i_k) =
        <a^k_(i_k)|a^(k-1)_(i_(k-1))> .. <a^2_(i_2)|a^1_(i_1)> <a^1_(i_1)|rho|a^k_(i_k)>

    k = 1 reduces to the Born distribution of the single basis, k = 2 to
    kd_matrix with (A, B) = (bases[0], bases[1]).
    """
    dim = rho.dim
    if len(bases) < 1:
        raise ValueError("need at least one basis")
    mats = [_check_basis(dim, m, f"#{k}") for k, m in enumerate(bases)]
    k = len(mats)
    d = dim.d
    # chain[t][i_(t+1), i_t] = <a^(t+1)_(i_(t+1)) | a^t_(i_t)>
    chain = [mats[t + 1].conj().T @ mats[t] for t in range(k - 1)]
    closing = mats[0].conj().T @ rho.entries @ mats[k - 1]  # <a^1_i|rho|a^k_j>
    values = np.zeros((d,) * k, dtype=complex)
    for idx in itertools.product(range(d), repeat=k):
        amp = closing[idx[0], idx[k - 1]]
        for t in range(k - 1):
            amp = amp * chain[t][idx[t + 1], idx[t]]
        values[idx] = amp
    labels = tuple(itertools.product(range(d), repeat=k))
    return QuasiDistribution(labels, values.reshape(-1), "state")


def _effect_matrix(e) -> np.ndarray:
    if isinstance(e, Operator):
        return e.entries
    return np.asarray(e, dtype=complex)


def kd_povm(rho: Operator, povms: Sequence[Sequence]) -> QuasiDistribution:
    """Generalized Kirkwood-Dirac distribution over a chain of POVMs.

    value(i_1, .., i_k) = Tr( M^k_(i_k) .. M^1_(i_1) rho ), evaluated by
    explicit operator products. Each POVM must resolve the identity and
    have positive semidefinite elements.
    """
    dim = rho.dim
    d = dim.d
    vt = DEFAULT_TOLERANCES.validation
    stacks = []
    for k, povm in enumerate(povms):
        mats = [_effect_matrix(e) for e in povm]
        if not mats:
            raise ValueError(f"POVM #{k} is empty")
        for m in mats:
            if m.shape != (d, d):
                raise ValueError(f"POVM #{k} elements must be {d}x{d}")
            if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -vt:
                raise ValueError(f"POVM #{k} has a negative element")
        if np.abs(sum(mats) - np.eye(d)).max() > vt:
            raise ValueError(f"POVM #{k} does not resolve the identity")
        stacks.append(mats)
    counts = [len(s) for s in stacks]
    values = np.zeros(counts, dtype=complex)
    for idx in itertools.product(*[range(c) for c in counts]):
        prod = rho.entries
        for k, i in enumerate(idx):
            prod = stacks[k][i] @ prod
        values[idx] = np.trace(prod)
    labels = tuple(itertools.product(*[range(c) for c in counts]))
    return QuasiDistribution(labels, values.reshape(-1), "state")


def kd_negativity(dist: QuasiDistribution) -> float:
    """Signed negativity 1 - sum |values|; zero iff the distribution is a
    probability vector, negative otherwise."""
    if dist.subject != "state":
        raise ValueError("negativity is defined for state distributions")
    return float(1.0 - np.abs(dist.flat()).sum())


def negativity_magnitude(dist: QuasiDistribution) -> float:
    """Non-negative companion of kd_negativity: sum |values| - 1 >= 0."""
    if dist.subject != "state":
        raise ValueError("negativity is defined for state distributions")
    return float(np.abs(dist.flat()).sum() - 1.0)


def _penalty_array(values: np.ndarray) -> float:
    return float(
        np.abs(values.imag).sum() + np.abs(np.minimum(0.0, values.real)).sum()
    )


def penalty(dist: QuasiDistribution) -> float:
    """Distance from the real non-negative orthant:
    sum |Im| + sum |negative part of Re|; zero iff entrywise real and >= 0."""
    return _penalty_array(dist.flat())


def is_classical(dist: QuasiDistribution, tol: float = 1e-12) -> bool:
    """True when every entry is real non-negative within the classification
    tolerance."""
    v = dist.flat()
    return bool(np.abs(v.imag).max() < tol and v.real.min() > -tol)


def omega(
    p: float,
    frame: ExactFrame,
    opset: OperationalSet,
    scope: str = "state",
) -> float:
    """Witness value: the largest penalty over the probed representations.

    scope "state" penalizes only the noisy magic state's distribution;
    scope "subtheory" takes the maximum over every state, channel, and
    effect in the operational set (channels represented in the same frame
    on both sides). The maximum is order independent.
    """
    if scope not in ("state", "subtheory"):
        raise ValueError("scope must be 'state' or 'subtheory'")
    if opset.dim != frame.dim:
        raise DimensionMismatchError("operational set and frame dimensions differ")
    if abs(opset.noise - p) > 1e-12:
        raise ValueError(
            f"operational set was built at noise {opset.noise}, not {p}"
        )
    if scope == "state":
        return penalty(represent_state(frame, opset.magic_state))
    worst = 0.0
    for rho in opset.states:
        worst = max(worst, penalty(represent_state(frame, rho)))
    for effect in opset.effects:
        worst = max(worst, penalty(represent_effect(frame, effect)))
    for channel in opset.channels:
        worst = max(worst, penalty(represent_channel(frame, frame, channel)))
    return worst
