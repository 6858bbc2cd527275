"""Finite Heisenberg group action, the projective integer-symplectic
representation, and its genuine metaplectic resolution on the quantization.

Group elements act through translation operators on the invariant sections;
all phase bookkeeping is exact (UnitPhase) and only the final matrices are
floating complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BaseMismatch, DimensionMismatch, FrameMismatch
from .exact import UnitPhase, vec_mat, vec_sub
from .lattice import SymplecticSpace
from .maslov import MpElement, SpElement
from .quantize import (
    HilbertSpace,
    Intertwiner,
    Polarization,
    _stack_inv,
    bks_matrix,
    rebase_unitary,
)


@dataclass(frozen=True)
class HeisenbergElement:
    """(phase, v) with v in the finite translation group (1/k)Z / Z.

    n holds the canonical coordinates of k*v in the frame of the reference
    polarization, componentwise in [0, k).  The element acts by phase times
    the translation operator of the canonical representative.
    """

    k: int
    phase: UnitPhase
    n: tuple[int, ...]
    frame: Polarization

    def __post_init__(self):
        if len(self.n) != self.frame.space.dim:
            raise DimensionMismatch("coordinate vector must have length 2g")
        object.__setattr__(self, "n", tuple(x % self.k for x in self.n))

    @classmethod
    def of(cls, k: int, n, frame: Polarization, phase: UnitPhase = None) -> "HeisenbergElement":
        return cls(k, phase if phase is not None else UnitPhase.of(0), tuple(n), frame)

    def ambient(self) -> tuple:
        """The canonical preimage in (1/k)Z as an ambient rational vector."""
        coeffs = [Fraction(x, self.k) for x in self.n]
        return vec_mat(coeffs, self.frame.basis.stack)


def _frame_omega(space: SymplecticSpace, a, b):
    """Pairing of frame-coordinate vectors: the frame is symplectic, so the
    gram in frame coordinates is the standard block form."""
    g = space.g
    return sum(a[i] * b[g + i] - a[g + i] * b[i] for i in range(g))


def heisenberg_mul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    """Product in the operator convention T_V T_V' = e^{i pi k w(V,V')} T_{V+V'},
    with the carry correction that re-expresses T on canonical coordinates.

    With this convention the representation below is a homomorphism; it
    differs from writing the cocycle on raw preimages by the deck signs the
    carries would otherwise drop.
    """
    if x.k != y.k or x.frame != y.frame:
        raise FrameMismatch("elements live over different frames")
    k = x.k
    space = x.frame.space
    total = [a + b for a, b in zip(x.n, y.n)]
    reduced = tuple(t % k for t in total)
    carry = [(t - r) // k for t, r in zip(total, reduced)]
    t = Fraction(_frame_omega(space, x.n, y.n), k) - _frame_omega(space, reduced, carry)
    phase = x.phase * y.phase * UnitPhase.of(t)
    return HeisenbergElement(k, phase, reduced, x.frame)


def heisenberg_identity(k: int, frame: Polarization) -> HeisenbergElement:
    return HeisenbergElement.of(k, (0,) * frame.space.dim, frame)


def heisenberg_in_frame(x: HeisenbergElement, frame: Polarization) -> HeisenbergElement:
    """The same group element written over another polarization frame.

    The coordinate change is exact integer linear algebra on n; switching the
    canonical preimage inside (1/k)Z costs the deck phase e^{i pi k w(V, W)}.
    """
    if frame.space != x.frame.space:
        raise FrameMismatch("frames live over different spaces")
    k = x.k
    v1 = x.ambient()
    coords = vec_mat(v1, _stack_inv(frame.basis))
    scaled = [k * c for c in coords]
    if any(s.denominator != 1 for s in scaled):
        raise FrameMismatch("element does not lie in the target frame lattice")
    n2 = tuple(int(s) % k for s in scaled)
    v2 = vec_mat([Fraction(m, k) for m in n2], frame.basis.stack)
    w = vec_sub(v2, v1)
    t = k * frame.space.omega(v1, w)
    return HeisenbergElement(k, x.phase * UnitPhase.of(t), n2, frame)


def heisenberg_matrix(x: HeisenbergElement, space: HilbertSpace) -> "RepMatrix":
    """The unitary action on the labeled standard basis.

    Generators act per the translation computation: the i-th leaf direction
    is diagonal with phases e^{2 pi i q_i / k}, the i-th transverse direction
    shifts the i-th label by one.  A general element is the ordered product
    (transverse components first, then leaf components) times the central
    phase that re-balances the element against that product.
    """
    if space.pol != x.frame or space.k != x.k:
        raise FrameMismatch("element frame does not match the Hilbert space")
    k, g = x.k, space.g
    labels = space.labels
    dim = space.dim
    acc = np.eye(dim, dtype=complex)
    rebuilt = heisenberg_identity(k, x.frame)
    factors = []
    for i in range(g):
        factors += [(g + i, x.n[g + i])]
    for i in range(g):
        factors += [(i, x.n[i])]
    for pos, count in factors:
        if count == 0:
            continue
        gen = np.zeros((dim, dim), dtype=complex)
        if pos < g:
            for idx, q in enumerate(labels):
                gen[idx, idx] = UnitPhase.of(Fraction(2 * q[pos], k)).value()
        else:
            i = pos - g
            for idx, q in enumerate(labels):
                shifted = list(q)
                shifted[i] = (shifted[i] + 1) % k
                gen[space.label_index(shifted), idx] = 1.0
        unit = [0] * 2 * g
        unit[pos] = 1
        gen_elem = HeisenbergElement.of(k, unit, x.frame)
        for _ in range(count):
            acc = acc @ gen
            rebuilt = heisenberg_mul(rebuilt, gen_elem)
    balance = x.phase * rebuilt.phase.conj()
    return RepMatrix(space, balance.value() * acc)


@dataclass(eq=False)
class RepMatrix:
    """A unitary operator on one Hilbert space, in its labeled basis."""

    space: HilbertSpace
    matrix: np.ndarray


# ---------------------------------------------------------------------------
# symplectic and metaplectic operators


def sp_pushforward(b: SpElement, space: HilbertSpace) -> Intertwiner:
    """The geometric pushforward H_P -> H_{bP}, landing in canonical frames.

    In the image frame b.(W; Wperp) the pushforward is the identity
    permutation of labels; a frame change unitary then moves it to the
    canonical frame of bP.
    """
    pol = space.pol
    if b.space != pol.space:
        raise BaseMismatch("map and polarization live over different spaces")
    moved_lag = b.apply_lagrangian(pol.lag)
    moved_basis = b.apply_basis(pol.basis)
    target = Polarization.canonical(moved_lag)
    reb = rebase_unitary(Polarization(moved_lag, moved_basis), moved_basis, target.basis, space.k)
    return Intertwiner(space, HilbertSpace(space.k, target), reb.matrix, reb.exact)


def sp_operator(b: SpElement, space: HilbertSpace) -> RepMatrix:
    """U(b) = (pairing map back from H_{bP}) composed with the pushforward.

    A projective representation: U(b) U(b') equals U(bb') up to the
    eighth-root-of-unity cocycle fixed by the triple index.
    """
    push = sp_pushforward(b, space)
    pairing = bks_matrix(push.target, space)
    return RepMatrix(space, pairing.matrix @ push.matrix)


def mp_operator(x: MpElement, space: HilbertSpace) -> RepMatrix:
    """U(b, z) = e^{(pi i/4) z} U(b); a genuine unitary representation of
    the integer metaplectic group on the fixed Hilbert space."""
    if x.base != space.pol.lag:
        raise BaseMismatch("element base does not match the Hilbert space")
    u = sp_operator(x.b, space)
    return RepMatrix(space, UnitPhase.of(Fraction(x.z, 4)).value() * u.matrix)
