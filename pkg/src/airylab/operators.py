"""Generators and unitaries of the closed algebra, applied spectrally.

Every operator here is diagonal (or local) in one representation, so
applications are exact for the grid-represented field: no Trotter
splitting, no finite differences, no dense matrices.  Unitaries return
a field in the same representation they received.

Time stamps: free_evolve advances the field's time; translate, boost,
the displacement unitary, and the Zassenhaus product preserve it (they
relabel the state, they do not propagate it).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AirylabError, PhysParams, Rep, WaveField, to_rep
from .states import CoherentParams

_TAGS = ("x", "p", "h", "k")


@dataclass(frozen=True)
class GeneratorKind:
    """One of the generators x, p, H = p^2/2m, or K(t) = t p - m x.

    K carries its time argument explicitly; the other tags must not
    have one.  Use the factory methods rather than the constructor.
    """

    tag: str
    t: float | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise AirylabError(f"unknown generator tag {self.tag!r}")
        if self.tag == "k":
            if self.t is None or not np.isfinite(self.t):
                raise AirylabError("K requires a finite time argument")
        elif self.t is not None:
            raise AirylabError(f"generator {self.tag!r} takes no time argument")

    @staticmethod
    def x() -> "GeneratorKind":
        return GeneratorKind("x")

    @staticmethod
    def p() -> "GeneratorKind":
        return GeneratorKind("p")

    @staticmethod
    def h() -> "GeneratorKind":
        return GeneratorKind("h")

    @staticmethod
    def k(t: float) -> "GeneratorKind":
        return GeneratorKind("k", float(t))


@dataclass(frozen=True)
class BoostParams:
    """Velocity v and the time t at which the boost generator is taken."""

    v: float
    t: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.v) and np.isfinite(self.t)):
            raise AirylabError("BoostParams require finite v and t")


def apply_generator(
    kind: GeneratorKind, field: WaveField, phys: PhysParams | None = None
) -> WaveField:
    """Apply one generator, diagonal in its own representation.

    The result comes back in the representation of the input field.
    K(t) = t p - m x combines the two diagonal applications.
    """
    phys = phys if phys is not None else PhysParams()
    if kind.tag == "x":
        pos = to_rep(field, Rep.POSITION)
        out = pos.with_amplitudes(field.grid.x * pos.amplitudes)
        return to_rep(out, field.rep)
    if kind.tag == "p":
        mom = to_rep(field, Rep.MOMENTUM)
        out = mom.with_amplitudes(field.grid.p * mom.amplitudes)
        return to_rep(out, field.rep)
    if kind.tag == "h":
        mom = to_rep(field, Rep.MOMENTUM)
        out = mom.with_amplitudes(
            field.grid.p ** 2 / (2.0 * phys.m) * mom.amplitudes)
        return to_rep(out, field.rep)
    pa = apply_generator(GeneratorKind.p(), field, phys)
    xa = apply_generator(GeneratorKind.x(), field, phys)
    return field.with_amplitudes(
        kind.t * pa.amplitudes - phys.m * xa.amplitudes)


def translate(field: WaveField, a: float) -> WaveField:
    """Exact spectral shift psi(x - a); a need not be a lattice multiple."""
    a = float(a)
    if not np.isfinite(a):
        raise AirylabError("translation distance must be finite")
    mom = to_rep(field, Rep.MOMENTUM)
    out = mom.with_amplitudes(
        np.exp(-1j * field.grid.p * a / field.grid.hbar) * mom.amplitudes)
    return to_rep(out, field.rep)


def boost(
    field: WaveField, b: BoostParams, phys: PhysParams | None = None
) -> WaveField:
    """e^(i v K(t)/hbar) in its exact factorized form.

    Global phase e^(-i m v^2 t / 2 hbar), then the momentum kick
    e^(-i v m x/hbar), applied to psi(x + v t).
    """
    phys = phys if phys is not None else PhysParams()
    hbar, m = phys.hbar, phys.m
    shifted = to_rep(translate(field, -b.v * b.t), Rep.POSITION)
    amps = (np.exp(-1j * m * b.v ** 2 * b.t / (2.0 * hbar))
            * np.exp(-1j * b.v * m * field.grid.x / hbar)
            * shifted.amplitudes)
    return to_rep(shifted.with_amplitudes(amps), field.rep)


def free_evolve(
    field: WaveField, tau: float, phys: PhysParams | None = None
) -> WaveField:
    """Exact free propagator e^(-i H tau/hbar); advances field.time by tau."""
    phys = phys if phys is not None else PhysParams()
    tau = float(tau)
    if not np.isfinite(tau):
        raise AirylabError("evolution time must be finite")
    mom = to_rep(field, Rep.MOMENTUM)
    amps = np.exp(-1j * field.grid.p ** 2 * tau
                  / (2.0 * phys.m * field.grid.hbar)) * mom.amplitudes
    out = WaveField(grid=mom.grid, rep=Rep.MOMENTUM, amplitudes=amps,
                    time=field.time + tau)
    return to_rep(out, field.rep)


def apply_displacement_U(
    field: WaveField, c: CoherentParams, phys: PhysParams | None = None
) -> WaveField:
    """Coherent-family displacement, a single momentum-diagonal phase:

    U(eps, t, xi) = exp((i/hbar)(-eps p^3/6m^2 - t p^2/2m + xi p/m)).
    """
    phys = phys if phys is not None else PhysParams()
    hbar, m = phys.hbar, phys.m
    mom = to_rep(field, Rep.MOMENTUM)
    p = field.grid.p
    phase = np.exp(1j * (-c.eps * p ** 3 / (6.0 * m * m)
                         - c.t * p ** 2 / (2.0 * m)
                         + c.xi * p / m) / hbar)
    return to_rep(mom.with_amplitudes(phase * mom.amplitudes), field.rep)


def zassenhaus_rhs(
    field: WaveField,
    v: float,
    eps: float,
    t: float,
    phys: PhysParams | None = None,
) -> WaveField:
    """Disentangled product e^(-i m eps v^3/3 hbar) e^(i v eps H/hbar)
    e^(i v K(t)/hbar) e^(i v^2 eps p/2 hbar), applied right to left.

    The factorization of e^(i v (K + eps H)/hbar) closes at these four
    factors because the algebra's deeper nested brackets vanish.
    """
    phys = phys if phys is not None else PhysParams()
    v, eps, t = float(v), float(eps), float(t)
    if not (np.isfinite(v) and np.isfinite(eps) and np.isfinite(t)):
        raise AirylabError("zassenhaus_rhs requires finite v, eps, t")
    out = translate(field, -v * v * eps / 2.0)
    out = boost(out, BoostParams(v=v, t=t), phys)
    out = free_evolve(out, -v * eps, phys)
    amps = np.exp(-1j * phys.m * eps * v ** 3 / (3.0 * phys.hbar)) * out.amplitudes
    return WaveField(grid=out.grid, rep=out.rep, amplitudes=amps, time=field.time)
