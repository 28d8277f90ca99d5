"""The discretized rotation ``F(x, y) = (y, -floor(x + lam*y + eta))`` on Z^2.

``F`` is a bijection and factors into two involutions, ``F = phi o g`` with
``phi(x, y) = (y, x)`` and ``g(x, y) = (-floor(x + lam*y + eta), y)``.
States are plain ``(x, y)`` tuples of Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .exact import FieldElement, floor_mul_sqrt, make_coeff

__all__ = [
    "LatticeState",
    "RotationParams",
    "StepTrace",
    "in_fix_g",
    "in_fix_phi",
    "involution_g",
    "involution_phi",
    "step",
    "step_back",
    "three_term_check",
    "trace_step",
]


class LatticeState(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class RotationParams:
    """A rotation coefficient ``lam`` in (-2, 2) with shift ``eta``.

    ``lam`` and ``eta`` must be rational or share one quadratic field.
    """

    lam: FieldElement
    eta: FieldElement = field(default_factory=lambda: FieldElement(0))
    lambda_sq: FieldElement = field(init=False)
    sin_sq_theta: FieldElement = field(init=False)
    kappa: FieldElement = field(init=False)
    theta_float: float = field(init=False)
    # integer kernel: x + lam*y + eta == (den*x + p1*y + p0 + (q1*y + q0)*sqrt(d)) / den
    _kernel: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam = FieldElement.coerce(self.lam)
        eta = FieldElement.coerce(self.eta)
        if not (lam > -2 and lam < 2):
            raise ValueError(f"lambda={lam} outside (-2, 2)")
        if lam.d is not None and eta.d is not None and lam.d != eta.d:
            raise ValueError("lambda and eta must share one quadratic field")
        set_ = object.__setattr__
        set_(self, "lam", lam)
        set_(self, "eta", eta)
        set_(self, "lambda_sq", lam * lam)
        set_(self, "sin_sq_theta", 1 - self.lambda_sq / 4)
        set_(self, "kappa", eta / (lam + 2))
        set_(self, "theta_float", math.acos(-float(lam) / 2))

        den = lam.c * eta.c // math.gcd(lam.c, eta.c)
        m1, m2 = den // lam.c, den // eta.c
        d = lam.d if lam.d is not None else (eta.d or 0)
        set_(self, "_kernel", (den, lam.a * m1, eta.a * m2, lam.b * m1, eta.b * m2, d))

    @classmethod
    def from_text(cls, lam: str, eta: str = "rat:0/1") -> RotationParams:
        return cls(make_coeff(lam, rotation=True), make_coeff(eta))

    @property
    def d(self) -> int | None:
        return self.lam.d if self.lam.d is not None else self.eta.d

    @property
    def has_shift(self) -> bool:
        return bool(self.eta)

    def floor_arg(self, x: int, y: int) -> int:
        """``floor(x + lam*y + eta)`` computed with integers only."""
        den, p1, p0, q1, q0, d = self._kernel
        q = q1 * y + q0
        if q:
            return (den * x + p1 * y + p0 + floor_mul_sqrt(q, d)) // den
        return (den * x + p1 * y + p0) // den

    def field_arg(self, x: int, y: int) -> FieldElement:
        return x + self.lam * y + self.eta

    def describe(self) -> dict:
        return {"lambda": self.lam.to_text(), "eta": self.eta.to_text()}

    def __getstate__(self):
        return {"lam": self.lam, "eta": self.eta}

    def __setstate__(self, state):
        object.__setattr__(self, "lam", state["lam"])
        object.__setattr__(self, "eta", state["eta"])
        self.__post_init__()


class StepTrace(NamedTuple):
    state_before: LatticeState
    state_after: LatticeState
    floor_arg: FieldElement
    mu: FieldElement


def step(s: tuple[int, int], p: RotationParams) -> LatticeState:
    x, y = s
    return LatticeState(y, -p.floor_arg(x, y))


def step_back(s: tuple[int, int], p: RotationParams) -> LatticeState:
    x, y = s
    return LatticeState(-p.floor_arg(y, x), x)


def involution_phi(s: tuple[int, int]) -> LatticeState:
    x, y = s
    return LatticeState(y, x)


def involution_g(s: tuple[int, int], p: RotationParams) -> LatticeState:
    x, y = s
    return LatticeState(-p.floor_arg(x, y), y)


def in_fix_phi(s: tuple[int, int]) -> bool:
    return s[0] == s[1]


def in_fix_g(s: tuple[int, int], p: RotationParams) -> bool:
    """``-eta <= 2x + lam*y < 1 - eta``, decided by exact sign tests."""
    x, y = s
    v = 2 * x + p.lam * y + p.eta
    return v.sign() >= 0 and (v - 1).sign() < 0


def three_term_check(a: int, b: int, c: int, p: RotationParams) -> bool:
    """True iff ``-eta <= c + lam*b + a < 1 - eta``, i.e. ``F(a, b) == (b, c)``."""
    v = c + p.lam * b + a + p.eta
    return v.sign() >= 0 and (v - 1).sign() < 0


def trace_step(s: tuple[int, int], p: RotationParams) -> StepTrace:
    """One step together with the floor argument and its fractional part."""
    x, y = s
    arg = p.field_arg(x, y)
    fl = arg.floor()
    return StepTrace(LatticeState(x, y), LatticeState(y, -fl), arg, arg - fl)
