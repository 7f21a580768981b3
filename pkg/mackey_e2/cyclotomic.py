"""
Exact arithmetic in the cyclotomic integers Z[zeta_n].

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) and
reduced modulo the n-th cyclotomic polynomial, so equal elements have equal
coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import Symbol, cyclotomic_poly


@lru_cache(maxsize=None)
def _reduction_data(n: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """
    Low-order coefficients of Phi_n (monic) and the reduced powers zeta^k, 0 <= k < n.
    """
    if n < 1:
        raise ValueError(f"Conductor must be positive, got {n}.")
    x = Symbol("x")
    coefficients = [int(c) for c in cyclotomic_poly(n, x, polys=True).all_coeffs()]
    low = tuple(reversed(coefficients))
    phi = len(low) - 1
    powers = []
    current = [1] + [0] * (phi - 1)
    for _ in range(n):
        powers.append(tuple(current))
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            for k in range(phi):
                current[k] -= top * low[k]
    return low, tuple(powers)


def degree(n: int) -> int:
    """
    Euler's phi(n): the length of a coefficient vector for conductor n.
    """
    return len(_reduction_data(n)[0]) - 1


@dataclass(frozen=True)
class CycInt:
    """
    Element of Z[zeta_n] in the reduced power basis.
    """

    conductor: int
    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "CycInt":
        return cls(n, (0,) * degree(n))

    @classmethod
    def from_int(cls, n: int, value: int) -> "CycInt":
        return cls(n, (int(value),) + (0,) * (degree(n) - 1))

    @classmethod
    def root_power(cls, n: int, k: int) -> "CycInt":
        """
        zeta_n ** k.
        """
        return cls(n, _reduction_data(n)[1][k % n])

    def _check(self, other: "CycInt"):
        if self.conductor != other.conductor:
            raise ValueError(f"Conductors {self.conductor} and {other.conductor} differ.")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.conductor, other)
        self._check(other)
        return CycInt(self.conductor, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.conductor, other)
        self._check(other)
        return CycInt(self.conductor, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycInt(self.conductor, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.conductor, tuple(other * a for a in self.coeffs))
        self._check(other)
        low, _ = _reduction_data(self.conductor)
        phi = len(self.coeffs)
        product = [0] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        product[i + j] += a * b
        for k in range(2 * phi - 2, phi - 1, -1):
            top = product[k]
            if top:
                product[k] = 0
                for t in range(phi):
                    if low[t]:
                        product[k - phi + t] -= top * low[t]
        return CycInt(self.conductor, tuple(product[:phi]))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        result = CycInt.from_int(self.conductor, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ArithmeticError(f"{self} is not a rational integer.")
        return self.coeffs[0]

    def exact_div(self, divisor: int) -> "CycInt":
        if any(a % divisor for a in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {divisor}.")
        return CycInt(self.conductor, tuple(a // divisor for a in self.coeffs))

    def __repr__(self):
        if self.is_integer():
            return str(self.coeffs[0])
        terms = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            base = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
            terms.append(base if a == 1 and k else f"{a}*{base}" if k else str(a))
        return f"({' + '.join(terms)})_{self.conductor}"
