"""
Truncated Power Series
Series in one formal variable with backend-scalar coefficients, truncated at a fixed order
"""

from typing import Any, Callable, Iterable, List, Sequence

from core.scalars.backend import ScalarBackend


class TruncatedSeries:
    """
    sum_{n < order} c_n t^n.

    `tag` names the variable (t, y, w, ...) and only series with equal tags
    and orders may be combined.
    """

    __slots__ = ("backend", "coeffs", "order", "tag")

    def __init__(self, backend: ScalarBackend, coeffs: Sequence[Any], order: int, tag: str = "t"):
        self.backend = backend
        self.order = order
        self.tag = tag
        padded = list(coeffs)[:order]
        while len(padded) < order:
            padded.append(backend.zero())
        self.coeffs: List[Any] = padded

    # ---- constructors ----

    @classmethod
    def constant(cls, backend: ScalarBackend, value: Any, order: int, tag: str = "t") -> "TruncatedSeries":
        return cls(backend, [value], order, tag)

    @classmethod
    def one(cls, backend: ScalarBackend, order: int, tag: str = "t") -> "TruncatedSeries":
        return cls(backend, [backend.one()], order, tag)

    @classmethod
    def linear(cls, backend: ScalarBackend, a: Any, order: int, tag: str = "t") -> "TruncatedSeries":
        """1 - a t"""
        return cls(backend, [backend.one(), -a], order, tag)

    @classmethod
    def geometric(cls, backend: ScalarBackend, a: Any, order: int, tag: str = "t") -> "TruncatedSeries":
        """1 / (1 - a t)"""
        coeffs, power = [], backend.one()
        for _ in range(order):
            coeffs.append(power)
            power = power * a
        return cls(backend, coeffs, order, tag)

    # ---- arithmetic ----

    def _check(self, other: "TruncatedSeries") -> None:
        if other.tag != self.tag or other.order != self.order:
            raise ValueError(f"cannot combine series in {self.tag}/{self.order} and {other.tag}/{other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.backend, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.tag)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.backend, [-a for a in self.coeffs], self.order, self.tag)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        out = [self.backend.zero() for _ in range(self.order)]
        for i, a in enumerate(self.coeffs):
            if self.backend.is_zero(a):
                continue
            for j in range(self.order - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return TruncatedSeries(self.backend, out, self.order, self.tag)

    def scale(self, value: Any) -> "TruncatedSeries":
        return TruncatedSeries(self.backend, [a * value for a in self.coeffs], self.order, self.tag)

    def inverse(self) -> "TruncatedSeries":
        """Requires an invertible constant term."""
        c0 = self.coeffs[0]
        if self.backend.is_zero(c0):
            raise ZeroDivisionError(f"series in {self.tag} has no unit constant term")
        inv0 = self.backend.one() / c0
        out = [inv0]
        for n in range(1, self.order):
            acc = self.backend.zero()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-acc * inv0)
        return TruncatedSeries(self.backend, out, self.order, self.tag)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def substitute_scaled(self, factor: Any) -> "TruncatedSeries":
        """f(t) -> f(factor * t)"""
        out, power = [], self.backend.one()
        for c in self.coeffs:
            out.append(c * power)
            power = power * factor
        return TruncatedSeries(self.backend, out, self.order, self.tag)

    def coefficient(self, n: int) -> Any:
        if n < 0:
            return self.backend.zero()
        if n >= self.order:
            raise IndexError(f"t^{n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries) or other.tag != self.tag:
            return False
        n = min(self.order, other.order)
        return all(self.backend.equal(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(
            f"({self.backend.canonical(c)})*{self.tag}^{n}" for n, c in enumerate(self.coeffs) if not self.backend.is_zero(c)
        )
        return f"{body or '0'} + O({self.tag}^{self.order})"


def exp_from_power_sums(
    backend: ScalarBackend, weights: Callable[[int], Any], order: int, tag: str = "t"
) -> TruncatedSeries:
    """
    exp(sum_{n >= 1} weights(n) t^n / n) via N e_N = sum_{n=1}^N weights(n) e_{N-n}.
    """
    e = [backend.one()]
    w = [None] + [weights(n) for n in range(1, order)]
    for big_n in range(1, order):
        acc = backend.zero()
        for n in range(1, big_n + 1):
            acc = acc + w[n] * e[big_n - n]
        e.append(acc / backend.rational(big_n))
    return TruncatedSeries(backend, e, order, tag)


def product(series: Iterable[TruncatedSeries], backend: ScalarBackend, order: int, tag: str = "t") -> TruncatedSeries:
    out = TruncatedSeries.one(backend, order, tag)
    for s in series:
        out = out * s
    return out
