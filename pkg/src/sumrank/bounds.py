"""Sum-rank Gilbert-Varshamov bounds and the linear bound reached by AG constructions."""

from __future__ import annotations

import csv
import enum
import io
import math
from typing import Iterable

from .errors import DeltaTooSmall, InvalidQ, QNotSquare

TOL = 1e-9


class RInf(enum.Enum):
    """Marker for the limit r -> infinity."""

    INF = "inf"


R_INF = RInf.INF


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise InvalidQ(f"q must be an integer >= 2, got {q!r}")


def gamma_q(q: int) -> float:
    """prod_{i >= 1} (1 - q^-i)^-1, truncated once a factor is within 1e-15 of 1."""
    _check_q(q)
    out = 1.0
    i = 1
    while True:
        t = q ** (-i)
        out /= 1.0 - t
        if t < 1e-15:
            return out
        i += 1


def _log_q(q: int, v: float) -> float:
    return math.log(v) / math.log(q)


def gv_finite(q: int, r: int, s: int, delta: float) -> float:
    """Largest rate guaranteed by the finite-length sum-rank GV bound, d = round(delta*s*r)."""
    _check_q(q)
    sr = s * r
    if delta <= 2 / sr:
        raise DeltaTooSmall(f"delta must exceed 2/(rs) = {2 / sr}")
    d = round(delta * sr)
    if d < 2:
        raise DeltaTooSmall(f"d = round(delta*s*r) = {d} < 2")
    head = delta**2 - delta * (2 + 2 / sr) + 1 + 2 / sr + 1 / sr**2
    tail = sum(_log_q(q, 1 + (s - 1) / i) for i in range(1, d)) + _log_q(q, d - 1)
    return head - tail / (r * r * s) - _log_q(q, gamma_q(q)) / r**2


def gv_asymptotic(q: int, r: int | RInf, delta: float) -> float:
    """Asymptotic GV rate; the o(1) term is dropped and delta = 0 gives the limit value."""
    _check_q(q)
    if r is R_INF:
        return (delta - 1) ** 2
    lg = _log_q(q, gamma_q(q)) / r**2
    if delta == 0:
        return 1 - lg
    return (
        (delta - 1) ** 2
        - (delta / r) * _log_q(q, 1 + 1 / (delta * r))
        - _log_q(q, 1 + delta * r) / r**2
        - lg
    )


def compgv(q: int, r: int | RInf, delta: float) -> float:
    """1 - delta - 2/(sqrt q - 1) + 1/(r (sqrt q - 1)); q must be a perfect square."""
    _check_q(q)
    root = math.isqrt(q)
    if root * root != q:
        raise QNotSquare(f"q = {q} is not a perfect square")
    val = 1 - delta - 2 / (root - 1)
    if r is not R_INF:
        val += 1 / (r * (root - 1))
    return val


def delta_grid(step: float = 0.01) -> list[float]:
    n = math.ceil(1 / step - TOL)
    return [round(i * step, 12) for i in range(n)]


def emit_table(q: int, r: int | RInf, deltas: Iterable[float] | None = None) -> str:
    """CSV with columns delta, gv_asymptotic, compgv at six decimals."""
    if deltas is None:
        deltas = delta_grid()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta", "gv_asymptotic", "compgv"])
    for d in deltas:
        w.writerow([f"{d:.6f}", f"{gv_asymptotic(q, r, d):.6f}", f"{compgv(q, r, d):.6f}"])
    return buf.getvalue()


def parse_r(text: str) -> int | RInf:
    if text.lower() in ("inf", "infinity", "oo"):
        return R_INF
    r = int(text)
    if r < 1:
        raise ValueError("r must be >= 1")
    return r
