"""The chiral conformal group PSL(2,R) acting on the light ray and the circle.

Group elements are real unimodular 2x2 matrices compared up to a global
sign. Light-ray points are real numbers or the tagged ``INF``; circle
points are Python ``complex`` values of modulus one. The two pictures are
related by the Cayley map ``z = (ix+1)/(-ix+1)``.

Subgroup conventions::

    translation(a)        x -> x + a
    dilation(tau)         x -> exp(tau) x
    special_conformal(n)  x -> x / (1 + n x)
    rotation(t)           z -> exp(i t) z   on the circle
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

DET_TOL = 1e-12


@dataclass(frozen=True)
class GroupElement:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL * max(1.0, abs(self.a * self.d), abs(self.b * self.c)):
            raise ValueError(f"determinant {det!r} is not 1")

    @classmethod
    def from_matrix(cls, m, renormalize=False):
        m = np.asarray(m, dtype=float)
        if renormalize:
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if det <= 0:
                raise ValueError("matrix must have positive determinant")
            m = m / math.sqrt(det)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return GroupElement.from_matrix(self.matrix() @ other.matrix(), renormalize=True)

    def inverse(self) -> GroupElement:
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> GroupElement:
        """Representative whose first nonzero entry is positive."""
        for x in (self.a, self.b, self.c, self.d):
            if x != 0:
                if x < 0:
                    return GroupElement(-self.a, -self.b, -self.c, -self.d)
                return self
        return self

    def distance(self, other: GroupElement) -> float:
        """Max-entry distance between the two projective classes."""
        m, n = self.matrix(), other.matrix()
        return float(min(np.abs(m - n).max(), np.abs(m + n).max()))

    def isclose(self, other: GroupElement, tol: float = 1e-10) -> bool:
        return self.distance(other) <= tol

    def trace(self) -> float:
        return self.a + self.d


IDENTITY = GroupElement(1.0, 0.0, 0.0, 1.0)


def translation(a: float) -> GroupElement:
    return GroupElement(1.0, float(a), 0.0, 1.0)


def dilation(tau: float) -> GroupElement:
    return GroupElement(math.exp(tau / 2), 0.0, 0.0, math.exp(-tau / 2))


def special_conformal(n: float) -> GroupElement:
    return GroupElement(1.0, 0.0, float(n), 1.0)


def rotation(t: float) -> GroupElement:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return GroupElement(c, s, -s, c)


def compose(*gs: GroupElement) -> GroupElement:
    out = IDENTITY
    for g in gs:
        out = out @ g
    return out


# Cayley conjugation between the light ray and the unit circle.
_CAYLEY = np.array([[1j, 1.0], [-1j, 1.0]])
_CAYLEY_INV = np.linalg.inv(_CAYLEY)


def to_disc(g: GroupElement) -> tuple[complex, complex]:
    """SU(1,1) entries (alpha, beta) of g transported to the circle."""
    m = _CAYLEY @ g.matrix() @ _CAYLEY_INV
    return complex(m[0, 0]), complex(m[0, 1])


def from_disc(alpha: complex, beta: complex) -> GroupElement:
    m = np.array([[alpha, beta], [beta.conjugate(), alpha.conjugate()]])
    real = _CAYLEY_INV @ m @ _CAYLEY
    return GroupElement.from_matrix(real.real, renormalize=True)


def mobius_apply(g: GroupElement, p):
    """Act with g on a light-ray point (real or INF) or a circle point (complex)."""
    if isinstance(p, complex):
        alpha, beta = to_disc(g)
        num = alpha * p + beta
        den = beta.conjugate() * p + alpha.conjugate()
        return num / den
    if p is INF:
        return INF if g.c == 0 else g.a / g.c
    den = g.c * p + g.d
    if den == 0:
        return INF
    return (g.a * p + g.b) / den


def cayley_map(p, direction: str = "line-to-circle"):
    if direction == "line-to-circle":
        if p is INF:
            return complex(-1.0, 0.0)
        return (1j * p + 1) / (-1j * p + 1)
    if direction == "circle-to-line":
        z = complex(p)
        if z == -1:
            return INF
        return ((z - 1) / (1j * (z + 1))).real
    raise ValueError(f"unknown direction {direction!r}")


def iwasawa_decompose(g: GroupElement) -> tuple[float, float, float]:
    """Return (p, tau, t) with g = translation(p) dilation(tau) rotation(t), t in (-pi, pi]."""
    c, d = g.c, g.d
    if d < 0 or (d == 0 and c > 0):
        c, d = -c, -d
        g = GroupElement(-g.a, -g.b, c, d)
    t = 2.0 * math.atan2(-c, d)
    tau = -math.log(c * c + d * d)
    m = g.matrix() @ rotation(-t).matrix()
    p = m[0, 1] / m[1, 1]
    return p, tau, t


def dilation_word(tau: float) -> GroupElement:
    """Dilation written as a product of two special conformal maps and two translations."""
    e = math.exp(tau / 2)
    return compose(special_conformal(-(e - 1) / e), translation(1.0),
                   special_conformal(e - 1), translation(-1 / e))


def rotation_word(t: float) -> GroupElement:
    """rotation(2t) as S(s) T(sin t) S(s) with s = (cos t - 1)/sin t, for |t| < pi."""
    s = -math.tan(t / 2)  # same value, finite at t = 0
    return compose(special_conformal(s), translation(math.sin(t)), special_conformal(s))


def _disc_parameters(g: GroupElement) -> tuple[float, complex]:
    """Phase angle phi and zero z0 of the disc automorphism exp(i phi)(z - z0)/(1 - conj(z0) z)."""
    alpha, beta = to_disc(g)
    phi = cmath.phase(alpha / alpha.conjugate())
    return phi, -beta / alpha


def _disc_element(psi: float, w0: complex) -> GroupElement:
    alpha = cmath.exp(0.5j * psi) / math.sqrt(1.0 - abs(w0) ** 2)
    return from_disc(alpha, -alpha * w0)


def sqrt_in_psl(g: GroupElement) -> GroupElement:
    """A square root h of g (h @ h equals g projectively).

    With g acting on the disc as exp(i phi)(z - z0)/(1 - conj(z0) z) and
    0 < phi <= pi, the root has phase psi > phi/2 solving
    2 sin(phi/2) sin(psi - phi/2) = (1 - cos psi) |z0|^2; the smallest such
    psi is taken. Negative phases are handled through the inverse element.
    """
    phi, z0 = _disc_parameters(g)
    if phi < 0:
        return sqrt_in_psl(g.inverse()).inverse()
    r2 = abs(z0) ** 2
    if r2 == 0.0:
        return _disc_element(phi / 2, 0j)
    if phi < 1e-14:
        s = (1.0 - math.sqrt(1.0 - r2)) / r2
        return _disc_element(0.0, z0 * s)
    half = phi / 2
    sin_half = math.sin(half)

    def residual(psi):
        return 2 * sin_half * math.sin(psi - half) - (1 - math.cos(psi)) * r2

    # residual < 0 at psi = phi/2; bracket the first crossing through its maximum
    peak = minimize_scalar(lambda psi: -residual(psi), bounds=(half, half + math.pi),
                           method="bounded", options={"xatol": 1e-14}).x
    psi = brentq(residual, half, peak, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    w0 = cmath.exp(-0.5j * psi) * cmath.exp(0.5j * phi) * z0 * math.sin(psi / 2) / sin_half
    return _disc_element(psi, w0)
