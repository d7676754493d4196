"""
Cylinder Propagator Module

The free-rotor evolution kernel on the circle, as a sum over angular
momentum states and as a sum over images (winding paths).
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

import mpmath

from src.cylinder.theta import (
    ThetaParams,
    gaussian_tail_bound,
    smallest_truncation,
    theta_truncated,
    verify_jacobi,
)
from src.gauss.report import VerificationReport
from src.phasecalc.precision import (
    DEFAULT_PRECISION_BITS,
    GUARD_BITS,
    ComplexHP,
    principal_sqrt,
    rounding_term,
)
from src.utils.errors import DomainError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CylinderKernelParams:
    """
    Moment of inertia, hbar, complex time and the two angles of a kernel
    evaluation. Im(t) < 0 is required: on the real axis the series are
    only convergent in the distribution sense.

    ``truncation`` applies to both series; None picks, per series, the
    smallest M whose tail bound is below 2^-precision_bits.
    """
    I: Any
    hbar: Any
    t: Any
    theta0: Any = 0
    theta: Any = 0
    truncation: Optional[int] = None
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            for name in ('I', 'hbar', 'theta0', 'theta'):
                object.__setattr__(self, name, mpmath.mpf(mpmath.mpmathify(getattr(self, name))))
            object.__setattr__(self, 't', mpmath.mpc(mpmath.mpmathify(self.t)))
            if self.t.imag >= 0:
                raise DomainError(
                    "Im(t) must be negative; for real t the kernel is only "
                    "convergent in the distribution sense",
                    {'t': mpmath.nstr(self.t, 10)}
                )
            if self.I <= 0 or self.hbar <= 0:
                raise DomainError("I and hbar must be positive",
                                  {'I': mpmath.nstr(self.I, 10),
                                   'hbar': mpmath.nstr(self.hbar, 10)})
            two_pi = 2 * mpmath.pi
            for name in ('theta0', 'theta'):
                angle = getattr(self, name)
                if not 0 <= angle < two_pi:
                    raise DomainError(f"{name} must lie in [0, 2*pi)",
                                      {name: mpmath.nstr(angle, 10)})
        if self.truncation is not None and self.truncation < 1:
            raise DomainError("truncation must be positive", {'truncation': self.truncation})

    @classmethod
    def jacobi_preset(cls, t: Any, theta0: Any = 0, theta: Any = 0,
                      truncation: Optional[int] = None,
                      precision_bits: int = DEFAULT_PRECISION_BITS) -> 'CylinderKernelParams':
        """The 2*pi*I = hbar convention: I = 1/(2*pi), hbar = 1."""
        with mpmath.workprec(precision_bits + GUARD_BITS):
            inertia = 1 / (2 * mpmath.pi)
        return cls(inertia, 1, t, theta0, theta, truncation, precision_bits)

    @property
    def beta(self) -> mpmath.mpf:
        """-Im(t) > 0."""
        return -self.t.imag

    @property
    def tau(self) -> mpmath.mpc:
        """i*hbar*t / (2*pi*I): the theta argument of the trace."""
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return 1j * self.hbar * self.t / (2 * mpmath.pi * self.I)

    def with_angles(self, theta0: Any, theta: Any) -> 'CylinderKernelParams':
        return CylinderKernelParams(self.I, self.hbar, self.t, theta0, theta,
                                    self.truncation, self.precision_bits)


def spectral_kernel(params: CylinderKernelParams) -> ComplexHP:
    """
    K(theta, theta0; t) = (1/2pi) sum_n exp(-i hbar n^2 t/(2I)) exp(i n (theta - theta0)).

    Terms decay like exp(-c n^2) with c = hbar*beta/(2I), so the tail past
    M is at most (1/pi) * gaussian_tail_bound(c, M + 1).
    """
    bits = params.precision_bits
    with mpmath.workprec(bits + GUARD_BITS):
        c = params.hbar * params.beta / (2 * params.I)
        target = mpmath.ldexp(1, -bits)
        M = params.truncation or smallest_truncation(c, target, offset=1, scale=1 / mpmath.pi)
        alpha = params.hbar * params.t / (2 * params.I)
        phi = params.theta - params.theta0
        total = mpmath.mpc(1)
        magnitude = mpmath.mpf(1)
        for n in range(1, M + 1):
            weight = mpmath.exp(-1j * alpha * n * n)
            total += 2 * weight * mpmath.cos(n * phi)
            magnitude += 2 * abs(weight)
        value = total / (2 * mpmath.pi)
        err = (gaussian_tail_bound(c, M + 1) / mpmath.pi
               + rounding_term(4 * (M + 1) * magnitude, bits))
        return ComplexHP(value.real, value.imag, bits, err)


def image_kernel(params: CylinderKernelParams) -> ComplexHP:
    """
    K(theta, theta0; t) = sum_n (I/(2 pi i hbar t))^(1/2) exp(i I (theta - theta0 - 2 pi n)^2 / (2 hbar t)).

    Image n winds n times around the circle. Since |phi - 2 pi n| >= 2 pi (|n| - 1),
    the terms past |n| = M are majorised by 2 |prefactor| gaussian_tail_bound(4 pi^2 c, M)
    with c = I*beta / (2 hbar |t|^2).
    """
    bits = params.precision_bits
    with mpmath.workprec(bits + GUARD_BITS):
        c = params.I * params.beta / (2 * params.hbar * abs(params.t) ** 2)
        decay = 4 * mpmath.pi ** 2 * c
        arg = ComplexHP.from_value(
            params.I / (2j * mpmath.pi * params.hbar * params.t), bits + GUARD_BITS
        )
        prefactor_hp = principal_sqrt(arg)
        prefactor = prefactor_hp.value
        size = abs(prefactor)
        target = mpmath.ldexp(1, -bits)
        M = params.truncation or smallest_truncation(decay, target, offset=0, scale=2 * size)
        coeff = 1j * params.I / (2 * params.hbar * params.t)
        phi = params.theta - params.theta0
        total = mpmath.mpc(0)
        for n in range(-M, M + 1):
            total += mpmath.exp(coeff * (phi - 2 * mpmath.pi * n) ** 2)
        value = prefactor * total
        err = (2 * size * gaussian_tail_bound(decay, M)
               + abs(total) * prefactor_hp.err_bound
               + rounding_term(4 * (2 * M + 1) * size, bits))
        return ComplexHP(value.real, value.imag, bits, err)


def verify_kernel_jacobi(params: CylinderKernelParams, tolerance: Any = None) -> VerificationReport:
    """Spectral against image kernel; default tolerance is the sum of both bounds."""
    lhs = spectral_kernel(params)
    rhs = image_kernel(params)
    tol = lhs.err_bound + rhs.err_bound if tolerance is None else tolerance
    return VerificationReport.compare(
        'kernel_jacobi',
        {'t': params.t, 'theta0': params.theta0, 'theta': params.theta},
        lhs, rhs, tol,
    )


def _trace_params(params: CylinderKernelParams, tau: mpmath.mpc) -> ThetaParams:
    if params.truncation:
        return ThetaParams(tau, params.truncation, None, params.precision_bits)
    return ThetaParams.auto(tau, params.precision_bits)


def spectral_trace(params: CylinderKernelParams) -> ComplexHP:
    """Tr exp(-iHt) = sum_n exp(-i hbar n^2 t/(2I)) = theta(i hbar t/(2 pi I))."""
    return theta_truncated(_trace_params(params, params.tau))


def image_trace(params: CylinderKernelParams) -> ComplexHP:
    """
    Tr exp(-iHt) = (2 pi I/(i hbar t))^(1/2) sum_n exp(2 pi^2 i I n^2 / (hbar t)),
    i.e. theta(1/tau) / sqrt(tau) for tau = i hbar t/(2 pi I).
    """
    bits = params.precision_bits
    tau = params.tau
    with mpmath.workprec(bits + GUARD_BITS):
        inverse = 1 / tau
    root = principal_sqrt(ComplexHP.from_value(tau, bits, exact=True))
    return theta_truncated(_trace_params(params, inverse)) / root


def verify_trace_identity(params: CylinderKernelParams, tolerance: Any = None) -> VerificationReport:
    """Both trace forms; equivalent to the Jacobi identity at tau = i hbar t/(2 pi I)."""
    theta_params = _trace_params(params, params.tau)
    report = verify_jacobi(theta_params, tolerance)
    report.check = 'trace_identity'
    report.params = {'t': params.t, 'I': params.I, 'hbar': params.hbar}
    return report


def kernel_normalization(params: CylinderKernelParams, k: int) -> ComplexHP:
    """
    Trapezoid integral of K(theta, theta0) over theta0 in [0, 2*pi) with 2^k points.

    For a periodic integrand the rule is exact on modes |n| < 2^k, so the
    result tends to the total probability 1 as k grows.
    """
    if k < 0:
        raise DomainError("k must be nonnegative", {'k': k})
    points = 2 ** k
    bits = params.precision_bits
    with mpmath.workprec(bits + GUARD_BITS):
        step = 2 * mpmath.pi / points
        nodes = [step * j for j in range(points)]
    total = ComplexHP.exact_int(0, bits)
    for node in nodes:
        total = total + spectral_kernel(params.with_angles(node, params.theta))
    return total * ComplexHP.from_value(step, bits)
