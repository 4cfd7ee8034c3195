"""Synthesis of XX spin chains with perfect state transfer.

Two constructions are implemented, both driven by three-term recurrences of
q-orthogonal polynomials:

* the q-Racah family ("qracah"): persymmetric chains whose spectral gaps are
  the odd integers M_x = U_{x-1}(m) M1 - U_{x-2}(m) M0;
* the para q-Racah family ("para"): chains with interleaved spectra whose
  first three gaps are prescribed odd integers M0, M1, M2 and whose later
  gaps follow two Chebyshev ladders.

Everything is synthesized exactly inside Q(sqrt(m**2 - 1)): fields b_n,
squared couplings J_n**2 and eigenvalues are QuadExt values measured in units
of pi/T (couplings squared in (pi/T)**2), so the transfer time T enters only
when float mirrors are materialized.  The para parameter solve works in a
square-root tower above the field -- the underlying recurrence parameter can
even be imaginary -- but every chain quantity provably collapses back, and
the collapse is asserted at build time.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import QuadExt, RootExt, cheb_u, q_from_m

FAMILY_QRACAH = "qracah"
FAMILY_PARA = "para"
FAMILIES = (FAMILY_QRACAH, FAMILY_PARA)

# beyond this the exact data is still fine, but double-precision mirrors
# (and hence simulation) run out of dynamic range: spectra span ~ (2m)**N
FLOAT_SAFE_N = 48


class SynthesisError(ValueError):
    """The requested model parameters do not yield a usable chain."""


class DegenerateParameters(SynthesisError):
    """A denominator in the parameter solution vanished."""


class NoRealSolution(SynthesisError):
    """Synthesized data failed to land in the real quadratic field."""


class NonPositiveCoupling(SynthesisError):
    """Some squared coupling is not strictly positive (exact sign check)."""

    def __init__(self, index: int, value):
        super().__init__(f"J_{index}^2 = {value!r} is not positive")
        self.index = index
        self.value = value


class NonMonotoneSpectrum(SynthesisError):
    """Two analytic eigenvalues coincide exactly."""


@dataclass(frozen=True)
class ModelParams:
    """Input parameters of one chain model (a pure configuration record)."""

    family: str
    m: int
    M0: int
    M1: int
    N: int
    M2: int | None = None
    T: float = math.pi

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for name in ("m", "M0", "M1", "N"):
            if not isinstance(getattr(self, name), int):
                raise ValueError(f"{name} must be an integer")
        if self.m < 2:
            raise ValueError("m must be >= 2")
        odd = {"M0": self.M0, "M1": self.M1}
        if self.family == FAMILY_PARA:
            if not isinstance(self.M2, int):
                raise ValueError("para family requires an integer M2")
            odd["M2"] = self.M2
            if self.N < 3:
                raise ValueError("para family needs N >= 3 (three free gaps)")
        else:
            if self.M2 is not None:
                raise ValueError("M2 is meaningful only for the para family")
            if self.N < 2:
                raise ValueError("q-Racah family needs N >= 2")
        for name, value in odd.items():
            if value < 1 or value % 2 == 0:
                raise ValueError(f"{name} must be a positive odd integer")
        if not (isinstance(self.T, (int, float)) and self.T > 0):
            raise ValueError("transfer time T must be positive")

    @property
    def n_sites(self) -> int:
        return self.N + 1


@dataclass(frozen=True)
class QRacahParams:
    """Solved q-Racah parameters, exact, with mu in units of pi/T."""

    q: QuadExt
    alpha_sq: QuadExt
    mu: QuadExt


@dataclass(frozen=True)
class ParaParams:
    """Solved para-family parameters in collapsed form.

    The natural parameters (alpha, beta, mu) live one square root above
    Q(sqrt(d)) -- alpha**2 may even be negative -- but only the combinations
    below are ever needed, and they are all field elements:

        u  = alpha*beta,   w = beta/alpha,   e = alpha**2,   nu = mu*alpha.

    ``tower()`` materializes alpha, beta, mu as formal RootExt elements.
    """

    q: QuadExt
    u: QuadExt
    w: QuadExt
    e: QuadExt
    nu: QuadExt

    def tower(self) -> tuple[RootExt, RootExt, RootExt]:
        alpha = RootExt(0, 1, self.e)
        beta = RootExt(0, self.w, self.e)
        mu = RootExt(0, self.nu / self.e, self.e)
        return alpha, beta, mu


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Exact one-excitation spectrum, ascending, in units of pi/T."""

    eigenvalues: tuple[QuadExt, ...]
    gaps: tuple[QuadExt, ...]

    @classmethod
    def from_values(cls, values) -> "AnalyticSpectrum":
        ordered = sorted(values)
        gaps = [hi - lo for lo, hi in zip(ordered, ordered[1:])]
        for x, g in enumerate(gaps):
            if g.sign() <= 0:
                raise NonMonotoneSpectrum(
                    f"eigenvalues {x} and {x + 1} coincide exactly"
                )
        return cls(tuple(ordered), tuple(gaps))

    def floats(self, T: float) -> list[float]:
        unit = math.pi / T
        return [float(v) * unit for v in self.eigenvalues]


@dataclass(frozen=True)
class SpinChain:
    """An XX chain restricted to its one-excitation block.

    ``b`` holds the N+1 on-site fields and ``j_sq`` the N squared couplings,
    both exact and in units of pi/T (squared couplings in (pi/T)**2); float
    mirrors in physical units come from the properties below.  Couplings
    themselves are square roots, which generally leave the field -- only
    their squares are exact data.
    """

    b: tuple[QuadExt, ...]
    j_sq: tuple[QuadExt, ...]
    transfer_time: float
    provenance: ModelParams | None = None
    spectrum: AnalyticSpectrum | None = None

    def __post_init__(self):
        if len(self.b) != len(self.j_sq) + 1:
            raise ValueError("need exactly one more field than couplings")
        if not self.transfer_time > 0:
            raise ValueError("transfer time must be positive")

    @property
    def n_sites(self) -> int:
        return len(self.b)

    @property
    def b_float(self) -> list[float]:
        unit = math.pi / self.transfer_time
        return [float(v) * unit for v in self.b]

    @property
    def j_float(self) -> list[float]:
        unit = math.pi / self.transfer_time
        return [math.sqrt(float(v)) * unit for v in self.j_sq]

    def spectrum_float(self) -> list[float] | None:
        if self.spectrum is None:
            return None
        return self.spectrum.floats(self.transfer_time)

    def field_radicand(self) -> int:
        for value in (*self.b, *self.j_sq):
            if value.d:
                return value.d
        if self.spectrum is not None:
            for value in self.spectrum.eigenvalues:
                if value.d:
                    return value.d
        return 0


# ---------------------------------------------------------------------------
# q-Racah family
# ---------------------------------------------------------------------------

def qracah_coeffs(n: int, alpha, beta, gamma, delta, q):
    """Recurrence coefficients (A_n, B_n, C_n) of the q-Racah polynomials.

    Generic in the parameters: works over QuadExt or tower elements alike.
    B_n is fixed by A_n and C_n through B_n = -A_n - C_n + 1 + gamma*delta*q.
    """
    qn = q ** n
    qn1 = qn * q
    ab = alpha * beta
    try:
        a = (
            (1 - alpha * qn1) * (1 - ab * qn1) * (1 - beta * delta * qn1)
            * (1 - gamma * qn1)
            / ((1 - ab * qn * qn * q) * (1 - ab * qn1 * qn1))
        )
        c = (
            q * (1 - qn) * (1 - beta * qn) * (gamma - ab * qn)
            * (delta - alpha * qn)
            / ((1 - ab * qn * qn) * (1 - ab * qn * qn * q))
        )
    except ZeroDivisionError as exc:
        raise DegenerateParameters(
            f"q-Racah recurrence denominator vanished at n={n}"
        ) from exc
    b = 1 + gamma * delta * q - a - c
    return a, b, c


def qracah_solve_params(m: int, M0: int, M1: int, T: float = math.pi) -> QRacahParams:
    """Solve for (q, alpha**2, mu) giving first gaps M0, M1 in pi/T units.

    T is carried for interface symmetry only: mu is returned in units of
    pi/T, so the exact values do not depend on it.
    """
    q = q_from_m(m)
    alpha_sq = (M0 - M1 * q) / (q ** 3 * (M0 * q - M1))
    mu = q * q * (M1 - M0 * q) / ((1 + q) * (1 - q) ** 2)
    return QRacahParams(q=q, alpha_sq=alpha_sq, mu=mu)


def qracah_spectrum(params: ModelParams) -> AnalyticSpectrum:
    """Exact eigenvalues mu*(q**-x + alpha**2 q**(x+1)), x = 0..N, sorted."""
    sol = qracah_solve_params(params.m, params.M0, params.M1, params.T)
    q, a2, mu = sol.q, sol.alpha_sq, sol.mu
    values = [mu * (q ** -x + a2 * q ** (x + 1)) for x in range(params.N + 1)]
    return AnalyticSpectrum.from_values(values)


def qracah_gap_values(params: ModelParams) -> list[Fraction]:
    """Level spacings in construction order, via the Chebyshev closed form.

    These are U_{x-1}(m) M1 - U_{x-2}(m) M0 for x = 0..N-1: always odd
    integers, but possibly negative, in which case the constructed sequence
    is not monotone and the sorted spectrum's gaps differ from this list.
    """
    m, M0, M1 = params.m, params.M0, params.M1
    return [
        Fraction(cheb_u(x - 1, m) * M1 - cheb_u(x - 2, m) * M0)
        for x in range(params.N)
    ]


def _build_qracah(params: ModelParams) -> SpinChain:
    N = params.N
    sol = qracah_solve_params(params.m, params.M0, params.M1, params.T)
    q, a2, mu = sol.q, sol.alpha_sq, sol.mu

    top = mu * (1 + q) * (1 + q ** (N + 1)) * (1 + a2 * q ** (N + 1))
    b = tuple(
        top / ((q ** (N + 1 - n) + q ** n) * (q ** (n + 1) + q ** (N - n)))
        for n in range(N + 1)
    )

    j_sq = []
    for n in range(1, N + 1):
        numer = (
            (1 - a2 * q ** (2 * n)) * (1 - a2 * q ** (2 * N + 2 - 2 * n))
            * (1 - q ** (2 * n)) * (1 - q ** (2 * N + 2 - 2 * n))
        )
        denom = (
            (q ** (n - 1) + q ** (N + 1 - n))
            * (q ** n + q ** (N + 1 - n)) ** 2
            * (q ** n + q ** (N - n))
        )
        value = mu * mu * numer / denom
        if value.sign() <= 0:
            raise NonPositiveCoupling(n, value)
        j_sq.append(value)

    return SpinChain(
        b=b,
        j_sq=tuple(j_sq),
        transfer_time=params.T,
        provenance=params,
        spectrum=qracah_spectrum(params),
    )


# ---------------------------------------------------------------------------
# para q-Racah family
# ---------------------------------------------------------------------------

def para_solve_params(
    m: int, M0: int, M1: int, M2: int, T: float = math.pi
) -> ParaParams:
    """Solve the para recurrence parameters from the first three gaps.

    The defining equations fix the gaps (eps_1 - eps_0, eps_2 - eps_1,
    eps_3 - eps_2) to (M0, M1, M2) in pi/T units.  Eliminating mu and
    (alpha - beta) from the two odd-ladder gaps gives u = alpha*beta in
    closed form; the even-ladder gap then determines w = beta/alpha through
    the intermediate ratio rho = (alpha*q - beta)/(alpha - beta), and the
    first gap recovers nu = mu*alpha.  The solution is verified exactly
    against all three defining equations before being returned.
    """
    q = q_from_m(m, half=True)
    u = (M0 - M2 * q) / (q * (M0 * q - M2))
    if not u or u == 1 or u * q == 1:
        raise DegenerateParameters("alpha*beta is degenerate")
    rho = M1 * q * (1 - u) / (M0 * (u * q - 1))
    if rho == 1:
        raise DegenerateParameters("gap ratio rho collapsed to 1")
    w = (q - rho) / (1 - rho)
    if not w:
        raise DegenerateParameters("beta/alpha vanished")
    e = u / w
    nu = M0 * u / ((1 - w) * (1 - u))
    sol = ParaParams(q=q, u=u, w=w, e=e, nu=nu)

    first = _para_levels(sol, 4)
    gaps = [hi - lo for lo, hi in zip(first, first[1:])]
    if gaps != [QuadExt(M0), QuadExt(M1), QuadExt(M2)]:
        raise NoRealSolution(
            "solved parameters failed to reproduce the prescribed gaps"
        )
    return sol


def _para_levels(sol: ParaParams, count: int) -> list[QuadExt]:
    """First ``count`` eigenvalues in natural (interleaved) order."""
    q, u, w, e, nu = sol.q, sol.u, sol.w, sol.e, sol.nu
    values = []
    for k in range(count):
        x = k // 2
        if k % 2 == 0:  # mu*(alpha q**x + alpha**-1 q**-x)
            values.append(nu * q ** x + (nu / e) * q ** -x)
        else:  # mu*(beta q**x + beta**-1 q**-x)
            values.append(nu * w * q ** x + nu / (e * w) * q ** -x)
    return values


def para_spectrum(params: ModelParams) -> AnalyticSpectrum:
    """Interleaved two-ladder spectrum, sorted; N+1 exact levels.

    Odd N = 2j+1 takes x = 0..j from both ladders; even N = 2j stops the
    second ladder at x = j-1.
    """
    sol = para_solve_params(params.m, params.M0, params.M1, params.M2, params.T)
    values = _para_levels(sol, params.N + 1)
    return AnalyticSpectrum.from_values(values)


def para_gap_values(params: ModelParams) -> list[Fraction]:
    """Level spacings in construction order, via the Chebyshev ladders.

    Odd-position spacings come from U at 2m**2 - 1, even-position ones carry
    the rational prefactor M1/(M0 + M2); entries need not be integers (or
    positive) -- certification decides what survives.
    """
    m, M0, M1, M2 = params.m, params.M0, params.M1, params.M2
    c = 2 * m * m - 1
    gaps: list[Fraction] = []
    for k in range(params.N):
        x = k // 2
        if k % 2 == 0:
            gaps.append(Fraction(cheb_u(x - 1, c) * M2 - cheb_u(x - 2, c) * M0))
        else:
            bracket = cheb_u(2 * x, m) * M2 - cheb_u(2 * x - 2, m) * M0
            gaps.append(Fraction(M1 * bracket, M0 + M2))
    return gaps


def para_coeffs(n: int, N: int, q, alpha, beta):
    """Recurrence coefficients (A_n, C_n) of the para q-Racah polynomials.

    The formulas split on the parity of N; boundary factors make C_0 and
    A_N vanish, truncating the chain.
    """
    ab = alpha * beta
    if N % 2:
        j = (N - 1) // 2
        a = (
            (1 - ab * q ** n) * (beta - alpha * q ** (n - j))
            * (1 - q ** (n - 2 * j - 1))
            / (ab * (1 - q ** (2 * n - 2 * j - 1)) * (1 + q ** (n - j)))
        )
        c = (
            (1 - q ** n) * (alpha - beta * q ** (n - j - 1))
            * (ab - q ** (n - 2 * j - 1))
            / (ab * (1 - q ** (2 * n - 2 * j - 1)) * (1 + q ** (n - j - 1)))
        )
    else:
        j = N // 2
        a = (
            (1 - ab * q ** n) * (beta - alpha * q ** (n - j + 1))
            * (1 - q ** (n - 2 * j))
            / (ab * (1 - q ** (2 * n - 2 * j + 1)) * (1 + q ** (n - j)))
        )
        c = (
            (1 - q ** n) * (alpha - beta * q ** (n - j - 1))
            * (ab - q ** (n - 2 * j))
            / (ab * (1 - q ** (2 * n - 2 * j - 1)) * (1 + q ** (n - j)))
        )
    return a, c


def _build_para(params: ModelParams) -> SpinChain:
    N = params.N
    sol = para_solve_params(params.m, params.M0, params.M1, params.M2, params.T)
    q = sol.q
    alpha, beta, mu = sol.tower()

    coeffs = [para_coeffs(n, N, q, alpha, beta) for n in range(N + 1)]
    alpha_trace = alpha + alpha.inverse()
    mu_sq = mu * mu
    try:
        b = tuple(
            (mu * (alpha_trace - a - c)).pure_part() for a, c in coeffs
        )
        j_sq = []
        for n in range(1, N + 1):
            value = (mu_sq * coeffs[n - 1][0] * coeffs[n][1]).pure_part()
            if value.sign() <= 0:
                raise NonPositiveCoupling(n, value)
            j_sq.append(value)
    except ArithmeticError as exc:
        # a surviving radical part would mean the chain left the field
        raise NoRealSolution(str(exc)) from exc

    return SpinChain(
        b=b,
        j_sq=tuple(j_sq),
        transfer_time=params.T,
        provenance=params,
        spectrum=para_spectrum(params),
    )


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def build_chain(params: ModelParams) -> SpinChain:
    """Synthesize the chain described by ``params`` (exact, then mirrored)."""
    if params.N > FLOAT_SAFE_N:
        warnings.warn(
            f"N={params.N}: exact synthesis is unaffected, but float mirrors "
            f"span ~(2m)^N and double precision degrades beyond N={FLOAT_SAFE_N}",
            stacklevel=2,
        )
    if params.family == FAMILY_QRACAH:
        return _build_qracah(params)
    return _build_para(params)


def build_qracah_chain(
    m: int, M0: int, M1: int, N: int, T: float = math.pi
) -> SpinChain:
    return build_chain(
        ModelParams(family=FAMILY_QRACAH, m=m, M0=M0, M1=M1, N=N, T=T)
    )


def build_para_chain(
    m: int, M0: int, M1: int, M2: int, N: int, T: float = math.pi
) -> SpinChain:
    return build_chain(
        ModelParams(family=FAMILY_PARA, m=m, M0=M0, M1=M1, M2=M2, N=N, T=T)
    )
