"""Cycle algebra for round-trip transformation rates.

The round-trip rate through a target state, its singlet-relative lower and
upper bounds, the measure-pair upper bound, the irreversibility witness
f = D^2(rho) F(sigma) - F^2(rho) D(sigma), and sign classification of
R_Diff = (rho <-> singlet) - (rho <-> sigma).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .qstate import ValidationError

ZERO_TOL = 1e-12
CLAMP_TOL = 1e-9

SOURCE_SINGLET = "singlet-relative"
SOURCE_MEASURE_PAIR = "measure-pair"
SOURCE_DF_PAIR = "df-pair"


class ConsistencyError(ValueError):
    """Measure values violate D <= F."""


@dataclass(frozen=True)
class CycleBounds:
    """Lower/upper bounds on a round-trip rate, with provenance."""

    lower: float | None
    upper: float | None
    source: str
    reason: str | None = None

    def __post_init__(self):
        if self.lower is not None and self.upper is not None:
            if self.lower > self.upper + 1e-12:
                raise ValidationError("lower bound exceeds upper bound")

    def to_json_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "source": self.source}


@dataclass(frozen=True)
class RDiffBounds:
    rdiff_lower: float | None
    rdiff_upper: float | None
    sign: str  # positive | negative | unknown
    witness: str

    def __post_init__(self):
        if self.sign == "positive" and not (
            self.rdiff_lower is not None and self.rdiff_lower > 0
        ):
            raise ValidationError("positive sign requires a positive lower bound")
        if self.sign == "negative" and not (
            self.rdiff_upper is not None and self.rdiff_upper < 0
        ):
            raise ValidationError("negative sign requires a negative upper bound")

    def to_json_dict(self) -> dict:
        return {
            "rdiff_lower": self.rdiff_lower,
            "rdiff_upper": self.rdiff_upper,
            "sign": self.sign,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class StateDescriptor:
    """A state family member with whichever measures are known for it.

    d is the LOCC distillable entanglement (None when unknown), d_gamma the
    PPT-distillable stand-in, f the entanglement cost.
    """

    family: str
    params: tuple
    f: float
    d: float | None = None
    d_gamma: float | None = None
    flags: tuple = ()


def cycle_ratio_singlet(d: float, f: float) -> float | None:
    """Round-trip rate D/F through the singlet; None at the 0/0 boundary."""
    if d < 0 or f < 0:
        raise ValidationError("measures must be non-negative")
    if d > f + CLAMP_TOL:
        raise ConsistencyError(f"D = {d} exceeds F = {f}")
    if f <= ZERO_TOL:
        return None  # both vanish: separable boundary, ratio undefined
    ratio = d / f
    if ratio > 1.0:
        ratio = 1.0  # d <= f + 1e-9 already enforced
    return ratio


def singlet_relative_bounds(rho_ratio: float | None, sigma_ratio: float | None) -> CycleBounds:
    """Bounds r_rho r_sigma <= (rho <-> sigma) <= min(r_sigma/r_rho, r_rho/r_sigma)."""
    if rho_ratio is None or sigma_ratio is None:
        return CycleBounds(
            lower=None, upper=None, source=SOURCE_SINGLET, reason="undefined input ratio"
        )
    if not (0.0 < rho_ratio <= 1.0 and 0.0 < sigma_ratio <= 1.0):
        raise ValidationError("singlet ratios must lie in (0, 1]")
    return CycleBounds(
        lower=rho_ratio * sigma_ratio,
        upper=min(sigma_ratio / rho_ratio, rho_ratio / sigma_ratio),
        source=SOURCE_SINGLET,
    )


def upper_bound_from_measures(e1_rho: float, e1_sigma: float, e2_rho: float, e2_sigma: float) -> float:
    """E_1(rho) E_2(sigma) / (E_2(rho) E_1(sigma)) for two asymptotic measures."""
    vals = (e1_rho, e1_sigma, e2_rho, e2_sigma)
    if any(v <= ZERO_TOL for v in vals):
        raise ValidationError("measure-pair bound requires strictly positive inputs")
    return (e1_rho * e2_sigma) / (e2_rho * e1_sigma)


def upper_bound_df(d_rho: float, f_rho: float, d_sigma: float, f_sigma: float) -> float:
    """F(rho) D(sigma) / (F(sigma) D(rho)), the distillable/cost instance."""
    return upper_bound_from_measures(f_rho, f_sigma, d_rho, d_sigma)


def gerakol_witness(d_rho: float, f_rho: float, d_sigma: float, f_sigma: float):
    """f = D^2(rho) F(sigma) - F^2(rho) D(sigma); positivity certifies
    (rho <-> sigma) < (rho <-> singlet).

    Returns (f_value, holds).  A PPT-distillable stand-in may be passed for
    d_sigma: it only strengthens the requirement, so the witness stays sound.
    """
    if min(d_rho, f_rho, d_sigma, f_sigma) < 0:
        raise ValidationError("measures must be non-negative")
    f_value = d_rho * d_rho * f_sigma - f_rho * f_rho * d_sigma
    return f_value, f_value > 0.0


def _same_state(rho: StateDescriptor, sigma: StateDescriptor) -> bool:
    if rho.family != sigma.family or len(rho.params) != len(sigma.params):
        return False
    return all(abs(a - b) <= 1e-12 for a, b in zip(rho.params, sigma.params))


def rdiff_sign_witness(rho: StateDescriptor, sigma: StateDescriptor) -> RDiffBounds:
    """Classify the sign of R_Diff = (rho <-> singlet) - (rho <-> sigma).

    Negative via the equal-states argument (round trip through itself is
    free, through the singlet it is D/F < 1); positive via the witness
    inequality, substituting D_Gamma for an unknown D(sigma).
    """
    if _same_state(rho, sigma):
        if rho.d is not None and rho.f > ZERO_TOL and rho.d < rho.f:
            rdiff = rho.d / rho.f - 1.0
            return RDiffBounds(
                rdiff_lower=rdiff, rdiff_upper=rdiff, sign="negative", witness="equal-states"
            )
        return RDiffBounds(
            rdiff_lower=None, rdiff_upper=None, sign="unknown", witness="none"
        )

    d_sigma_eff = sigma.d if sigma.d is not None else sigma.d_gamma
    witness_tag = "gerakol" if sigma.d is not None else "gerakol-dgamma"
    if rho.d is None or d_sigma_eff is None or rho.f <= ZERO_TOL or sigma.f <= ZERO_TOL:
        return RDiffBounds(rdiff_lower=None, rdiff_upper=None, sign="unknown", witness="none")

    f_value, holds = gerakol_witness(rho.d, rho.f, d_sigma_eff, sigma.f)
    if holds and rho.d > ZERO_TOL:
        lower = rho.d / rho.f - (rho.f * d_sigma_eff) / (sigma.f * rho.d)
        return RDiffBounds(
            rdiff_lower=lower, rdiff_upper=None, sign="positive", witness=witness_tag
        )
    return RDiffBounds(rdiff_lower=None, rdiff_upper=None, sign="unknown", witness="none")
