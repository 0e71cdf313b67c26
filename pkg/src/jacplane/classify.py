"""Closed-form bounds and characterisations checked against computed invariants."""

from __future__ import annotations

from dataclasses import dataclass, field

from .invariants import LINES_THROUGH_POINT, LOW_DEGREE, CurveAnalysis
from .linalg import InputError, InternalError

FREE = "free"
NEARLY_FREE = "nearly_free"
OTHER = "other"


def ceil_three_quarters_square(d: int) -> int:
    """Round-up of ``3 (d - 1)**2 / 4``."""
    return -(-3 * (d - 1) ** 2 // 4)


def tau_min(d: int, r: int) -> int:
    return (d - 1) * (d - r - 1)


def tau_max(d: int, r: int) -> int:
    return (d - 1) ** 2 - r * (d - 1 - r)


@dataclass(frozen=True)
class DpwReport:
    """du Plessis-Wall bounds for ``(d, r)``, optionally against an observed ``tau``."""

    d: int
    r: int
    tau_min: int
    tau_max: int
    stronger_max: int | None = None
    observed_tau: int | None = None
    within_min: bool | None = None
    within_max: bool | None = None
    within_stronger: bool | None = None

    @property
    def satisfied(self) -> bool:
        return all(flag is not False for flag in (self.within_min, self.within_max, self.within_stronger))


def tau_bounds(d: int, r: int, observed_tau: int | None = None) -> DpwReport:
    if r == 0:
        raise InputError("mdr = 0: the curve is a pencil of lines, handled as a degenerate case")
    if d < 2 or not 1 <= r <= d - 1:
        raise InputError(f"need d >= 2 and 1 <= r <= d - 1, got d={d}, r={r}")
    lo, hi = tau_min(d, r), tau_max(d, r)
    stronger = hi - (2 * r + 2 - d) * (2 * r + 1 - d) // 2 if 2 * r >= d else None
    if observed_tau is None:
        return DpwReport(d, r, lo, hi, stronger)
    return DpwReport(
        d,
        r,
        lo,
        hi,
        stronger,
        observed_tau,
        within_min=lo <= observed_tau,
        within_max=observed_tau <= hi,
        within_stronger=None if stronger is None else observed_tau <= stronger,
    )


def predicted_nu(d: int, r: int, tau: int) -> tuple[int, str]:
    """``nu`` predicted from ``(d, r, tau)`` with the branch that produced it.

    The tag is ``"small_r"`` (``r < d/2``), ``"large_r"`` (``r >= (d-2)/2``)
    or ``"both"`` on the overlap, where the two formulas must agree.
    """
    if d < 3 or r < 1:
        raise InputError(f"prediction needs d >= 3 and r >= 1, got d={d}, r={r}")
    small = 2 * r < d
    large = 2 * r >= d - 2
    first = tau_max(d, r) - tau
    second = ceil_three_quarters_square(d) - tau
    if small and large:
        if first != second:
            raise InternalError(f"branch values {first} and {second} differ at d={d}, r={r}")
        return first, "both"
    if small:
        return first, "small_r"
    return second, "large_r"


@dataclass(frozen=True)
class ClassLabel:
    """``kind`` is one of free, nearly_free, other, lines_through_point, low_degree."""

    kind: str
    nu: int
    smooth: bool = False

    def __str__(self) -> str:
        text = f"other({self.nu})" if self.kind == OTHER else self.kind
        return text + (" [smooth]" if self.smooth else "")


@dataclass(frozen=True)
class SplittingType:
    d1: int
    d2: int


def splitting_type(d: int, r: int, analysis: CurveAnalysis | None = None) -> SplittingType:
    """Generic splitting type of the logarithmic bundle, from ``d`` and ``mdr``.

    With ``analysis`` the identity ``(d-1)^2 - d1 d2 = tau + nu`` is checked.
    """
    if r < 1:
        raise InputError("splitting type needs r >= 1")
    d1 = r if 2 * r < d - 2 else (d - 1) // 2
    d2 = d - 1 - d1
    if analysis is not None:
        lhs = (d - 1) ** 2 - d1 * d2
        if lhs != analysis.tau + analysis.nu:
            raise InternalError(
                f"(d-1)^2 - d1*d2 = {lhs} but tau + nu = {analysis.tau + analysis.nu}"
            )
    return SplittingType(d1, d2)


def prop_terao_nu(d: int, tau: int) -> int | None:
    """``nu`` from ``(d, tau)`` alone when ``tau`` is below the threshold, else ``None``."""
    if d < 4:
        raise InputError("needs d >= 4")
    m, odd = divmod(d, 2)
    threshold = 2 * m * (m + 1) if odd else (m + 1) * (2 * m - 1)
    if tau < threshold:
        return ceil_three_quarters_square(d) - tau
    return None


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    holds: bool
    detail: str = ""


def theorem_checks(a: CurveAnalysis) -> list[TheoremCheck]:
    """Evaluate every closed-form statement that applies to ``a``.

    Empty for degenerate curves (``mdr = 0`` or ``d <= 2``).
    """
    if a.degenerate is not None:
        return []
    d, r, tau, nu = a.d, a.r, a.tau, a.nu
    checks = []
    dpw = tau_bounds(d, r, tau)
    checks.append(TheoremCheck("dpw_min", dpw.within_min, f"{dpw.tau_min} <= {tau}"))
    checks.append(TheoremCheck("dpw_max", dpw.within_max, f"{tau} <= {dpw.tau_max}"))
    if dpw.stronger_max is not None:
        checks.append(TheoremCheck("dpw_stronger", dpw.within_stronger, f"{tau} <= {dpw.stronger_max}"))
    value, branch = predicted_nu(d, r, tau)
    checks.append(TheoremCheck("nu_formula", value == nu, f"predicted {value} ({branch}), computed {nu}"))
    is_max = tau == dpw.tau_max
    checks.append(
        TheoremCheck(
            "free_iff_tau_max",
            is_max == (nu == 0) and (not is_max or 2 * r < d),
            f"tau = tau_max: {is_max}, nu = {nu}, r = {r}",
        )
    )
    is_max1 = tau == dpw.tau_max - 1
    checks.append(
        TheoremCheck(
            "nearly_free_iff_tau_max_minus_one",
            is_max1 == (nu == 1) and (not is_max1 or 2 * r <= d),
            f"tau = tau_max - 1: {is_max1}, nu = {nu}, r = {r}",
        )
    )
    st = splitting_type(d, r)
    lhs = (d - 1) ** 2 - st.d1 * st.d2
    checks.append(
        TheoremCheck("splitting_identity", lhs == tau + nu, f"(d-1)^2 - d1*d2 = {lhs}, tau + nu = {tau + nu}")
    )
    if d >= 4:
        terao = prop_terao_nu(d, tau)
        if terao is not None:
            checks.append(TheoremCheck("low_tau_nu", terao == nu, f"predicted {terao}, computed {nu}"))
    return checks


def classify(a: CurveAnalysis, strict: bool = True) -> ClassLabel:
    """Free / nearly free / other label from ``nu``.

    With ``strict`` a failed characterisation raises :class:`InternalError`.
    """
    smooth = a.tau == 0
    if a.degenerate == LOW_DEGREE:
        return ClassLabel(LOW_DEGREE, a.nu, smooth)
    if a.degenerate == LINES_THROUGH_POINT:
        return ClassLabel(LINES_THROUGH_POINT, a.nu, smooth)
    if strict:
        bad = [c for c in theorem_checks(a) if not c.holds]
        if bad:
            raise InternalError("; ".join(f"{c.name}: {c.detail}" for c in bad))
    if a.nu == 0:
        return ClassLabel(FREE, 0, smooth)
    if a.nu == 1:
        return ClassLabel(NEARLY_FREE, 1, smooth)
    return ClassLabel(OTHER, a.nu, smooth)


def exponents(a: CurveAnalysis) -> tuple[int, int] | None:
    """``(r, d - 1 - r)`` for free curves, else ``None``."""
    if a.degenerate is None and a.nu == 0:
        return (a.r, a.d - 1 - a.r)
    return None


@dataclass(frozen=True)
class RccReport:
    """Consistency of an analysis with the characterisation of ``mdr = 1`` curves."""

    d: int
    hypothesis_met: bool
    tau_high: bool
    mdr_one: bool
    equivalence_holds: bool | None
    tau_equals_min: bool | None
    nearly_free: bool | None
    mu_equals_tau: bool | None
    notes: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        flags = (self.equivalence_holds, self.tau_equals_min, self.nearly_free)
        return all(flag is not False for flag in flags)


def prop_rcc_consistency(
    a: CurveAnalysis, mu_hint: int | None = None, irreducible_hint: bool = False
) -> RccReport:
    """Check ``tau >= d^2 - 4d + 8  <=>  mdr = 1`` for an irreducible curve.

    Irreducibility is taken from ``irreducible_hint``; nothing is factorised.
    A failure is reported in the returned object, not raised.
    """
    d = a.d
    if d < 6:
        raise InputError("the characterisation concerns degree >= 6")
    tau_high = a.tau >= d * d - 4 * d + 8
    mdr_one = a.r == 1
    notes = []
    equivalence = tau_min_ok = nearly = None
    if irreducible_hint:
        equivalence = tau_high == mdr_one
        if not equivalence:
            notes.append(f"tau >= {d * d - 4 * d + 8} is {tau_high} but mdr = {a.r}")
    else:
        notes.append("irreducibility not asserted; equivalence not checked")
    if mdr_one and irreducible_hint:
        tau_min_ok = a.tau == d * d - 3 * d + 2
        nearly = a.nu == 1
        if not tau_min_ok:
            notes.append(f"mdr = 1 but tau = {a.tau} != {d * d - 3 * d + 2}")
    mu_eq = None if mu_hint is None else mu_hint == a.tau
    if mu_hint is not None:
        notes.append(f"mu = {mu_hint}, tau = {a.tau}: " + ("weighted homogeneous" if mu_eq else "mu > tau"))
    return RccReport(d, irreducible_hint, tau_high, mdr_one, equivalence, tau_min_ok, nearly, mu_eq, notes)
