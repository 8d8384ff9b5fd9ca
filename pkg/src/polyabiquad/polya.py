"""Closed formulas for the order of the Polya group of a biquadratic field,
assembled from the unit structure and the ramification profile.

With s_K ramified primes, i2/j2 the flags for 2 being totally ramified
(resp. totally ramified with a nonprincipal prime above it), q the unit
index, and nu_K the number of real quadratic subfields whose fundamental
unit has norm +1:

  |Po(k_i)|   = 2**(s_i - 1 - nu_i)                    (quadratic subfields)
  |cokernel|  = 2**j2
  |kernel|    = prod_p e_p / q          if K real and nu_K = 0
              = prod_p e_p / (2 q)      otherwise
  |Po(K)|     = q * 2**(s_K + j2 - 2 - max(1, nu_K))   if K real
              = q * 2**(s_K + j2 - 2 - nu_K)           if K imaginary

The two routes |Po(K)| and prod|Po(k_i)| * |cokernel| / |kernel| must agree,
and the chain of subgroups between the rational principal ideals and the
ambiguous ideals telescopes to 2**s_K; both identities are asserted on every
call, so a silent inconsistency upstream (a wrong q, a wrong profile) cannot
produce a report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .biquadratic import BiquadField
from .errors import InconsistencyError
from .lattice import AmbiguousIdealOracle
from .quadratic import ambiguous_oracle_quad, polya_order_quad


def _power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def j2_value(K: BiquadField, oracle: AmbiguousIdealOracle | None = None) -> int:
    """1 iff 2 is totally ramified and the prime above 2 is nonprincipal."""
    if K.profile.i2 == 0:
        return 0
    orc = oracle if oracle is not None else K.default_oracle()
    return 0 if orc.is_principal_radical_power({2: 1}) else 1


def cokernel_order(K: BiquadField, oracle: AmbiguousIdealOracle | None = None) -> int:
    """Order of the cokernel of the class-extension map: 2**j2."""
    return 2 ** j2_value(K, oracle)


def kernel_order(K: BiquadField) -> int:
    """Order of the kernel of the class-extension map from the three
    subfield ambiguous-class groups."""
    us, prof = K.units, K.profile
    den = us.q_k if (K.is_real and us.nu_k == 0) else 2 * us.q_k
    if prof.product_e % den:
        raise InconsistencyError(
            f"kernel order is not integral for {K.d}: {prof.product_e}/{den}")
    return prof.product_e // den


def polya_order(K: BiquadField, oracle: AmbiguousIdealOracle | None = None) -> int:
    """|Po(K)| by the closed formula, cross-checked against the kernel /
    cokernel decomposition."""
    us, prof = K.units, K.profile
    j2 = j2_value(K, oracle)
    drop = max(1, us.nu_k) if K.is_real else us.nu_k
    val = Fraction(us.q_k) * Fraction(2) ** (prof.s_k + j2 - 2 - drop)
    if val.denominator != 1 or val < 1:
        raise InconsistencyError(f"Polya order formula non-integral for {K.d}: {val}")
    po = int(val)
    po_sub = [polya_order_quad(k) for k in K.subfields]
    if po * kernel_order(K) != po_sub[0] * po_sub[1] * po_sub[2] * 2 ** j2:
        raise InconsistencyError(
            f"Polya order does not match the kernel/cokernel decomposition for {K.d}")
    return po


def chain_indices(K: BiquadField) -> tuple[int, int, int, int]:
    """Indices ((H3:H0), (H2:H1), (H1:H0), (H3:H2)) of the subgroup chain
    between extended rational principal ideals H0 and ambiguous products H3,
    with H1 the ideals generated by square roots of rationals and H2 the
    principal ambiguous products.  The product telescopes to 2**s_K."""
    us, prof = K.units, K.profile
    h30 = 2 ** prof.s_k
    h21 = us.index_star_over_pm_squares
    h10 = 2 if us.has_sqrt_minus1 else 4
    shift = 5 if K.is_real else 3
    val = Fraction(us.index_units_over_star) * Fraction(2) ** (prof.s_k - shift)
    if val.denominator != 1 or val < 1:
        raise InconsistencyError(f"(H3:H2) non-integral for {K.d}: {val}")
    h32 = int(val)
    if h32 * h21 * h10 != h30:
        raise InconsistencyError(f"chain indices do not telescope for {K.d}")
    po_sub_prod = 1
    for k in K.subfields:
        po_sub_prod *= polya_order_quad(k)
    if po_sub_prod % h32 or po_sub_prod // h32 != kernel_order(K):
        raise InconsistencyError(
            f"kernel order via the chain disagrees with the closed formula for {K.d}")
    return h30, h21, h10, h32


@dataclass(frozen=True)
class PolyaReport:
    """All computed orders and indices for one biquadratic field."""

    d: tuple[int, int, int]
    po_sub: tuple[int, int, int]
    ker: int
    coker: int
    po_k: int
    chain: tuple[int, int, int, int]  # (H3:H0), (H2:H1), (H1:H0), (H3:H2)
    s_k: int
    i2: int
    j2: int
    q_k: int
    nu_k: int
    product_e: int

    def __post_init__(self):
        if self.po_k * self.ker != self.po_sub[0] * self.po_sub[1] * self.po_sub[2] * self.coker:
            raise InconsistencyError("report violates the decomposition identity")
        h30, h21, h10, h32 = self.chain
        if h32 * h21 * h10 != h30 or h30 != 2 ** self.s_k:
            raise InconsistencyError("report chain does not telescope to 2^s_K")
        for v in (*self.po_sub, self.ker, self.coker, self.po_k, *self.chain):
            if not _power_of_two(v):
                raise InconsistencyError("all report entries must be powers of two")


def polya_report(K: BiquadField, oracle: AmbiguousIdealOracle | None = None) -> PolyaReport:
    us, prof = K.units, K.profile
    j2 = j2_value(K, oracle)
    return PolyaReport(
        d=K.d,
        po_sub=tuple(polya_order_quad(k) for k in K.subfields),
        ker=kernel_order(K),
        coker=2 ** j2,
        po_k=polya_order(K, oracle),
        chain=chain_indices(K),
        s_k=prof.s_k,
        i2=prof.i2,
        j2=j2,
        q_k=us.q_k,
        nu_k=us.nu_k,
        product_e=prof.product_e,
    )


def verify_biquad(K: BiquadField,
                  oracle: AmbiguousIdealOracle | None = None) -> tuple[str, dict]:
    """Compare the formula path against the brute-force oracle.

    Returns ("ok" | "mismatch", details); budget exhaustion propagates as
    BudgetExceededError rather than being folded into a verdict.
    """
    orc = oracle if oracle is not None else K.default_oracle()
    rep = polya_report(K, orc)
    po_oracle = orc.polya_order_oracle()
    ker_oracle = orc.kernel_order_oracle()
    details = {"po_oracle": po_oracle, "ker_oracle": ker_oracle,
               "po_formula": rep.po_k, "ker_formula": rep.ker}
    ok = po_oracle == rep.po_k and ker_oracle == rep.ker
    return ("ok" if ok else "mismatch"), details


def verify_quad(k, budget=None) -> tuple[str, dict]:
    """Compare 2**(s-1-nu) against the direct ambiguous-class count."""
    formula = polya_order_quad(k)
    oracle = ambiguous_oracle_quad(k, budget)
    return ("ok" if formula == oracle else "mismatch"), {
        "po_formula": formula, "po_oracle": oracle}
