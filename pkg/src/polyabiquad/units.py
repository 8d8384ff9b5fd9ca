"""Unit structure of a biquadratic field: roots of unity, the unit index
q = (O_K^x : O_k1^x O_k2^x O_k3^x), and the indices tied to the norm-one /
totally-signed unit subgroup.

The computational heart is an exact squareness test.  Candidate square roots
are reconstructed from interval enclosures of the conjugate embeddings:
if xi^2 = eta then the embeddings of xi are square roots of the conjugates
of eta up to sign (real case) or branch choice constrained by complex
conjugation (imaginary case), and the radical coordinates of xi are signed
averages of those embeddings.  Integral elements have coordinates in
(1/4)Z, so once every coordinate enclosure is narrow enough the finitely
many grid points inside it can be squared exactly; the interval enclosure
property makes an exhausted pattern a *proof* that no root with those signs
exists.  Precision starts at 128 bits and doubles; every verdict is
finalized by exact rational squaring, never by the numerics.

The unit index follows by testing which products of subfield fundamental
units (twisted by subfield roots of unity) become squares in K: squaring
embeds O_K^x / E_0 into E_0 / E_0^2 for E_0 the subgroup generated by the
subfield units, so q equals the number of square classes found.  For real
fields a sign character on the lambda_i prunes candidates that are not
totally positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .biquadratic import BiquadElement, BiquadField
from .dyadic import ComplexBox, Interval
from .errors import Budget, InconsistencyError, InvalidInputError

_GRID_DEN = 4  # integral coordinates lie in (1/4)Z
_MAX_CANDIDATES = 16


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _rational_square_root(K: BiquadField, eta: BiquadElement) -> BiquadElement | None:
    """Square root of a rational element: rational or rational * sqrt(d_i)."""
    c = eta.coords[0]
    r = _fraction_sqrt(c)
    if r is not None:
        return K.rational(r)
    for i in (1, 2, 3):
        r = _fraction_sqrt(c / K.d[i - 1])
        if r is not None:
            return K.radical(i).scale(r)
    return None


def _sign_matrix() -> list[list[int]]:
    # S[t][i]: sign of sqrt(d_i) inside sigma_t, with column i = 0 for the
    # rational coordinate.
    S = [[1, 1, 1, 1]]
    for t in (1, 2, 3):
        S.append([1] + [1 if i == t else -1 for i in (1, 2, 3)])
    return S


_S = _sign_matrix()


def _quad_sign(c0: Fraction, c1: Fraction, D: int) -> int:
    """Exact sign of c0 + c1*sqrt(D), D > 0 nonsquare."""
    if c0 == 0 and c1 == 0:
        return 0
    if c0 >= 0 and c1 >= 0:
        return 1
    if c0 <= 0 and c1 <= 0:
        return -1
    lhs, rhs = c0 * c0, c1 * c1 * D
    if lhs == rhs:
        return 0
    return (1 if lhs > rhs else -1) if c0 > 0 else (1 if rhs > lhs else -1)


def _grid_candidates(coord_intervals: list[Interval]) -> list[tuple[Fraction, ...]] | None:
    """Cartesian product of the (1/4)Z points in each interval, or None when
    the product is still too large to enumerate at this precision."""
    per_coord = []
    total = 1
    for iv in coord_intervals:
        pts = iv.grid_points(_GRID_DEN)
        total *= len(pts)
        if total > _MAX_CANDIDATES:
            return None
        per_coord.append(pts)
    out: list[tuple[Fraction, ...]] = [()]
    for pts in per_coord:
        out = [c + (p,) for c in out for p in pts]
    return out


def _real_root_search(K: BiquadField, eta: BiquadElement,
                      budget: Budget | None) -> BiquadElement | None:
    patterns = [(1, s1, s2, s3) for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1)]
    bits = 128
    while True:
        if budget is not None:
            budget.charge()
        encs = [eta.sigma(t)._identity_enclosure(bits) for t in range(4)]
        if any(e.is_negative() for e in encs):
            return None  # squares are totally positive
        if all(e.is_positive() for e in encs):
            roots = [e.sqrt(bits) for e in encs]
            four = Fraction(1, 4)
            rad4 = [None] + [K.radical_interval(i, bits).mul(Interval.point(4), bits)
                             for i in (1, 2, 3)]
            undecided = []
            for pat in patterns:
                embs = [roots[t] if pat[t] > 0 else roots[t].neg() for t in range(4)]
                coords = []
                for i in range(4):
                    num = embs[0]
                    for t in (1, 2, 3):
                        num = num.add(embs[t], bits) if _S[t][i] > 0 \
                            else num.sub(embs[t], bits)
                    coords.append(num.scale_fraction(four, bits) if i == 0
                                  else num.div(rad4[i], bits))
                cands = _grid_candidates(coords)
                if cands is None:
                    undecided.append(pat)
                    continue
                for cand in cands:
                    xi = BiquadElement(K, cand)
                    if xi * xi == eta:
                        return xi
            if not undecided:
                return None
            patterns = undecided
        bits *= 2
        if bits >= (1 << 15):
            raise InconsistencyError("square-root precision ladder failed to converge")


def _complex_sqrt_of(K: BiquadField, el: BiquadElement, box: ComplexBox,
                     im_sign: int, bits: int) -> ComplexBox:
    """Branch of sqrt at the identity embedding; im_sign is the exact sign of
    Im(el), with the exactly-real case dispatched on the exact real sign."""
    if im_sign != 0:
        return box.sqrt(bits, im_sign)
    r = K.real_radical_index
    re_sign = _quad_sign(el.coords[0], el.coords[r], K.d[r - 1])
    assert re_sign != 0, "nonzero element with zero embedding"
    zero = Interval.point(0)
    if re_sign > 0:
        return ComplexBox(box.re.sqrt(bits), zero)
    return ComplexBox(zero, box.re.neg().sqrt(bits))


def _imag_root_search(K: BiquadField, eta: BiquadElement,
                      budget: Budget | None) -> BiquadElement | None:
    a_idx = K.imag_radical_indices[0]
    r = K.real_radical_index
    b_idx = K.imag_radical_indices[1]
    sig_a = eta.sigma(a_idx)
    s0, sa = eta.imag_part_sign(), sig_a.imag_part_sign()
    patterns = [1, -1]
    bits = 128
    while True:
        if budget is not None:
            budget.charge()
        w0 = _complex_sqrt_of(K, eta, eta._identity_enclosure(bits), s0, bits)
        wa = _complex_sqrt_of(K, sig_a, sig_a._identity_enclosure(bits), sa, bits)
        undecided = []
        for flip in patterns:
            ea = wa if flip > 0 else wa.neg()
            embs = {0: w0, r: w0.conj(), a_idx: ea, b_idx: ea.conj()}
            coords = []
            ok = True
            for i in range(4):
                num_re, num_im = Interval.point(0), Interval.point(0)
                for t in range(4):
                    box = embs[t]
                    if _S[t][i] > 0:
                        num_re = num_re.add(box.re, bits)
                        num_im = num_im.add(box.im, bits)
                    else:
                        num_re = num_re.sub(box.re, bits)
                        num_im = num_im.sub(box.im, bits)
                if i == 0:
                    assert num_im.contains_zero()
                    coords.append(num_re.scale_fraction(Fraction(1, 4), bits))
                elif i == r:
                    assert num_im.contains_zero()
                    coords.append(num_re.div(
                        K.radical_interval(r, bits).mul(Interval.point(4), bits), bits))
                else:
                    # dividing by 4*i*sqrt(|d_i|): real part is Im/(4 sqrt|d_i|)
                    assert num_re.contains_zero()
                    coords.append(num_im.div(
                        K.radical_interval(i, bits).mul(Interval.point(4), bits), bits))
            cands = _grid_candidates(coords)
            if cands is None:
                undecided.append(flip)
                continue
            for cand in cands:
                xi = BiquadElement(K, cand)
                if xi * xi == eta:
                    return xi
        if not undecided:
            return None
        patterns = undecided
        bits *= 2
        if bits >= (1 << 15):
            raise InconsistencyError("square-root precision ladder failed to converge")


def integral_square_root(K: BiquadField, eta: BiquadElement,
                         budget: Budget | None = None) -> BiquadElement | None:
    """Exact xi with xi*xi == eta, or None when eta is provably not a square.

    eta must be integral; the returned root is then integral automatically
    (it satisfies the monic polynomial x^2 - eta over O_K).
    """
    if eta.is_zero():
        return K.zero()
    if eta.is_rational():
        return _rational_square_root(K, eta)
    if K.is_real:
        return _real_root_search(K, eta, budget)
    return _imag_root_search(K, eta, budget)


def unit_square_root(K: BiquadField, eta: BiquadElement,
                     budget: Budget | None = None) -> BiquadElement | None:
    """Squareness test restricted to units of O_K (the unit-index primitive)."""
    if not K.is_integral(eta) or abs(eta.norm()) != 1:
        raise InvalidInputError("argument must be a unit of the ring of integers")
    return integral_square_root(K, eta, budget)


@dataclass
class UnitStructure:
    """Roots of unity, unit index, and the derived subgroup indices."""

    mu_order: int
    has_sqrt_minus1: bool
    q_k: int
    lam: tuple[int, int, int]
    nu_k: int
    star_case: str  # "real_all_minus" | "product"
    index_sub_units_over_star: int   # (O_k1^x O_k2^x O_k3^x : O*_K)
    index_units_over_star: int       # (O_K^x : O*_K)
    index_pm_squares: int            # (O_K^x : +-(O_K^x)^2)
    index_star_over_pm_squares: int  # (O*_K : +-(O_K^x)^2)
    # exact roots of the subfield-unit products that are squares in K, keyed
    # by (a1, a2, a3) exponent triples (real K) or (torsion_exp, eps_exp)
    # pairs (imaginary K)
    square_class_roots: dict = field(default_factory=dict, repr=False)


def _mu_data(K: BiquadField) -> tuple[int, bool]:
    ds = set(K.d)
    if ds == {-1, 2, -2}:
        return 8, True
    if ds == {-1, 3, -3}:
        return 12, True
    if -1 in ds:
        return 4, True
    if -3 in ds:
        return 6, False
    return 2, False


def _conj_sign_character(lam: tuple[int, int, int], a: tuple[int, int, int], t: int) -> int:
    """Sign of sigma_t(eps_1^a1 eps_2^a2 eps_3^a3) for a real field."""
    s = 1
    for i in range(3):
        if a[i] and i != t - 1:
            s *= lam[i]
    return s


def _torsion_generator(K: BiquadField) -> tuple[BiquadElement, int]:
    """Generator of the subgroup of roots of unity generated by the
    subfield torsion units, with its order."""
    gens = []
    for i, k in enumerate(K.subfields):
        if k.torsion_order() > 2:
            gens.append((K.from_quad(i, k.torsion_generator()), k.torsion_order()))
    if not gens:
        return K.rational(-1), 2
    if len(gens) == 1:
        return gens[0]
    # i and zeta_6 together generate a cyclic group of order 12, with
    # generator i * conj(zeta_6) = zeta_12.
    (g4, o4), (g6, o6) = sorted(gens, key=lambda t: t[1])
    assert (o4, o6) == (4, 6)
    z12 = g4 * _element_conj_in_field(K, g6)
    assert (z12 ** 12) == K.one() and (z12 ** 6) == K.rational(-1)
    return z12, 12


def _element_conj_in_field(K: BiquadField, el: BiquadElement) -> BiquadElement:
    """Complex conjugation = the Galois element fixing the real subfield."""
    assert not K.is_real
    return el.sigma(K.real_radical_index)


def unit_structure(K: BiquadField, budget: Budget | None = None) -> UnitStructure:
    lam = tuple(k.lam if k.is_real else 0 for k in K.subfields)
    nu_k = sum(k.nu for k in K.subfields)
    mu_order, has_i = _mu_data(K)
    roots: dict = {}

    if K.is_real:
        eps = [K.from_quad(i, K.subfields[i].fundamental_unit) for i in range(3)]
        for mask in range(1, 8):
            a = (mask & 1, (mask >> 1) & 1, (mask >> 2) & 1)
            if any(_conj_sign_character(lam, a, t) < 0 for t in (1, 2, 3)):
                continue
            eta = K.one()
            for i in range(3):
                if a[i]:
                    eta = eta * eps[i]
            xi = integral_square_root(K, eta, budget)
            if xi is not None:
                roots[a] = xi
        q = len(roots) + 1
        if q not in (1, 2, 4):
            raise InconsistencyError(f"unit index {q} outside 1|2|4 for real {K.d}")
        star_all_minus = lam == (-1, -1, -1)
        prod_sub = 2 ** sum(1 for l in lam if l == -1)
        index_sub_over_star = prod_sub // 2 if star_all_minus else prod_sub
        index_pm_squares = 8
        star_case = "real_all_minus" if star_all_minus else "product"
    else:
        zeta, zorder = _torsion_generator(K)
        r = next(i for i in range(3) if K.d[i] > 0)
        eps_r = K.from_quad(r, K.subfields[r].fundamental_unit)
        candidates = {(1, 0): zeta, (0, 1): eps_r, (1, 1): zeta * eps_r}
        for key, eta in candidates.items():
            xi = integral_square_root(K, eta, budget)
            if xi is not None:
                roots[key] = xi
        q = len(roots) + 1
        if q not in (1, 2):
            raise InconsistencyError(f"unit index {q} outside 1|2 for imaginary {K.d}")
        index_sub_over_star = 2 if lam[r] == -1 else 1
        index_pm_squares = 4 if has_i else 2
        star_case = "product"

    index_units_over_star = q * index_sub_over_star
    if index_pm_squares % index_units_over_star:
        raise InconsistencyError(
            f"(O*:+-squares) is not integral for {K.d}: "
            f"{index_pm_squares}/{index_units_over_star}")
    index_star_over_pm = index_pm_squares // index_units_over_star
    assert index_star_over_pm in (1, 2, 4, 8)
    return UnitStructure(
        mu_order=mu_order,
        has_sqrt_minus1=has_i,
        q_k=q,
        lam=lam,
        nu_k=nu_k,
        star_case=star_case,
        index_sub_units_over_star=index_sub_over_star,
        index_units_over_star=index_units_over_star,
        index_pm_squares=index_pm_squares,
        index_star_over_pm_squares=index_star_over_pm,
        square_class_roots=roots,
    )
