"""Finite place-vector representation of log-absolute-value functions.

Archimedean places come from the certified embeddings (real embeddings and
complex-conjugate pairs); finite places above a rational prime p come from
the factorization of the defining polynomial mod p, valid only when p does
not divide the index of the power-basis order.  Index divisors are detected
by the Dedekind criterion and refused rather than guessed.

Place weights follow the local-degree normalization: weight(v) = e*f/d at a
finite place, 1/d per real embedding and 2/d per conjugate pair, so that
the weights above each rational place sum to 1.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import mpmath
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from .errors import IndexDivisor, PrecisionExhausted, WitnessFailure, ZeroElement
from .heights import GElement
from .numberfield import FieldElement, WorkingField
from .polynomials import Poly
from .roots import archimedean_classes, locked_workprec

_FLOAT_SLACK = 1e-15


@dataclasses.dataclass(frozen=True, order=True)
class PlaceId:
    """Stable identifier: kind sorts archimedean before finite; p is 0 for
    archimedean places; index is the embedding-class or ideal index."""

    kind: str  # "arch" | "finite"
    p: int
    index: int


@dataclasses.dataclass(frozen=True)
class PlaceEntry:
    value: float
    abs_error: float
    weight: Fraction
    e: int = 0           # finite places only
    f: int = 0
    valuation: int = 0   # valuation of the base element (unscaled)


@dataclasses.dataclass(frozen=True)
class LocalFactor:
    e: int
    f: int
    valuation: int


@dataclasses.dataclass(frozen=True)
class LocalFactorization:
    p: int
    factors: tuple


class PlaceVector:
    """Finite support of y -> log||u||_y with measure weights."""

    __slots__ = ("field", "element", "entries")

    def __init__(self, field: WorkingField, element: GElement, entries):
        self.field = field
        self.element = element
        self.entries = dict(sorted(entries.items()))

    def arch_items(self):
        return [(pid, ent) for pid, ent in self.entries.items() if pid.kind == "arch"]

    def finite_items(self):
        return [(pid, ent) for pid, ent in self.entries.items() if pid.kind == "finite"]

    def as_dict(self):
        """JSON-ready form: exact fraction weights, decimal values with
        error bounds."""
        return {
            "element": {
                "scale": str(self.element.scale),
                "base": [str(c) for c in self.element.base.coords],
            },
            "arch": [
                {
                    "id": pid.index,
                    "value": f"{ent.value:.15e}",
                    "abs_error": f"{ent.abs_error:.3e}",
                    "weight": str(ent.weight),
                }
                for pid, ent in self.arch_items()
            ],
            "finite": [
                {
                    "p": pid.p,
                    "ideal": pid.index,
                    "e": ent.e,
                    "f": ent.f,
                    "value": f"{ent.value:.15e}",
                    "abs_error": f"{ent.abs_error:.3e}",
                    "weight": str(ent.weight),
                }
                for pid, ent in self.finite_items()
            ],
        }


# -- tiny F_p[x] helpers (dense, lowest degree first) ---------------------


def _gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mod_poly(a, b, p):
    """Remainder of a modulo monic-able b in F_p[x]."""
    a = [c % p for c in a]
    b = [c % p for c in b]
    _gf_trim(a)
    _gf_trim(b)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            fct = c * inv % p
            for j in range(len(b)):
                a[i - db + j] = (a[i - db + j] - fct * b[j]) % p
    del a[db:]
    return _gf_trim(a)


def _gf_gcd(a, b, p):
    a = _gf_trim([c % p for c in a])
    b = _gf_trim([c % p for c in b])
    while b:
        a, b = b, _gf_mod_poly(a, b, p)
    return a


def _factor_mod_p(poly: Poly, p: int):
    """Irreducible factors of an integer polynomial mod p, monic, sorted by
    (degree, coefficient tuple); returns [(coeffs_low_first, multiplicity)]."""
    dense = [int(c) % p for c in reversed(poly.coeffs)]
    _, factors = gf_factor(ZZ.map(dense), p, ZZ)
    out = []
    for f, mult in factors:
        low_first = tuple(int(c) % p for c in reversed(f))
        out.append((low_first, int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


# -- prime splitting (Dedekind) -------------------------------------------


@dataclasses.dataclass(frozen=True)
class _PrimeData:
    gbar: tuple          # lifted factor coefficients, lowest first, in [0, p)
    e: int
    f: int
    anti_uniformizer: FieldElement   # valuation -1 here, >= 0 at the others
    uniformizer: FieldElement        # valuation exactly 1 here, 0 at others


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _dedekind_index_check(field: WorkingField, p: int, factors) -> None:
    """Certify p does not divide [O_F : Z[theta]]; raise IndexDivisor."""
    disc = field.disc
    if _int_valuation(disc.numerator, p) <= 1:
        return
    g_star = Poly([1])
    h_star = Poly([1])
    for coeffs, mult in factors:
        lift = Poly(coeffs)
        g_star = g_star * lift
        h_star = h_star * lift ** (mult - 1)
    diff = g_star * h_star - field.defining_poly
    t_coeffs = []
    for c in diff.coeffs:
        num = int(c)
        if num % p != 0:
            raise WitnessFailure("Dedekind lift mismatch")
        t_coeffs.append(num // p)
    g1 = _gf_gcd([int(c) for c in g_star.coeffs],
                 [int(c) for c in h_star.coeffs], p)
    g2 = _gf_gcd(g1, t_coeffs, p)
    if len(g2) - 1 != 0:
        raise IndexDivisor(
            f"prime {p} divides the index of Z[theta] in the maximal order; "
            "place data for this field at this prime is refused")


def _is_p_integral(a: FieldElement, p: int) -> bool:
    return all(c.denominator % p != 0 for c in a.coords)


def _valuation_with(a: FieldElement, tau: FieldElement, p: int, cap: int) -> int:
    """Largest k with a * tau^k still p-integral (a assumed p-integral)."""
    k = 0
    x = a * tau
    while _is_p_integral(x, p):
        k += 1
        if k > cap:
            raise WitnessFailure("valuation iteration exceeded its norm bound")
        x = x * tau
    return k


def _prime_splitting(field: WorkingField, p: int):
    cached = field._place_cache.get(p)
    if cached is not None:
        return cached
    factors = _factor_mod_p(field.defining_poly, p)
    _dedekind_index_check(field, p, factors)
    theta = field.theta()

    g_elems = []
    for coeffs, mult in factors:
        lift = Poly(coeffs)
        acc = field.zero()
        for c in reversed(lift.coeffs):
            acc = acc * theta + c
        if acc.is_zero():
            # the canonical lift was m_F itself (single inert factor); use
            # the lift shifted by p, whose value at theta is p
            acc = field.from_rational(p)
        g_elems.append((acc, mult, lift.degree))

    data = []
    for i, (gi, ei, fi) in enumerate(g_elems):
        tau = field.one()
        for j, (gj, ej, _) in enumerate(g_elems):
            if j != i:
                tau = tau * gj ** ej
        tau = tau * gi ** (ei - 1) / p

        cap = _int_valuation(abs(int(gi.norm())), p) + 1
        v_gi = _valuation_with(gi, tau, p, cap)
        pi = gi if v_gi == 1 else gi + p
        data.append(_PrimeData(gbar=tuple(int(c) for c in Poly(factors[i][0]).coeffs),
                               e=ei, f=fi, anti_uniformizer=tau, uniformizer=pi))

    result = tuple(data)
    field._place_cache[p] = result
    return result


def local_factorization(field: WorkingField, a: FieldElement, p: int) -> LocalFactorization:
    """Primes of F above p with (e, f) and exact valuations of a.

    Raises IndexDivisor when the Dedekind method cannot certify the
    splitting at p.  The result is checked against the norm identity
    sum(f * v) = v_p(N(a)) and the computation aborts on any mismatch.
    """
    if a.is_zero():
        raise ZeroElement("valuations of zero are undefined")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    data = _prime_splitting(field, p)
    B, den = a.denominator_cleared()
    b = field.element(B.coeffs)
    vden = _int_valuation(den, p) if den % p == 0 else 0
    norm_b = abs(int(b.norm()))
    cap = _int_valuation(norm_b, p) + 1 if norm_b % p == 0 else 1

    factors = []
    for pd in data:
        vb = _valuation_with(b, pd.anti_uniformizer, p, cap)
        factors.append(LocalFactor(e=pd.e, f=pd.f, valuation=vb - pd.e * vden))

    total = sum(f.f * f.valuation for f in factors)
    norm_a = a.norm()
    vnorm = _int_valuation(norm_a.numerator, p) - _int_valuation(norm_a.denominator, p)
    if total != vnorm:
        raise WitnessFailure(
            f"valuation/norm mismatch at p={p}: sum f*v = {total}, "
            f"v_p(Norm) = {vnorm}")
    return LocalFactorization(p=p, factors=tuple(factors))


# -- places and vectors ----------------------------------------------------


def places(field: WorkingField):
    """Archimedean places with weights (finite places are per-prime,
    through local_factorization)."""
    d = field.degree
    out = []
    for idx, cls in enumerate(archimedean_classes(field.embeddings)):
        out.append((PlaceId("arch", 0, idx), Fraction(len(cls), d)))
    return out


def _eval_at_embedding(field: WorkingField, a: FieldElement, root):
    acc = mpmath.mpc(0)
    deriv_bound = mpmath.mpf(0)
    z = root.value
    az = abs(z) + root.radius
    for k, c in enumerate(a.coords):
        cf = mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
        acc += cf * z ** k
        if k:
            deriv_bound += abs(cf) * k * az ** (k - 1)
    return acc, float(deriv_bound * root.radius)


def f_vector(u: GElement) -> PlaceVector:
    """The place vector of a group element: archimedean values at every
    embedding class, finite values wherever the valuation is nonzero."""
    field = u.field
    if u.is_zero():
        return PlaceVector(field, u, {})
    beta = u.base
    scale = float(u.scale)
    d = field.degree
    entries = {}

    with locked_workprec(field.precision_bits):
        classes = archimedean_classes(field.embeddings)
        for idx, cls in enumerate(classes):
            root = field.embeddings[cls[0]]
            w, delta = _eval_at_embedding(field, beta, root)
            mag = abs(w)
            if mag <= 2 * delta:
                raise PrecisionExhausted(
                    "embedding value indistinguishable from zero")
            value = float(mpmath.log(mag)) * scale
            err = abs(scale) * (delta / (float(mag) - delta)) \
                + _FLOAT_SLACK * (1 + abs(value))
            entries[PlaceId("arch", 0, idx)] = PlaceEntry(
                value=value, abs_error=err, weight=Fraction(len(cls), d))

    B, den = beta.denominator_cleared()
    b = field.element(B.coeffs)
    support = set(sympy.factorint(den))
    nb = abs(int(b.norm()))
    support |= set(sympy.factorint(nb))
    for p in sorted(support):
        lf = local_factorization(field, beta, p)
        for j, fac in enumerate(lf.factors):
            if fac.valuation == 0:
                continue
            logp = math.log(p)
            value = -float(u.scale * Fraction(fac.valuation, fac.e)) * logp
            entries[PlaceId("finite", p, j)] = PlaceEntry(
                value=value,
                abs_error=_FLOAT_SLACK * (1 + abs(value)),
                weight=Fraction(fac.e * fac.f, d),
                e=fac.e, f=fac.f, valuation=fac.valuation)
    return PlaceVector(field, u, entries)


def l1_norm(v: PlaceVector) -> float:
    """Weighted L1 norm; equals twice the Weil height of the element."""
    return sum(float(ent.weight) * abs(ent.value) for ent in v.entries.values())


def integral(v: PlaceVector) -> float:
    """Weighted integral; the product formula makes this vanish."""
    return sum(float(ent.weight) * ent.value for ent in v.entries.values())


def vector_error_bound(v: PlaceVector) -> float:
    return sum(float(ent.weight) * ent.abs_error for ent in v.entries.values())


# -- the isometric Galois action ------------------------------------------


def _arch_permutation(field: WorkingField, sigma):
    """perm[c] = class index of (embedding_c composed with sigma)."""
    classes = archimedean_classes(field.embeddings)
    class_of_embedding = {}
    for idx, cls in enumerate(classes):
        for i in cls:
            class_of_embedding[i] = idx
    sigma_theta = sigma.theta_image
    perm = []
    with locked_workprec(field.precision_bits):
        for cls in classes:
            root = field.embeddings[cls[0]]
            w, delta = _eval_at_embedding(field, sigma_theta, root)
            best, best_dist = None, None
            for j, rj in enumerate(field.embeddings):
                dist = abs(w - rj.value)
                if best is None or dist < best_dist:
                    best, best_dist = j, dist
            if float(best_dist) > delta + field.embeddings[best].radius:
                raise PrecisionExhausted(
                    "could not certify the embedding permutation")
            perm.append(class_of_embedding[best])
    return perm


def _finite_permutation(field: WorkingField, sigma, p: int):
    """perm[i] = j with sigma(P_i) = Q_j, via uniformizer images."""
    data = _prime_splitting(field, p)
    perm = []
    for pd in data:
        img = sigma(pd.uniformizer)
        if not _is_p_integral(img, p):
            raise WitnessFailure("automorphism image left the local order")
        coeffs = [(c.numerator * pow(c.denominator, -1, p)) % p for c in img.coords]
        hits = []
        for j, qd in enumerate(data):
            rem = _gf_mod_poly([c % p for c in coeffs], list(qd.gbar), p)
            if not rem:
                hits.append(j)
        if len(hits) != 1:
            raise WitnessFailure("prime permutation was not uniquely determined")
        perm.append(hits[0])
    return perm


def permute_by_automorphism(v: PlaceVector, sigma) -> PlaceVector:
    """The vector of the sigma-image element, realized as a weight-preserving
    permutation of entries within each fiber."""
    field = v.field
    new_element = v.element.apply(sigma)
    if not v.entries:
        return PlaceVector(field, new_element, {})
    entries = {}

    arch = v.arch_items()
    if arch:
        perm = _arch_permutation(field, sigma)
        by_index = {pid.index: ent for pid, ent in arch}
        for pid, ent in arch:
            src = perm[pid.index]
            src_ent = by_index[src]
            if src_ent.weight != ent.weight:
                raise WitnessFailure("archimedean permutation is not weight-preserving")
            entries[pid] = dataclasses.replace(src_ent)

    sigma_inv = sigma.inverse()
    finite_ps = sorted({pid.p for pid, _ in v.finite_items()})
    for p in finite_ps:
        perm = _finite_permutation(field, sigma_inv, p)
        fiber = {pid.index: ent for pid, ent in v.finite_items() if pid.p == p}
        data = _prime_splitting(field, p)
        for j in range(len(data)):
            src = perm[j]
            if src in fiber:
                ent = fiber[src]
                entries[PlaceId("finite", p, j)] = dataclasses.replace(ent)
    return PlaceVector(field, new_element, entries)
