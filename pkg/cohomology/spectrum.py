# cohomology/spectrum.py

"""
Certified spectra of exact matrices.

The characteristic polynomial is computed exactly (sympy DomainMatrix,
division-free Berkowitz over the fraction-cleared ring) and factored into
irreducibles. Each irreducible factor has simple roots; mpmath isolates
them and every approximation z_i gets a Weierstrass inclusion radius

    r_i = deg * |g(z_i)| / prod_{j != i} |z_i - z_j|

so the disks D(z_i, r_i) are disjoint and each contains exactly one root.
Precision is doubled until the radii are below the requested relative size.

Questions of the form |a| = |b| cannot be settled numerically. They are
answered from certified symmetries (complex conjugation for real factors,
z -> 1/conj(z) for conjugate-reciprocal factors) or exactly from closed
forms of roots of degree <= 2 factors. Anything else raises
UndecidableError.
"""

import hashlib
import logging
import threading
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from mpmath import mp
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import BasePolynomialError

from cohomology.hodge import format_rational, is_real, real_part
from util.errors import HypothesisError, SchemaError, UndecidableError

logger = logging.getLogger(__name__)

# mpmath keeps its working precision in global state.
MP_LOCK = threading.RLock()

_SPECTRUM_CACHE: Dict[Tuple, "Spectrum"] = {}
_CACHE_LOCK = threading.Lock()

UNIT_GROUP = ("unit",)
_X = sympy.Symbol("x")


# ---------------- Types ----------------
@dataclass(frozen=True)
class Numerics:
    """Numeric knobs shared by the spectral and rate computations."""

    certify_rel: float = 1e-9
    root_dps: int = 60
    max_root_dps: int = 480
    precision_bits: int = 128
    growth_n: int = 200
    growth_band: float = 0.25
    tolerance: float = 1e-9
    margin_delta0: float = 1e-3
    max_workers: int = 4

    @classmethod
    def from_config(cls, cfg) -> "Numerics":
        return cls(**{f.name: getattr(cfg, f.name) for f in fields(cls)})

    def spectrum_kwargs(self) -> dict:
        return {
            "certify_rel": self.certify_rel,
            "dps": self.root_dps,
            "max_dps": self.max_root_dps,
        }

    def growth_kwargs(self) -> dict:
        return {
            "growth_n": self.growth_n,
            "growth_band": self.growth_band,
            "precision_bits": self.precision_bits,
        }


@dataclass(frozen=True)
class CertifiedRoot:
    """One distinct root of the characteristic polynomial."""

    index: int
    value: Any  # mpc
    radius: Any  # mpf, |root - value| <= radius
    modulus: Any  # mpf
    modulus_lo: Any
    modulus_hi: Any
    multiplicity: int
    factor: int
    factor_degree: int
    group: Tuple  # roots sharing a group have provably equal moduli
    unimodular: bool
    inverse_partner: Optional[int] = None  # root equal to 1/conj(value)
    exact: Any = field(default=None, compare=False, repr=False)
    exact_mod2: Any = field(default=None, compare=False, repr=False)
    owner: str = field(default="", compare=False, repr=False)

    @property
    def abs_float(self) -> float:
        return float(self.modulus)


@dataclass(frozen=True)
class Spectrum:
    size: int
    roots: Tuple[CertifiedRoot, ...]  # sorted by decreasing modulus
    factors: Tuple[Tuple[Tuple[str, ...], int], ...]
    dps: int
    owner: str

    @property
    def top(self) -> CertifiedRoot:
        return self.roots[0]

    def with_multiplicity(self) -> List[CertifiedRoot]:
        return [r for r in self.roots for _ in range(r.multiplicity)]

    def moduli(self) -> List[float]:
        return [r.abs_float for r in self.with_multiplicity()]


@dataclass(frozen=True)
class MultiplicityCheck:
    ok: bool
    branch: str  # "simple-root" or "growth"
    slope: Optional[float] = None

    def __bool__(self):
        return self.ok


# ---------------- Exact helpers ----------------
def exact_matrix(M: DomainMatrix) -> DomainMatrix:
    """M over QQ when all entries are real, else over QQ_I."""
    if not M.is_square:
        raise SchemaError(f"matrix must be square (shape {M.shape})")
    K = M.domain
    if K == QQ_I:
        return real_part(M) if is_real(M) else M
    if K == QQ:
        return M
    try:
        return M.convert_to(QQ)
    except Exception as e:
        raise SchemaError(f"entries must be exact rationals (domain {K})") from e


def _matrix_key(M: DomainMatrix) -> Tuple:
    return (M.shape, str(M.domain), tuple(str(e) for e in M.to_list_flat()))


def _format_coeff(c, K) -> str:
    if K == QQ_I:
        return f"{format_rational(c.x)}+{format_rational(c.y)}i"
    return format_rational(c)


def _to_mpc(c, K):
    if K == QQ_I:
        re, im = c.x, c.y
    else:
        re, im = c, QQ.zero
    return mp.mpc(
        mp.mpf(int(re.numerator)) / int(re.denominator),
        mp.mpf(int(im.numerator)) / int(im.denominator),
    )


def _is_conj_reciprocal(coeffs, K) -> bool:
    """True when reversing and conjugating the coefficients gives a multiple of them."""
    if K == QQ_I:
        star = [c.new(c.x, -c.y) for c in reversed(coeffs)]
    else:
        star = list(reversed(coeffs))
    if star[0] == K.zero:
        return False
    return all(s * coeffs[0] == c * star[0] for s, c in zip(star, coeffs))


def _closed_forms(coeffs, K) -> List[Tuple[Any, Any]]:
    """(root, |root|^2) as sympy expressions for factors of degree 1 or 2."""
    sym = [K.to_sympy(c) for c in coeffs]
    if len(sym) == 2:
        a, b = sym
        z = -b / a
        return [(z, sympy.expand(z * sympy.conjugate(z)))]
    a, b, c = sym
    disc = sympy.expand(b**2 - 4 * a * c)
    s = sympy.sqrt(disc)
    if sympy.im(disc) == 0:
        s_bar = s if disc >= 0 else -s
    else:
        s_bar = sympy.sqrt(sympy.conjugate(disc))
    a_bar, b_bar = sympy.conjugate(a), sympy.conjugate(b)
    out = []
    for sign in (1, -1):
        z = (-b + sign * s) / (2 * a)
        z_bar = (-b_bar + sign * s_bar) / (2 * a_bar)
        out.append((z, sympy.expand(z * z_bar)))
    return out


def exact_is_zero(expr) -> bool:
    """Decide expr == 0 for an explicit algebraic number."""
    expr = sympy.expand(expr)
    if expr == 0:
        return True
    if expr.is_Rational:
        return False
    try:
        return sympy.minimal_polynomial(expr, _X) == _X
    except (NotImplementedError, BasePolynomialError) as e:
        raise UndecidableError(f"undecidable at tolerance: {e}") from e


# ---------------- Root isolation ----------------
def _isolate(coeffs_mp: List, dps: int) -> Optional[List[Tuple[Any, Any]]]:
    """Approximate roots with disjoint Weierstrass disks, or None."""
    lc = coeffs_mp[0]
    c = [a / lc for a in coeffs_mp]
    m = len(c) - 1
    guard = mp.ldexp(1, -mp.prec + 8)
    try:
        approx, _err = mp.polyroots(
            c, maxsteps=60 + 20 * m, cleanup=True, extraprec=2 * mp.prec, error=True
        )
    except (mp.NoConvergence, ZeroDivisionError):
        return None
    approx = [mp.mpc(z) for z in approx]
    disks = []
    for i, z in enumerate(approx):
        denom = mp.fprod(z - w for j, w in enumerate(approx) if j != i)
        if denom == 0:
            return None
        r = m * abs(mp.polyval(c, z) / denom) + guard * (1 + abs(z))
        disks.append((z, r))
    for i in range(m):
        for j in range(i + 1, m):
            if abs(disks[i][0] - disks[j][0]) <= disks[i][1] + disks[j][1]:
                return None
    return disks


def _linear_root(coeffs, K):
    a, b = coeffs
    q = -b / a
    z = _to_mpc(q, K)
    parts = (q.x, q.y) if K == QQ_I else (q,)
    # exact when every denominator is a power of two
    exact = all((int(p.denominator) & (int(p.denominator) - 1)) == 0 for p in parts)
    r = mp.zero if exact else mp.ldexp(1, -mp.prec + 8) * (1 + abs(z))
    return [(z, r)]


def _certify_factor(coeffs, K, dps: int, max_dps: int, certify_rel: float):
    cur = dps
    while cur <= max_dps:
        with mp.workdps(cur):
            if len(coeffs) == 2:
                return _linear_root(coeffs, K), cur
            disks = _isolate([_to_mpc(c, K) for c in coeffs], cur)
            if disks is not None and all(
                r <= certify_rel * max(1, abs(z)) for z, r in disks
            ):
                return disks, cur
        logger.warning(
            "Root isolation of a degree %d factor failed at %d digits; escalating",
            len(coeffs) - 1,
            cur,
        )
        cur *= 2
    raise UndecidableError(
        f"undecidable at tolerance: roots not isolated within {max_dps} digits"
    )


class _Groups:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        self.parent[self.find(i)] = self.find(j)


def _unique_hit(center, radius, candidates):
    """Index of the only candidate disk meeting D(center, radius), else None."""
    hits = [i for i, (z, r) in candidates if abs(center - z) <= radius + r]
    return hits[0] if len(hits) == 1 else None


def certified_spectrum(
    M: DomainMatrix,
    *,
    certify_rel: float = 1e-9,
    dps: int = 60,
    max_dps: int = 480,
) -> Spectrum:
    """Exact factorisation plus certified roots of the characteristic polynomial."""
    E = exact_matrix(M)
    if E.shape[0] == 0:
        raise SchemaError("empty matrix has no spectrum")
    key = (_matrix_key(E), certify_rel, dps, max_dps)
    with _CACHE_LOCK:
        hit = _SPECTRUM_CACHE.get(key)
    if hit is not None:
        return hit

    K = E.domain
    owner = hashlib.sha256(repr(key).encode()).hexdigest()[:16]
    factor_list = E.charpoly_factor_list()
    logger.debug("charpoly of %dx%d over %s: %d factors", E.shape[0], E.shape[0], K, len(factor_list))

    with MP_LOCK:
        raw = []  # (value, radius, factor index, closed form, mod2)
        used_dps = dps
        for fi, (coeffs, mult) in enumerate(factor_list):
            disks, d = _certify_factor(coeffs, K, dps, max_dps, certify_rel)
            used_dps = max(used_dps, d)
            forms = _closed_forms(coeffs, K) if len(coeffs) <= 3 else None
            for z, r in disks:
                exact = mod2 = None
                if forms:
                    zc = complex(z)
                    exact, mod2 = min(
                        forms, key=lambda f: abs(complex(sympy.N(f[0], 30)) - zc)
                    )
                raw.append((z, r, fi, exact, mod2))

        with mp.workdps(used_dps):
            raw.sort(key=lambda t: (-abs(t[0]), -t[0].real, -t[0].imag))
            n = len(raw)
            groups = _Groups(n)
            inverse = [None] * n
            unimodular = [False] * n
            for fi, (coeffs, _mult) in enumerate(factor_list):
                members = [(i, (t[0], t[1])) for i, t in enumerate(raw) if t[2] == fi]
                real_factor = K == QQ or all(not c.y for c in coeffs)
                reciprocal = _is_conj_reciprocal(coeffs, K)
                for i, (z, r) in members:
                    if real_factor:
                        j = _unique_hit(mp.conj(z), r, members)
                        if j is not None:
                            groups.union(i, j)
                    if reciprocal and abs(z) > r:
                        s_center = 1 / mp.conj(z)
                        s_radius = r / (abs(z) * (abs(z) - r))
                        j = _unique_hit(s_center, s_radius, members)
                        if j is not None:
                            inverse[i] = j
                            unimodular[i] = unimodular[i] or j == i
            for i, t in enumerate(raw):
                mod2 = t[4]
                if not unimodular[i] and mod2 is not None:
                    lo, hi = abs(t[0]) - t[1], abs(t[0]) + t[1]
                    if lo <= 1 <= hi and exact_is_zero(mod2 - 1):
                        unimodular[i] = True
            roots = []
            for i, (z, r, fi, exact, mod2) in enumerate(raw):
                mod = abs(z)
                group = UNIT_GROUP if unimodular[i] else (owner, groups.find(i))
                roots.append(
                    CertifiedRoot(
                        index=i,
                        value=z,
                        radius=r,
                        modulus=mod,
                        modulus_lo=max(mp.zero, mod - r),
                        modulus_hi=mod + r,
                        multiplicity=factor_list[fi][1],
                        factor=fi,
                        factor_degree=len(factor_list[fi][0]) - 1,
                        group=group,
                        unimodular=unimodular[i],
                        inverse_partner=inverse[i],
                        exact=exact,
                        exact_mod2=mod2,
                        owner=owner,
                    )
                )

    spectrum = Spectrum(
        size=E.shape[0],
        roots=tuple(roots),
        factors=tuple(
            (tuple(_format_coeff(c, K) for c in coeffs), mult)
            for coeffs, mult in factor_list
        ),
        dps=used_dps,
        owner=owner,
    )
    with _CACHE_LOCK:
        _SPECTRUM_CACHE.setdefault(key, spectrum)
    return spectrum


# ---------------- Modulus comparisons ----------------
def moduli_equal(a: CertifiedRoot, b: CertifiedRoot) -> bool:
    """Decide |a| == |b| or raise UndecidableError."""
    if a.owner == b.owner and a.index == b.index:
        return True
    if a.group == b.group:
        return True
    if a.modulus_hi < b.modulus_lo or b.modulus_hi < a.modulus_lo:
        return False
    if a.exact_mod2 is not None and b.exact_mod2 is not None:
        return exact_is_zero(a.exact_mod2 - b.exact_mod2)
    raise UndecidableError(
        f"undecidable at tolerance: moduli {float(a.modulus):.12g} and "
        f"{float(b.modulus):.12g} overlap"
    )


def moduli_reciprocal(a: CertifiedRoot, b: CertifiedRoot) -> bool:
    """Decide |a|*|b| == 1 or raise UndecidableError."""
    if a.owner == b.owner and a.inverse_partner == b.index:
        return True
    if a.unimodular and b.unimodular:
        return True
    with MP_LOCK, mp.workprec(256):
        if a.modulus_lo * b.modulus_lo > 1 or a.modulus_hi * b.modulus_hi < 1:
            return False
    if a.exact_mod2 is not None and b.exact_mod2 is not None:
        return exact_is_zero(a.exact_mod2 * b.exact_mod2 - 1)
    raise UndecidableError(
        f"undecidable at tolerance: |a|*|b| = {float(a.modulus * b.modulus):.12g} "
        "cannot be separated from 1"
    )


def is_unimodular(r: CertifiedRoot) -> bool:
    if r.unimodular:
        return True
    if r.modulus_hi < 1 or r.modulus_lo > 1:
        return False
    if r.exact_mod2 is not None:
        return exact_is_zero(r.exact_mod2 - 1)
    raise UndecidableError(
        f"undecidable at tolerance: modulus {float(r.modulus):.12g} is not separated from 1"
    )


def _error_radius(r: CertifiedRoot) -> float:
    """Certified bound on |float(|root|) - |root||."""
    with MP_LOCK, mp.workprec(256):
        approx = float(r.modulus)
        err = float(r.radius + abs(mp.mpf(approx) - r.modulus))
    return float(np.nextafter(err, np.inf)) if err else 0.0


# ---------------- Spectral operations ----------------
def spectral_radius(
    M: DomainMatrix, *, allow_zero: bool = False, **kwargs
) -> Tuple[float, float]:
    """(rho(M), certified error radius)."""
    spec = certified_spectrum(M, **kwargs)
    top = spec.top
    if top.modulus == 0 and not allow_zero:
        raise HypothesisError("spectral radius 0: the block is nilpotent, not an automorphism")
    return float(top.modulus), float(_error_radius(top))


def dominant_ties(spec: Spectrum) -> List[CertifiedRoot]:
    """Every distinct root with the same modulus as the top root (top included)."""
    top = spec.top
    return [top] + [r for r in spec.roots[1:] if moduli_equal(top, r)]


def check_unique_dominant(M: DomainMatrix, **kwargs) -> Tuple[bool, float]:
    """
    (ok, second_modulus): ok iff exactly one root counted with multiplicity
    attains the maximal modulus.
    """
    spec = certified_spectrum(M, **kwargs)
    ties = dominant_ties(spec)
    count = sum(r.multiplicity for r in ties)
    if count > 1:
        return False, spec.top.abs_float
    rest = [r.abs_float for r in spec.roots[1:]]
    return True, max(rest, default=0.0)


def _max_norm(X) -> Any:
    return max(abs(X[i, j]) for i in range(X.rows) for j in range(X.cols))


def to_mp_matrix(M: DomainMatrix):
    """mpmath matrix of the exact entries at the current working precision."""
    E = exact_matrix(M)
    K = E.domain
    rows = E.to_list()
    return mp.matrix([[_to_mpc(e, K) for e in row] for row in rows])


def growth_slope(M: DomainMatrix, rho, n_max: int, precision_bits: int) -> float:
    """Log-log slope of sup_{m<=n} ||M^m|| / rho^m over n in [n_max/2, n_max]."""
    with MP_LOCK, mp.workprec(precision_bits):
        X = to_mp_matrix(M) / rho
        P = mp.eye(X.rows)
        sup = mp.zero
        ns, logs = [], []
        for n in range(1, n_max + 1):
            P = P * X
            sup = max(sup, _max_norm(P))
            if n >= n_max // 2:
                ns.append(float(mp.log(n)))
                logs.append(float(mp.log(sup)))
    slope, _ = np.polyfit(ns, logs, 1)
    return float(slope)


def check_multiplicity_one(
    M: DomainMatrix,
    *,
    growth_n: int = 200,
    growth_band: float = 0.25,
    precision_bits: int = 128,
    **kwargs,
) -> MultiplicityCheck:
    """Jordan blocks at the maximal modulus all have size 1."""
    spec = certified_spectrum(M, **kwargs)
    ties = dominant_ties(spec)
    if all(r.multiplicity == 1 for r in ties):
        return MultiplicityCheck(True, "simple-root")
    slope = growth_slope(M, spec.top.modulus, growth_n, precision_bits)
    logger.info("Growth test: log-log slope %.4f over n <= %d", slope, growth_n)
    if slope <= growth_band:
        return MultiplicityCheck(True, "growth", slope)
    if slope >= 1 - growth_band:
        return MultiplicityCheck(False, "growth", slope)
    raise UndecidableError(
        f"undecidable at tolerance: growth slope {slope:.3f} lies between "
        f"{growth_band} and {1 - growth_band}"
    )


def check_surface_spectrum(M: DomainMatrix, **kwargs) -> bool:
    """Moduli are {d_1, 1/d_1} plus ones, with d_1 > 1."""
    spec = certified_spectrum(M, **kwargs)
    top = spec.top
    if top.unimodular or top.modulus_hi <= 1:
        raise HypothesisError("surface spectrum check needs d_1 > 1")
    if top.modulus_lo <= 1:
        raise UndecidableError("undecidable at tolerance: d_1 is not separated from 1")
    if sum(r.multiplicity for r in dominant_ties(spec)) != 1:
        return False
    rest = spec.roots[1:]
    recips = [r for r in rest if moduli_reciprocal(top, r)]
    if len(recips) != 1 or recips[0].multiplicity != 1:
        return False
    return all(is_unimodular(r) for r in rest if r is not recips[0])


def transpose_invariant(M: DomainMatrix) -> bool:
    """Characteristic polynomials of M and M^T agree exactly."""
    E = exact_matrix(M)
    return E.charpoly() == E.transpose().charpoly()
