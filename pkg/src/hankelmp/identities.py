"""Randomized exact verification of the structured determinant identities.

Two facts are exercised over moments of random discrete measures: any square
matrix whose first n+1 rows are shifted moment rows of an n-atom measure has
determinant zero, and the almost-Hankel bordered determinant factors as
(-1)^(p(p+1)/2) * D_{n-1} * prod_j (x_j - s_{2n+p}).  Both checks are exact;
a single failing trial disproves the implementation (or the identity).

The random generator is SplitMix64: the same seed yields the same stream on
every platform, so failing instances replay bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BadShape, InfeasibleSpec
from .hankel import (
    Degenerate,
    MomentWindow,
    classify,
    det_exact,
    det_sequence,
    hankel_matrix,
    is_psd,
)
from .recovery import DiscreteMeasure, measure_moments, reconstruct

__all__ = [
    "CampaignReport",
    "Det2Instance",
    "Det2Result",
    "MeasureGenSpec",
    "SplitMix64",
    "det1_determinant",
    "det1_matrix",
    "det2_check",
    "det2_matrix",
    "random_measure",
    "verify_det1",
    "verify_det2",
    "verify_psd_theorem",
    "verify_roundtrip",
]

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix64), identical on all platforms."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], rejection-sampled to avoid modulo bias."""
        if lo > hi:
            raise ValueError("empty integer range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + (u % span)

    def rational(self, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
        """A rational p/q with q <= max_den inside [lo, hi]."""
        for _ in range(10_000):
            q = self.randint(1, max_den)
            p_lo = math.ceil(lo * q)
            p_hi = math.floor(hi * q)
            if p_lo > p_hi:
                continue
            return Fraction(self.randint(p_lo, p_hi), q)
        raise InfeasibleSpec(f"no rational with denominator <= {max_den} in [{lo}, {hi}]")

    def increasing_ints(self, count: int, lo: int, hi: int) -> list[int]:
        """``count`` distinct integers from [lo, hi], sorted ascending."""
        if hi - lo + 1 < count:
            raise ValueError("range too small for the requested count")
        chosen: set[int] = set()
        while len(chosen) < count:
            chosen.add(self.randint(lo, hi))
        return sorted(chosen)


@dataclass(frozen=True)
class MeasureGenSpec:
    """Deterministic recipe for a random rational measure."""

    atom_count: int
    atom_range: tuple[Fraction, Fraction]
    weight_range: tuple[Fraction, Fraction]
    denominator_bound: int
    seed: int

    def __post_init__(self):
        if self.atom_count < 1:
            raise ValueError("atom_count must be at least 1")
        if self.denominator_bound < 1:
            raise ValueError("denominator_bound must be at least 1")
        if self.atom_range[0] > self.atom_range[1]:
            raise ValueError("empty atom range")
        if self.weight_range[0] > self.weight_range[1] or self.weight_range[0] <= 0:
            raise ValueError("weight range must be positive")


def _count_rationals(lo: Fraction, hi: Fraction, max_den: int, needed: int) -> int:
    """Count reduced rationals with denominator <= max_den in [lo, hi], capped."""
    total = 0
    for q in range(1, max_den + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            if math.gcd(abs(p), q) == 1:
                total += 1
                if total >= needed:
                    return total
    return total


def random_measure(spec: MeasureGenSpec) -> DiscreteMeasure:
    """Deterministic random measure: distinct sorted atoms, positive weights.

    Raises ``InfeasibleSpec`` when the atom range cannot host ``atom_count``
    distinct rationals under the denominator bound.
    """
    lo, hi = spec.atom_range
    if _count_rationals(lo, hi, spec.denominator_bound, spec.atom_count) < spec.atom_count:
        raise InfeasibleSpec(
            f"[{lo}, {hi}] holds fewer than {spec.atom_count} rationals "
            f"with denominator <= {spec.denominator_bound}"
        )
    rng = SplitMix64(spec.seed)
    atoms: set[Fraction] = set()
    attempts = 0
    while len(atoms) < spec.atom_count:
        attempts += 1
        if attempts > 100_000:
            raise InfeasibleSpec("atom sampling failed to find enough distinct values")
        atoms.add(rng.rational(lo, hi, spec.denominator_bound))
    w_lo, w_hi = spec.weight_range
    weights = [
        rng.rational(w_lo, w_hi, spec.denominator_bound) for _ in range(spec.atom_count)
    ]
    return DiscreteMeasure(tuple(sorted(atoms)), tuple(weights))


def _require_exact(mu: DiscreteMeasure) -> None:
    if not mu.is_exact:
        raise ValueError("identity checks need a measure with exact rational data")


def det1_matrix(
    mu: DiscreteMeasure,
    cs: Sequence[int],
    p: int,
    filler: Sequence[Sequence[Fraction | int | str]],
) -> list[list[Fraction]]:
    """The (n+p) x (n+p) matrix of shifted moment rows stacked on the filler."""
    _require_exact(mu)
    n = len(mu)
    if p < 1:
        raise BadShape("p must be at least 1")
    if len(cs) != n + 1:
        raise BadShape(f"need {n + 1} row shifts, got {len(cs)}")
    if any(c < 0 for c in cs) or any(a >= b for a, b in zip(cs, cs[1:])):
        raise BadShape("row shifts must be strictly increasing nonnegative integers")
    fill_rows = [[Fraction(c) for c in row] for row in filler]
    if len(fill_rows) != p - 1 or any(len(row) != n + p for row in fill_rows):
        raise BadShape(f"filler must be {p - 1} rows of length {n + p}")
    width = n + p
    moments = measure_moments(mu, cs[-1] + width)
    matrix = [[moments[c + t] for t in range(width)] for c in cs]
    matrix.extend(fill_rows)
    return matrix


def det1_determinant(
    mu: DiscreteMeasure,
    cs: Sequence[int],
    p: int,
    filler: Sequence[Sequence[Fraction | int | str]],
) -> Fraction:
    """Exact determinant of the det1 matrix; zero whenever mu has n atoms."""
    return det_exact(det1_matrix(mu, cs, p, filler))


@dataclass(frozen=True)
class Det2Instance:
    """An almost-Hankel bordered matrix instance.

    Entries follow s_{i+j} for i+j <= 2n+p-1, the anti-diagonal i+j = 2n+p
    holds the free values x_0..x_p (top right to bottom left), and everything
    below it is arbitrary fill.
    """

    n: int
    p: int
    base_measure: DiscreteMeasure
    xs: tuple[Fraction, ...]
    fill: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise BadShape("need n >= 1 and p >= 1")
        if len(self.base_measure) != self.n:
            raise BadShape(f"base measure must have exactly {self.n} atoms")
        _require_exact(self.base_measure)
        object.__setattr__(self, "xs", tuple(Fraction(x) for x in self.xs))
        if len(self.xs) != self.p + 1:
            raise BadShape(f"need {self.p + 1} anti-diagonal values, got {len(self.xs)}")
        object.__setattr__(
            self, "fill", {key: Fraction(v) for key, v in self.fill.items()}
        )
        order = self.n + self.p + 1
        expected = {
            (i, j)
            for i in range(order)
            for j in range(order)
            if i + j >= 2 * self.n + self.p + 1
        }
        if set(self.fill) != expected:
            raise BadShape("fill must cover exactly the entries with i + j >= 2n + p + 1")


@dataclass(frozen=True)
class Det2Result:
    lhs: Fraction
    rhs: Fraction
    equal: bool


def det2_matrix(inst: Det2Instance) -> list[list[Fraction]]:
    """Assemble the order n+p+1 matrix of a det2 instance."""
    n, p = inst.n, inst.p
    moments = measure_moments(inst.base_measure, 2 * n + p)
    order = n + p + 1
    anti = 2 * n + p
    rows = []
    for i in range(order):
        row = []
        for j in range(order):
            if i + j <= anti - 1:
                row.append(moments[i + j])
            elif i + j == anti:
                row.append(inst.xs[i - n])
            else:
                row.append(inst.fill[(i, j)])
        rows.append(row)
    return rows


def det2_check(inst: Det2Instance) -> Det2Result:
    """Exact check of the bordered-determinant factorization.

    lhs is the assembled determinant; rhs is
    (-1)^(p(p+1)/2) * D_{n-1} * prod_j (x_j - s_{2n+p}).
    """
    n, p = inst.n, inst.p
    lhs = det_exact(det2_matrix(inst))
    moments = measure_moments(inst.base_measure, 2 * n + p + 1)
    d_prev = det_exact(hankel_matrix(MomentWindow(moments[: 2 * n - 1]), n - 1))
    s_top = moments[2 * n + p]
    rhs = Fraction((-1) ** (p * (p + 1) // 2)) * d_prev
    for x in inst.xs:
        rhs *= x - s_top
    return Det2Result(lhs, rhs, lhs == rhs)


# --- seeded verification campaigns -------------------------------------------


@dataclass
class CampaignReport:
    """Outcome of a seeded campaign; byte-deterministic given the parameters."""

    campaign: str
    trials: int
    seed: int
    params: dict
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        out = {
            "campaign": self.campaign,
            "trials": self.trials,
            "seed": self.seed,
        }
        out.update(self.params)
        out["failures"] = len(self.failures)
        out["ok"] = self.passed
        if self.failures:
            out["failing"] = self.failures
        return out


def _measure_doc(mu: DiscreteMeasure) -> dict:
    return {
        "atoms": [str(a) for a in mu.atoms],
        "weights": [str(w) for w in mu.weights],
    }


def _matrix_doc(rows: Sequence[Sequence[Fraction]]) -> list[list[str]]:
    return [[str(c) for c in row] for row in rows]


def _campaign_measure(rng: SplitMix64, atom_count: int) -> DiscreteMeasure:
    spec = MeasureGenSpec(
        atom_count=atom_count,
        atom_range=(Fraction(-4), Fraction(4)),
        weight_range=(Fraction(1, 6), Fraction(5)),
        denominator_bound=6,
        seed=rng.next_u64(),
    )
    return random_measure(spec)


def verify_det1(trials: int = 200, seed: int = 0, max_n: int = 4, max_p: int = 3) -> CampaignReport:
    """Random det1 instances; every determinant must vanish exactly."""
    rng = SplitMix64(seed)
    report = CampaignReport("det1", trials, seed, {"maxN": max_n, "maxP": max_p})
    for trial in range(trials):
        n = rng.randint(1, max_n)
        p = rng.randint(1, max_p)
        mu = _campaign_measure(rng, n)
        cs = rng.increasing_ints(n + 1, 0, 8)
        filler = [
            [rng.rational(Fraction(-5), Fraction(5), 8) for _ in range(n + p)]
            for _ in range(p - 1)
        ]
        value = det1_determinant(mu, cs, p, filler)
        if value != 0:
            report.failures.append(
                {
                    "trial": trial,
                    "n": n,
                    "p": p,
                    "measure": _measure_doc(mu),
                    "cs": cs,
                    "filler": _matrix_doc(filler),
                    "matrix": _matrix_doc(det1_matrix(mu, cs, p, filler)),
                    "determinant": str(value),
                }
            )
    return report


def _random_fill(rng: SplitMix64, n: int, p: int) -> dict[tuple[int, int], Fraction]:
    order = n + p + 1
    return {
        (i, j): rng.rational(Fraction(-5), Fraction(5), 8)
        for i in range(order)
        for j in range(order)
        if i + j >= 2 * n + p + 1
    }


def verify_det2(trials: int = 200, seed: int = 0, max_n: int = 4, max_p: int = 3) -> CampaignReport:
    """Random det2 instances: factorization, fill independence, forced collisions."""
    rng = SplitMix64(seed)
    report = CampaignReport("det2", trials, seed, {"maxN": max_n, "maxP": max_p})
    for trial in range(trials):
        n = rng.randint(1, max_n)
        p = rng.randint(1, max_p)
        mu = _campaign_measure(rng, n)
        xs = tuple(rng.rational(Fraction(-6), Fraction(6), 8) for _ in range(p + 1))
        inst = Det2Instance(n, p, mu, xs, _random_fill(rng, n, p))
        result = det2_check(inst)
        problems = []
        if not result.equal:
            problems.append("factorization mismatch")
        resampled = Det2Instance(n, p, mu, xs, _random_fill(rng, n, p))
        if det2_check(resampled).lhs != result.lhs:
            problems.append("determinant depends on the free fill entries")
        s_top = measure_moments(mu, 2 * n + p + 1)[2 * n + p]
        collided = Det2Instance(n, p, mu, (s_top,) * (p + 1), _random_fill(rng, n, p))
        collision = det2_check(collided)
        if collision.lhs != 0 or collision.rhs != 0:
            problems.append("forced collision x_j = s_{2n+p} did not vanish")
        if problems:
            report.failures.append(
                {
                    "trial": trial,
                    "n": n,
                    "p": p,
                    "measure": _measure_doc(mu),
                    "xs": [str(x) for x in xs],
                    "matrix": _matrix_doc(det2_matrix(inst)),
                    "lhs": str(result.lhs),
                    "rhs": str(result.rhs),
                    "problems": problems,
                }
            )
    return report


def _degenerate_pattern_ok(dets: Sequence[Fraction], n: int) -> bool:
    return all(d > 0 for d in dets[:n]) and all(d == 0 for d in dets[n:])


def verify_roundtrip(trials: int = 200, seed: int = 0, max_n: int = 5) -> CampaignReport:
    """Measure -> moments -> classify -> reconstruct must return exactly."""
    rng = SplitMix64(seed)
    report = CampaignReport("roundtrip", trials, seed, {"maxN": max_n})
    for trial in range(trials):
        n = rng.randint(1, max_n)
        mu = _campaign_measure(rng, n)
        moments = measure_moments(mu, 2 * n + 5)
        window = MomentWindow(moments)
        dets = det_sequence(window)
        cls = classify(window)
        rec = reconstruct(window)
        problems = []
        if not _degenerate_pattern_ok(dets, n):
            problems.append("determinant sign pattern broken")
        if cls != Degenerate(n, True):
            problems.append(f"classification {cls!r} instead of Degenerate({n}, True)")
        if rec.atoms != mu.atoms or rec.weights != mu.weights:
            problems.append("reconstruction differs from the source measure")
        if problems:
            report.failures.append(
                {
                    "trial": trial,
                    "n": n,
                    "measure": _measure_doc(mu),
                    "moments": [str(s) for s in moments],
                    "determinants": [str(d) for d in dets],
                    "reconstructed": _measure_doc(rec) if rec.is_exact else None,
                    "problems": problems,
                }
            )
    return report


def verify_psd_theorem(trials: int = 200, seed: int = 0, max_n: int = 5) -> CampaignReport:
    """Every Hankel matrix of a degenerate moment window must test PSD."""
    rng = SplitMix64(seed)
    report = CampaignReport("psd-theorem", trials, seed, {"maxN": max_n})
    for trial in range(trials):
        n = rng.randint(1, max_n)
        mu = _campaign_measure(rng, n)
        moments = measure_moments(mu, 2 * n + 5)
        window = MomentWindow(moments)
        cls = classify(window)
        problems = []
        if cls != Degenerate(n, True):
            problems.append(f"classification {cls!r} instead of Degenerate({n}, True)")
        bad = [k for k in range(window.horizon + 1) if not is_psd(hankel_matrix(window, k))]
        if bad:
            problems.append(f"H_k not PSD for k in {bad}")
        if problems:
            report.failures.append(
                {
                    "trial": trial,
                    "n": n,
                    "measure": _measure_doc(mu),
                    "moments": [str(s) for s in moments],
                    "problems": problems,
                }
            )
    return report
