"""Chaos certificates for the shift dynamics on unstable sets.

An unstable set collects all sequences sharing one fixed past (positions
<= 0) with arbitrary futures.  On each such set the shift exhibits the
three Devaney ingredients, recurrent (Poisson-stable style) motion, and
scrambled pairs.  Every certificate constructed here is a plain data
record: it stores the witnesses (as sequence payloads), the shift counts,
the distances with their certified errors, and the tolerances used, and
`verify_certificate` re-derives every numeric claim from the witnesses
alone.

Witness constructions:

* transitivity: the member whose future is the universal enumeration
  visits any target cylinder after a closed-form number of shifts;
* dense periodic points: repeating the window s(-k)..s(k) of any point s
  yields a periodic point within any requested delta;
* sensitivity: agreeing with s through position k and flipping every later
  symbol stays eps-close but diverges to the separation constant after k
  shifts;
* recurrence: the universal member returns to shrinking windows around
  itself at strictly increasing times;
* scrambled pairs: futures interleaving dyadic agreement/disagreement
  blocks come arbitrarily close and separate beyond eps0, infinitely often
  at finite horizon.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .cylinders import CylinderSet, two_sided_cylinder
from .metric import (
    MetricParams,
    distance,
    space_diameter,
    weight,
    weight_above,
    weight_below,
)
from .sequences import (
    Alphabet,
    BiSequence,
    FiniteWord,
    FlippedSeq,
    PeriodicSeq,
    SplicedSeq,
    UniversalSeq,
    WindowPaddedSeq,
    enumeration_position,
    enumeration_prefix,
    sequence_from_payload,
    sequence_to_payload,
)

_SCAN_CAP = 1 << 21
_AGREEMENT_DEPTH = 64  # finite-depth check for shared-past / shared-future claims


@dataclass(frozen=True)
class UnstableSetId:
    """The unstable set of a point: all sequences sharing its entire past.

    The past carrier must be a periodic or window-padded sequence; only its
    symbols at positions <= 0 matter.
    """

    alphabet: Alphabet
    past: BiSequence

    def __post_init__(self) -> None:
        if isinstance(self.past, PeriodicSeq):
            symbols = self.past.block.symbols
        elif isinstance(self.past, WindowPaddedSeq):
            symbols = self.past.window_word.symbols + (self.past.pad,)
        else:
            raise TypeError("unstable-set past must be periodic or window-padded")
        if any(s > self.alphabet.m for s in symbols):
            raise ValueError("past carrier uses symbols outside the alphabet")


def member_with_future(u_set: UnstableSetId, future: BiSequence) -> SplicedSeq:
    return SplicedSeq(u_set.past, future, 0)


def universal_member(u_set: UnstableSetId, seed: int = 0) -> SplicedSeq:
    """The member of the unstable set whose future is the universal
    enumeration; its orbit is dense."""
    return member_with_future(u_set, UniversalSeq(u_set.alphabet.m, seed))


@dataclass(frozen=True)
class Certificate:
    """A self-contained, re-verifiable record of one chaos check."""

    kind: str
    data: dict


@dataclass(frozen=True)
class VerificationResult:
    kind: str
    ok: bool
    failures: tuple[str, ...]


# ---------------------------------------------------------------------------
# Witness constructions
# ---------------------------------------------------------------------------


def transitivity_witness(
    u_set: UnstableSetId, target: CylinderSet, seed: int = 0
) -> Certificate:
    """Shift count carrying the universal member of the set into `target`."""
    if not (target.is_whole or target.is_two_sided):
        raise ValueError("transitivity targets are two-sided cylinders (or the whole space)")
    member = universal_member(u_set, seed)
    if target.is_whole:
        shift_count = 0
    else:
        pos = enumeration_position(u_set.alphabet.m, seed, target.fixed)
        shift_count = pos - target.start  # window start -k lands on the occurrence
    observed = member.shift(shift_count).window(target.start, target.end)
    if observed != target.fixed.symbols:
        raise AssertionError("universal member missed the target window")
    return Certificate(
        "transitivity",
        {
            "m": u_set.alphabet.m,
            "unstable_past": sequence_to_payload(u_set.past),
            "universal_seed": seed,
            "target_word": list(target.fixed),
            "target_start": target.start,
            "shift_count": shift_count,
        },
    )


def periodic_density_witness(
    s: BiSequence, delta: float, p: MetricParams, tol: float = 1e-12
) -> Certificate:
    """A periodic point within `delta` of s: repeat the window s(-k)..s(k)
    with k chosen so the off-window weight drops below delta."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    degenerate = delta > space_diameter(p)
    k = 0
    while weight_below(-k - 1, p.r) + weight_above(k + 1, p.r) >= delta:
        k += 1
    block = s.window(-k, k)
    witness = PeriodicSeq(FiniteWord(block), phase=-k)
    d = distance(s, witness, p, tol)
    if not d.value + d.error < delta:
        raise AssertionError("periodic witness missed its delta bound")
    return Certificate(
        "periodic_density",
        {
            "r": p.r,
            "sequence": sequence_to_payload(s),
            "delta": delta,
            "k": k,
            "witness": sequence_to_payload(witness),
            "distance_value": d.value,
            "distance_error": d.error,
            "tolerance": tol,
            "degenerate": degenerate,
        },
    )


def sensitivity_witness(
    s: BiSequence, eps: float, alphabet: Alphabet, p: MetricParams, tol: float = 1e-12
) -> Certificate:
    """A point within eps of s (agreeing through position k) whose orbit is
    eps0-far after k shifts, with every symbol beyond k flipped."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    k = 0
    while weight_above(k + 1, p.r) >= eps:
        k += 1
    partner = SplicedSeq(s.shift(k), FlippedSeq(s.shift(k), alphabet.m), 0).shift(-k)
    eps0 = weight(1, p.r)
    d_close = distance(s, partner, p, tol)
    d_far = distance(s.shift(k), partner.shift(k), p, tol)
    if not d_close.value + d_close.error < eps:
        raise AssertionError("sensitivity partner not eps-close")
    if not d_far.value - d_far.error >= eps0:
        raise AssertionError("sensitivity divergence below the separation constant")
    return Certificate(
        "sensitivity",
        {
            "m": alphabet.m,
            "r": p.r,
            "sequence": sequence_to_payload(s),
            "eps": eps,
            "eps0": eps0,
            "k": k,
            "partner": sequence_to_payload(partner),
            "close_value": d_close.value,
            "close_error": d_close.error,
            "far_value": d_far.value,
            "far_error": d_far.error,
            "tolerance": tol,
            "degenerate": eps >= space_diameter(p),
        },
    )


def _window_threshold(j: int, p: MetricParams) -> float:
    """Free weight outside [-j, j]: the recurrence threshold at depth j."""
    return weight_below(-j - 1, p.r) + weight_above(j + 1, p.r)


def poisson_recurrence_witness(
    u_set: UnstableSetId,
    depths: int,
    p: MetricParams | None = None,
    seed: int = 0,
    tol: float = 1e-12,
    scan_cap: int = _SCAN_CAP,
) -> Certificate:
    """Return times of the universal member to shrinking windows around
    itself: numerical recurrence evidence, never a proof.

    For each depth j the orbit must re-enter the window [-j, j] around the
    starting point: the enumeration future revisits the word u(-j)..u(j) at
    some position q >= 1, giving the return time n = q + j.  Occurrences are
    scanned in a materialized prefix first (earliest hit wins); beyond the
    prefix the exact entry position of the extended word u(-j)..u(j+1) is
    used, whose agreement margin makes the threshold check unconditional.
    """
    p = p or MetricParams()
    if depths < 1:
        raise ValueError("depths must be >= 1")
    u = universal_member(u_set, seed)
    m = u_set.alphabet.m
    prefix = enumeration_prefix(m, seed, scan_cap)
    times: list[int] = []
    thresholds: list[float] = []
    values: list[float] = []
    errors: list[float] = []
    prev_q = 0
    for j in range(1, depths + 1):
        word = bytes(u.window(-j, j))
        threshold = _window_threshold(j, p)
        search_from = max(prev_q, 1)
        q = None
        i = prefix.find(word, search_from)
        while i != -1:
            d = distance(u.shift(i + j), u, p, tol)
            if d.value + d.error < threshold:
                q = i
                break
            i = prefix.find(word, i + 1)
        if q is None:
            extended = u.window(-j, j + 1)
            q = enumeration_position(m, seed, extended)
            if q < search_from:
                raise AssertionError("return-time search lost monotonicity")
            d = distance(u.shift(q + j), u, p, tol)
            if not d.value + d.error < threshold:
                raise AssertionError("recurrence distance exceeded its threshold")
        times.append(q + j)
        thresholds.append(threshold)
        values.append(d.value)
        errors.append(d.error)
        prev_q = q
    return Certificate(
        "poisson_recurrence",
        {
            "m": m,
            "r": p.r,
            "unstable_past": sequence_to_payload(u_set.past),
            "universal_seed": seed,
            "depths": depths,
            "times": times,
            "thresholds": thresholds,
            "distance_values": values,
            "distance_errors": errors,
            "tolerance": tol,
        },
    )


def li_yorke_pair(
    u_set: UnstableSetId, horizon: int, p: MetricParams, tol: float = 1e-12
) -> Certificate:
    """A scrambled pair in the unstable set, certified at finite horizon.

    Both members share the set's past; one future is constant 1, the other
    agrees on blocks of length 2**j and disagrees on blocks of length 2**j,
    alternating.  In the middle of the deepest agreement block inside the
    horizon the orbits come within r**(2**(J-1) - 2); at every disagreement
    boundary they separate by at least eps0 = r.
    """
    if horizon < 10:
        raise ValueError("horizon must be >= 10")
    need = horizon + 80
    pattern = bytearray()
    j = 0
    while len(pattern) < need:
        pattern.extend(b"\x01" * (1 << j))
        pattern.extend(b"\x02" * (1 << j))
        j += 1
    s = member_with_future(u_set, WindowPaddedSeq(FiniteWord(()), 1, 1))
    t = member_with_future(
        u_set, WindowPaddedSeq(FiniteWord(tuple(pattern[:need])), 1, 1)
    )
    # deepest agreement block [2**(J+1) - 1, 3*2**J - 2] inside the horizon
    big_j = 0
    while 3 * (1 << (big_j + 1)) - 2 <= horizon:
        big_j += 1
    min_bound = p.r ** max((1 << (big_j - 1)) - 2, 0) if big_j >= 1 else 1.0
    eps0 = weight(1, p.r)
    min_value = min_error = math.inf
    max_value = max_error = -math.inf
    min_time = max_time = 0
    for n in range(1, horizon + 1):
        d = distance(s.shift(n), t.shift(n), p, tol)
        if d.value < min_value:
            min_value, min_error, min_time = d.value, d.error, n
        if d.value > max_value:
            max_value, max_error, max_time = d.value, d.error, n
    if not min_value + min_error < min_bound:
        raise AssertionError("scrambled pair never got close enough")
    if not max_value - max_error >= eps0:
        raise AssertionError("scrambled pair never separated")
    return Certificate(
        "li_yorke",
        {
            "m": u_set.alphabet.m,
            "r": p.r,
            "unstable_past": sequence_to_payload(u_set.past),
            "s": sequence_to_payload(s),
            "t": sequence_to_payload(t),
            "horizon": horizon,
            "min_time": min_time,
            "min_value": min_value,
            "min_error": min_error,
            "min_bound": min_bound,
            "max_time": max_time,
            "max_value": max_value,
            "max_error": max_error,
            "eps0": eps0,
            "tolerance": tol,
        },
    )


def _require_agreement(s: BiSequence, t: BiSequence, lo: int, hi: int, side: str) -> None:
    if s.window(lo, hi) != t.window(lo, hi):
        raise ValueError(f"sequences do not share a {side} (checked positions {lo}..{hi})")


def stable_set_convergence(
    s: BiSequence, t: BiSequence, n_max: int, p: MetricParams, tol: float = 1e-12
) -> Certificate:
    """Orbits of two points sharing a future converge under forward shifts:
    after n shifts every mismatch has weight at most r**(n+1)/(1-r)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    _require_agreement(s, t, 1, n_max + _AGREEMENT_DEPTH, "stable set")
    rows = []
    for n in range(n_max + 1):
        d = distance(s.shift(n), t.shift(n), p, tol)
        bound = weight_below(-n, p.r)
        if not d.value <= bound + d.error:
            raise AssertionError("stable-set distance exceeded its tail bound")
        rows.append({"n": n, "value": d.value, "error": d.error, "bound": bound})
    final = rows[-1]
    if not final["value"] < p.r ** (n_max - 1):
        raise AssertionError("stable-set distance failed its terminal bound")
    return Certificate(
        "stable_convergence",
        {
            "r": p.r,
            "s": sequence_to_payload(s),
            "t": sequence_to_payload(t),
            "n_max": n_max,
            "rows": rows,
            "tolerance": tol,
        },
    )


def unstable_set_convergence(
    s: BiSequence, t: BiSequence, n_max: int, p: MetricParams, tol: float = 1e-12
) -> Certificate:
    """Mirror of stable_set_convergence under backward shifts for two points
    sharing a past."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    _require_agreement(s, t, -n_max - _AGREEMENT_DEPTH, 0, "past")
    rows = []
    for n in range(n_max + 1):
        d = distance(s.shift(-n), t.shift(-n), p, tol)
        bound = weight_above(n + 1, p.r)
        if not d.value <= bound + d.error:
            raise AssertionError("unstable-set distance exceeded its tail bound")
        rows.append({"n": n, "value": d.value, "error": d.error, "bound": bound})
    final = rows[-1]
    if not final["value"] < p.r ** (n_max - 1):
        raise AssertionError("unstable-set distance failed its terminal bound")
    return Certificate(
        "unstable_convergence",
        {
            "r": p.r,
            "s": sequence_to_payload(s),
            "t": sequence_to_payload(t),
            "n_max": n_max,
            "rows": rows,
            "tolerance": tol,
        },
    )


# ---------------------------------------------------------------------------
# Randomized suite helpers (seeded, reproducible)
# ---------------------------------------------------------------------------


def random_unstable_set(rng: random.Random, alphabet: Alphabet) -> UnstableSetId:
    if rng.random() < 0.5:
        block = tuple(rng.randint(1, alphabet.m) for _ in range(rng.randint(1, 4)))
        past: BiSequence = PeriodicSeq(FiniteWord(block), phase=rng.randint(-2, 2))
    else:
        length = rng.randint(0, 4)
        word = tuple(rng.randint(1, alphabet.m) for _ in range(length))
        start = -length + 1 - rng.randint(0, 2) if length else 0
        past = WindowPaddedSeq(FiniteWord(word), start, rng.randint(1, alphabet.m))
    return UnstableSetId(alphabet, past)


def random_two_sided_target(
    rng: random.Random, alphabet: Alphabet, max_k: int, max_n: int
) -> CylinderSet:
    k = rng.randint(0, max_k)
    n = rng.randint(1, max_n)
    word = tuple(rng.randint(1, alphabet.m) for _ in range(k + 1 + n))
    return two_sided_cylinder(word, -k)


# ---------------------------------------------------------------------------
# Verification: re-derive every claim from stored witnesses
# ---------------------------------------------------------------------------

_VALUE_SLACK = 1e-12  # recomputation is deterministic; slack is defensive only


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= _VALUE_SLACK


def _verify_transitivity(d: dict, failures: list[str]) -> None:
    alphabet = Alphabet(d["m"])
    u_set = UnstableSetId(alphabet, sequence_from_payload(d["unstable_past"]))
    member = universal_member(u_set, d["universal_seed"])
    word = tuple(d["target_word"])
    start = d["target_start"]
    shifted = member.shift(d["shift_count"])
    if shifted.window(start, start + len(word) - 1) != word:
        failures.append("shifted member does not carry the target word")
    if word and d["shift_count"] < 0:
        failures.append("shift count is not forward")


def _verify_periodic_density(d: dict, failures: list[str]) -> None:
    p = MetricParams(d["r"])
    s = sequence_from_payload(d["sequence"])
    witness = sequence_from_payload(d["witness"])
    if not isinstance(witness, PeriodicSeq):
        failures.append("witness is not periodic")
        return
    k = d["k"]
    if witness.period != 2 * k + 1:
        failures.append("witness period does not match its window")
    if witness.window(-k, k) != s.window(-k, k):
        failures.append("witness window does not replicate the sequence")
    dist = distance(s, witness, p, d["tolerance"])
    if not _close(dist.value, d["distance_value"]):
        failures.append("stored distance does not recompute")
    if not dist.value + dist.error < d["delta"]:
        failures.append("distance does not beat delta")


def _verify_sensitivity(d: dict, failures: list[str]) -> None:
    p = MetricParams(d["r"])
    s = sequence_from_payload(d["sequence"])
    partner = sequence_from_payload(d["partner"])
    k = d["k"]
    lo = -_AGREEMENT_DEPTH
    if s.window(lo, k) != partner.window(lo, k):
        failures.append("partner does not agree with the sequence through position k")
    hi = k + _AGREEMENT_DEPTH
    if any(a == b for a, b in zip(s.window(k + 1, hi), partner.window(k + 1, hi))):
        failures.append("partner fails to differ beyond position k")
    d_close = distance(s, partner, p, d["tolerance"])
    d_far = distance(s.shift(k), partner.shift(k), p, d["tolerance"])
    if not _close(d_close.value, d["close_value"]):
        failures.append("stored close distance does not recompute")
    if not _close(d_far.value, d["far_value"]):
        failures.append("stored divergence distance does not recompute")
    if not d_close.value + d_close.error < d["eps"]:
        failures.append("partner is not eps-close")
    if not d_far.value - d_far.error >= d["eps0"]:
        failures.append("divergence below eps0")


def _verify_poisson(d: dict, failures: list[str]) -> None:
    p = MetricParams(d["r"])
    alphabet = Alphabet(d["m"])
    u_set = UnstableSetId(alphabet, sequence_from_payload(d["unstable_past"]))
    u = universal_member(u_set, d["universal_seed"])
    times, thresholds = d["times"], d["thresholds"]
    if sorted(set(times)) != times:
        failures.append("return times are not strictly increasing")
    if any(a <= b for a, b in zip(thresholds, thresholds[1:])):
        failures.append("thresholds are not strictly decreasing")
    for j, (n, thr, val) in enumerate(zip(times, thresholds, d["distance_values"]), 1):
        dist = distance(u.shift(n), u, p, d["tolerance"])
        if not _close(dist.value, val):
            failures.append(f"distance at depth {j} does not recompute")
        if not dist.value + dist.error < thr:
            failures.append(f"distance at depth {j} misses its threshold")
        if not _close(thr, _window_threshold(j, p)):
            failures.append(f"threshold at depth {j} is not the window tail weight")


def _verify_li_yorke(d: dict, failures: list[str]) -> None:
    p = MetricParams(d["r"])
    s = sequence_from_payload(d["s"])
    t = sequence_from_payload(d["t"])
    if s == t:
        failures.append("degenerate pair: the two sequences are identical")
        return
    d_min = distance(s.shift(d["min_time"]), t.shift(d["min_time"]), p, d["tolerance"])
    d_max = distance(s.shift(d["max_time"]), t.shift(d["max_time"]), p, d["tolerance"])
    if not _close(d_min.value, d["min_value"]):
        failures.append("stored proximal distance does not recompute")
    if not _close(d_max.value, d["max_value"]):
        failures.append("stored distal distance does not recompute")
    if not d_min.value + d_min.error < d["min_bound"]:
        failures.append("proximal distance misses its bound")
    if not d_max.value - d_max.error >= d["eps0"]:
        failures.append("distal distance below eps0")
    if not (1 <= d["min_time"] <= d["horizon"] and 1 <= d["max_time"] <= d["horizon"]):
        failures.append("witness times outside the horizon")


def _verify_convergence(d: dict, failures: list[str], forward: bool) -> None:
    p = MetricParams(d["r"])
    s = sequence_from_payload(d["s"])
    t = sequence_from_payload(d["t"])
    sign = 1 if forward else -1
    prev = math.inf
    for row in d["rows"]:
        n = row["n"]
        dist = distance(s.shift(sign * n), t.shift(sign * n), p, d["tolerance"])
        if not _close(dist.value, row["value"]):
            failures.append(f"distance at n={n} does not recompute")
        if not dist.value <= row["bound"] + dist.error:
            failures.append(f"distance at n={n} exceeds its bound")
        if row["bound"] > prev:
            failures.append("bounds are not monotone")
        prev = row["bound"]
    final = d["rows"][-1]
    if not final["value"] < p.r ** (d["n_max"] - 1):
        failures.append("terminal distance misses its bound")


_VERIFIERS = {
    "transitivity": _verify_transitivity,
    "periodic_density": _verify_periodic_density,
    "sensitivity": _verify_sensitivity,
    "poisson_recurrence": _verify_poisson,
    "li_yorke": _verify_li_yorke,
    "stable_convergence": lambda d, f: _verify_convergence(d, f, True),
    "unstable_convergence": lambda d, f: _verify_convergence(d, f, False),
}


def verify_certificate(payload: dict) -> VerificationResult:
    """Recompute every numeric claim of a certificate from its witnesses."""
    kind = payload.get("kind")
    data = payload.get("data", payload)
    verifier = _VERIFIERS.get(kind)
    if verifier is None:
        return VerificationResult(str(kind), False, (f"unknown certificate kind {kind!r}",))
    failures: list[str] = []
    try:
        verifier(data, failures)
    except (KeyError, ValueError, TypeError) as exc:
        failures.append(f"malformed certificate: {exc}")
    return VerificationResult(kind, not failures, tuple(failures))
