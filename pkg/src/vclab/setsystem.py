"""Finite set systems and their exact invariants.

A set system is a base set X = {0..n-1} together with a family of subsets
of X.  Members are stored as integer bit masks: bit i of a member word
encodes whether element i belongs to the member.  After canonicalization
members are pairwise distinct and sorted lexicographically as bit strings
(character i of the string is bit i of the mask).

Provided invariants: traces, the shatter function pi(t), VC dimension,
the Sauer-Shelah binomial bound, independence dimension, breadth, Helly
number, chain/star/costar trace patterns, and the breadth-duality check
for lattices of sets.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .config import resolve_budget
from .errors import (
    BudgetExceededError,
    InconclusiveError,
    PreconditionError,
    RangeError,
    ShapeError,
)


def mask_to_string(mask: int, width: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(width))


def string_to_mask(bits: str) -> int:
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ShapeError(f"bit string may contain only 0/1, got {ch!r}")
    return mask


def mask_from_indices(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_of_mask(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetSystem:
    """An immutable, canonicalized finite set system."""

    ground_size: int
    members: tuple  # tuple of int bit masks, distinct, sorted as bit strings
    had_duplicates: bool = field(default=False, compare=False)

    @classmethod
    def from_masks(cls, ground_size: int, masks) -> "SetSystem":
        if ground_size < 0:
            raise RangeError("ground_size must be >= 0")
        full = (1 << ground_size) - 1
        masks = list(masks)
        for m in masks:
            if m < 0 or m & ~full:
                raise ShapeError(
                    f"member mask {m} does not fit ground size {ground_size}"
                )
        distinct = sorted(set(masks), key=lambda m: mask_to_string(m, ground_size))
        return cls(
            ground_size=ground_size,
            members=tuple(distinct),
            had_duplicates=len(distinct) != len(masks),
        )

    @classmethod
    def from_strings(cls, ground_size: int, strings) -> "SetSystem":
        masks = []
        for s in strings:
            if len(s) != ground_size:
                raise ShapeError(
                    f"member string of length {len(s)}, expected {ground_size}"
                )
            masks.append(string_to_mask(s))
        return cls.from_masks(ground_size, masks)

    @classmethod
    def from_json(cls, data) -> "SetSystem":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_strings(data["ground_size"], data["members"])

    def to_json(self) -> dict:
        return {
            "ground_size": self.ground_size,
            "members": [mask_to_string(m, self.ground_size) for m in self.members],
        }

    def member_sets(self):
        return [frozenset(indices_of_mask(m)) for m in self.members]

    def __len__(self):
        return len(self.members)


def _coerce_subset_mask(system: SetSystem, subset) -> int:
    if isinstance(subset, str):
        if len(subset) != system.ground_size:
            raise ShapeError(
                f"subset width {len(subset)} != ground size {system.ground_size}"
            )
        return string_to_mask(subset)
    mask = int(subset)
    if mask < 0 or mask >> system.ground_size:
        raise ShapeError("subset mask does not fit the ground set")
    return mask


def trace(system: SetSystem, subset) -> SetSystem:
    """The system S cap A = {S cap A : S in S} on the restricted base set A.

    Elements of A are reindexed 0..|A|-1 in increasing original order.
    """
    amask = _coerce_subset_mask(system, subset)
    positions = indices_of_mask(amask)
    width = len(positions)
    compress = {p: j for j, p in enumerate(positions)}
    new_members = []
    for m in system.members:
        cut = m & amask
        nm = 0
        for p in indices_of_mask(cut):
            nm |= 1 << compress[p]
        new_members.append(nm)
    return SetSystem.from_masks(width, new_members)


def trace_count(system: SetSystem, subset_mask: int) -> int:
    """|S cap A| without building the restricted system."""
    return len({m & subset_mask for m in system.members})


class ShatterValue(NamedTuple):
    value: int
    exactness: str  # "exact" or "lower_bound"


def shatter_function(
    system: SetSystem,
    t: int,
    mode: str = "exact",
    budget=None,
    samples: int = 2000,
    seed: int = 0,
) -> ShatterValue:
    """pi_S(t): the maximum of |S cap A| over t-element subsets A.

    Exact mode enumerates all C(n,t) subsets and errors out when that
    exceeds the budget.  Sample mode draws random t-subsets and returns
    the best value found, flagged as a lower bound.
    """
    n = system.ground_size
    if t < 0 or t > n:
        raise RangeError(f"t={t} out of range 0..{n}")
    if not system.members:
        return ShatterValue(0, "exact")
    if t == 0:
        return ShatterValue(1, "exact")
    if mode == "exact":
        budget = resolve_budget(budget)
        if math.comb(n, t) > budget:
            raise BudgetExceededError(
                f"C({n},{t}) exceeds the enumeration budget {budget}",
                lower_bound=None,
            )
        best = 0
        cap = len(system.members)
        for combo in itertools.combinations(range(n), t):
            a = mask_from_indices(combo)
            c = trace_count(system, a)
            if c > best:
                best = c
                if best == cap or best == 1 << t:
                    break
        return ShatterValue(best, "exact")
    if mode == "sample":
        rng = random.Random(seed)
        best = 0
        universe = list(range(n))
        for _ in range(samples):
            a = mask_from_indices(rng.sample(universe, t))
            best = max(best, trace_count(system, a))
        return ShatterValue(best, "lower_bound")
    raise RangeError(f"unknown mode {mode!r}")


def sauer_shelah_bound(n: int, d: int) -> int:
    """C(n,0) + ... + C(n,d), exact."""
    if d < 0 or d > n:
        raise RangeError(f"need 0 <= d <= n, got n={n}, d={d}")
    return sum(math.comb(n, i) for i in range(d + 1))


def _is_shattered(system: SetSystem, amask: int, size: int) -> bool:
    return trace_count(system, amask) == 1 << size


def vc_dimension(system: SetSystem, budget=None) -> int:
    """Largest size of a shattered subset; -1 for the empty family.

    Level search over the downward-closed family of shattered sets:
    a candidate at level k+1 is only examined when all its k-subsets
    were shattered.
    """
    if not system.members:
        return -1
    budget = resolve_budget(budget)
    n = system.ground_size
    work = 0
    level = {(): 0}  # shattered subsets as sorted index tuples -> mask
    d = 0
    while True:
        nxt = {}
        for combo, amask in level.items():
            start = combo[-1] + 1 if combo else 0
            for x in range(start, n):
                cand = combo + (x,)
                # all immediate subsets must have been shattered
                if len(cand) > 1 and any(
                    cand[:i] + cand[i + 1 :] not in level for i in range(len(cand) - 1)
                ):
                    continue
                work += 1
                if work > budget:
                    raise BudgetExceededError(
                        "VC dimension level search exceeded budget",
                        lower_bound=d,
                    )
                cmask = amask | (1 << x)
                if _is_shattered(system, cmask, len(cand)):
                    nxt[cand] = cmask
        if not nxt:
            return d
        level = nxt
        d += 1


def independence_dimension(system: SetSystem, budget=None) -> int:
    """Largest n such that some n members are independent: all 2^n atom
    patterns (intersections of members and complements) are nonempty.

    Independent subfamilies are downward closed, so the same level search
    as for VC dimension applies, over member indices.  IND of the empty
    family is 0.
    """
    m = len(system.members)
    if m == 0:
        return 0
    budget = resolve_budget(budget)
    n = system.ground_size
    # signature of element x: bit j set iff x belongs to member j
    sigs = []
    for x in range(n):
        s = 0
        for j, mem in enumerate(system.members):
            if (mem >> x) & 1:
                s |= 1 << j
        sigs.append(s)
    work = 0

    def independent(member_idx):
        k = len(member_idx)
        seen = set()
        for s in sigs:
            proj = 0
            for pos, j in enumerate(member_idx):
                if (s >> j) & 1:
                    proj |= 1 << pos
            seen.add(proj)
            if len(seen) == 1 << k:
                return True
        return False

    level = [()]
    d = 0
    while True:
        prev = set(level)
        nxt = []
        for combo in level:
            start = combo[-1] + 1 if combo else 0
            for j in range(start, m):
                cand = combo + (j,)
                if len(cand) > 1 and any(
                    cand[:i] + cand[i + 1 :] not in prev for i in range(len(cand) - 1)
                ):
                    continue
                work += 1
                if work > budget:
                    raise BudgetExceededError(
                        "independence level search exceeded budget", lower_bound=d
                    )
                if independent(cand):
                    nxt.append(cand)
        if not nxt:
            return d
        level = nxt
        d += 1


def breadth(system: SetSystem, budget=None) -> Optional[int]:
    """Smallest d > 0 such that every nonempty intersection of more than d
    members equals the intersection of d of them; None for the empty family.

    Computed exactly for all subfamily sizes at once: the answer equals the
    maximum size of an irredundant subfamily with nonempty intersection
    (irredundant: dropping any one member strictly enlarges the
    intersection), and irredundant subfamilies are downward closed, which
    again permits a level search.  A family with no nonempty intersections
    of two or more members has breadth 1.
    """
    members = system.members
    m = len(members)
    if m == 0:
        return None
    budget = resolve_budget(budget)
    full = (1 << system.ground_size) - 1
    work = 0

    def irredundant_nonempty(idx):
        inter = full
        for j in idx:
            inter &= members[j]
        if inter == 0:
            return False
        for drop in range(len(idx)):
            rest = full
            for pos, j in enumerate(idx):
                if pos != drop:
                    rest &= members[j]
            if rest == inter:
                return False
        return True

    level = [(j,) for j in range(m) if members[j] != 0 and members[j] != full]
    best = 1
    while level:
        prev = set(level)
        nxt = []
        for combo in level:
            for j in range(combo[-1] + 1, m):
                cand = combo + (j,)
                if any(
                    cand[:i] + cand[i + 1 :] not in prev for i in range(len(cand) - 1)
                ):
                    continue
                work += 1
                if work > budget:
                    raise BudgetExceededError(
                        "breadth level search exceeded budget", lower_bound=best
                    )
                if irredundant_nonempty(cand):
                    nxt.append(cand)
        if nxt:
            best = max(best, len(nxt[0]))
        level = nxt
    return best


def helly_number(system: SetSystem, cap: int = 20) -> int:
    """Smallest d such that every subfamily whose d-subsets all intersect
    has nonempty total intersection.

    Equals the largest size of a minimal inconsistent subfamily (empty
    total intersection, but every proper subfamily intersects), or 1 when
    every subfamily intersects.
    """
    members = system.members
    m = len(members)
    if m > cap:
        raise BudgetExceededError(
            f"helly_number enumerates subfamilies; {m} members exceeds cap {cap}"
        )
    full = (1 << system.ground_size) - 1
    best = 1
    if any(mem == 0 for mem in members):
        best = 1  # a single empty member is a minimal inconsistent subfamily

    # Depth-first over subfamilies with nonempty intersection; each
    # extension that kills the intersection yields an inconsistent
    # candidate, minimal iff every drop-one still meets the new member.
    def extend(idx, inter):
        nonlocal best
        last = idx[-1] if idx else -1
        for j in range(last + 1, m):
            mj = members[j]
            if mj == 0:
                continue
            newinter = inter & mj
            if newinter == 0:
                size = len(idx) + 1
                if size > best:
                    minimal = True
                    for drop in range(len(idx)):
                        rest = full & mj
                        for pos, i in enumerate(idx):
                            if pos != drop:
                                rest &= members[i]
                        if rest == 0:
                            minimal = False
                            break
                    if minimal:
                        best = size
            else:
                extend(idx + (j,), newinter)

    extend((), full)
    return best


@dataclass(frozen=True)
class TracePattern:
    kind: str  # chain | star | costar
    size: int

    def __post_init__(self):
        if self.kind not in ("chain", "star", "costar"):
            raise RangeError(f"unknown pattern kind {self.kind!r}")
        if self.size < 2:
            raise RangeError("pattern size must be >= 2")


class TraceWitness(NamedTuple):
    base: tuple  # element indices, increasing
    member_indices: tuple  # member realizing each pattern set, in pattern order


def _pattern_sets(pattern: TracePattern, base: tuple):
    """The pattern's sets as masks over the chosen base tuple, in a fixed
    order (chain by size, star/costar by excluded/included element)."""
    k = pattern.size
    amask = mask_from_indices(base)
    if pattern.kind == "chain":
        out = []
        cur = 0
        for x in base:
            cur |= 1 << x
            out.append(cur)
        return out
    if pattern.kind == "star":
        return [1 << x for x in base]
    return [amask & ~(1 << x) for x in base]  # costar


def contains_trace(system: SetSystem, pattern: TracePattern, budget=None):
    """Search for a placement of the pattern inside a trace of the system.

    Returns a TraceWitness when present, None when certifiably absent.
    Chain placements additionally allow any ordering of the base, which is
    equivalent to requiring a nested sequence of traces with sizes 1..k.
    """
    budget = resolve_budget(budget)
    n = system.ground_size
    k = pattern.size
    if k > n:
        return None
    work = 0
    for base in itertools.combinations(range(n), k):
        work += 1
        if work > budget:
            raise InconclusiveError(
                "pattern search exceeded budget before completing"
            )
        amask = mask_from_indices(base)
        traces = {}
        for idx, mem in enumerate(system.members):
            traces.setdefault(mem & amask, idx)
        if pattern.kind == "chain":
            # nested traces of sizes 1..k ending at the full base
            by_size = {}
            for tmask in traces:
                by_size.setdefault(bin(tmask).count("1"), []).append(tmask)
            parents = {t: None for t in by_size.get(1, [])}
            ok = set(parents)
            for size in range(2, k + 1):
                nxt = {}
                for t in by_size.get(size, []):
                    for u in ok:
                        if u & ~t == 0:
                            nxt[t] = u
                            break
                parents.update(nxt)
                ok = set(nxt)
                if not ok:
                    break
            if amask in ok:
                chain = [amask]
                while parents[chain[-1]] is not None:
                    chain.append(parents[chain[-1]])
                chain.reverse()
                return TraceWitness(base, tuple(traces[t] for t in chain))
        else:
            wanted = _pattern_sets(pattern, base)
            if all(w in traces for w in wanted):
                return TraceWitness(base, tuple(traces[w] for w in wanted))
    return None


def check_breadth_duality(system: SetSystem, d: int):
    """Evaluate the two equivalent lattice conditions at level d.

    Precondition (checked): the family is closed under pairwise
    intersection and union, and does not contain the empty set.
    Condition 1: among any d+1 members, one contains the intersection of
    the others.  Condition 2: among any d+1 members, one is contained in
    the union of the others.
    """
    if d < 1:
        raise RangeError("d must be >= 1")
    members = system.members
    mset = set(members)
    if 0 in mset:
        raise PreconditionError("the empty set must not be a member")
    for a, b in itertools.combinations(members, 2):
        if (a & b) not in mset and (a & b) != 0:
            raise PreconditionError(
                f"family not intersection-closed: members {a} and {b}"
            )
        if (a & b) == 0:
            raise PreconditionError(
                f"members {a} and {b} have empty intersection, which the "
                "lattice cannot contain"
            )
        if (a | b) not in mset:
            raise PreconditionError(f"family not union-closed: members {a} and {b}")
    full = (1 << system.ground_size) - 1
    cond1 = True
    cond2 = True
    for combo in itertools.combinations(members, d + 1):
        ok1 = False
        ok2 = False
        for i in range(d + 1):
            inter = full
            union = 0
            for j in range(d + 1):
                if j != i:
                    inter &= combo[j]
                    union |= combo[j]
            if inter & ~combo[i] == 0:
                ok1 = True
            if combo[i] & ~union == 0:
                ok2 = True
            if ok1 and ok2:
                break
        cond1 = cond1 and ok1
        cond2 = cond2 and ok2
    return (cond1, cond2)
