"""Extended argumentation frameworks and their extension semantics.

Frameworks here are Modgil-style: a set of arguments, a directed attack
relation between arguments, and a meta-attack relation from arguments onto
attacks.  Whether an attack succeeds is always judged relative to a set of
arguments: an attack is a *defeat with respect to Y* when no member of Y
meta-attacks it.

Semantics:

* a set is *conflict-free* when every attack inside it is asymmetric and is
  meta-attacked from inside the set;
* an argument is *acceptable* with respect to a set E when every defeat on
  it (relative to E) is answered by an E-sourced defeat that belongs to a
  reinstatement set: a collection of E-sourced defeats in which every
  meta-attacker of a member defeat is itself defeated by a member;
* admissible = conflict-free and self-acceptable; preferred = maximal
  admissible; stable = conflict-free and defeating every outside argument.

The reinstatement search runs as a greatest fixpoint over E-sourced defeats:
closedness is preserved under union, so a closed set containing a given
defeat exists exactly when the greatest closed set contains it.

The brute-force enumerator is exact and intended for desk-scale frameworks;
it refuses to run above a configurable argument cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping

Attack = tuple[str, str]
MetaAttack = tuple[str, Attack]

DEFAULT_BRUTE_FORCE_CAP = 22
CAP_ENV_VAR = "ARGNASH_BRUTE_CAP"

SEMANTICS = ("admissible", "preferred", "stable")


class UnknownArgumentError(ValueError):
    """An argument id is not part of the framework."""


class FrameworkTooLargeError(RuntimeError):
    """The framework exceeds the brute-force enumeration cap."""


def brute_force_cap() -> int:
    """Enumeration cap, overridable through the environment."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_BRUTE_FORCE_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class EAFramework:
    """An argumentation framework with attacks on attacks.

    ``attacks`` are ordered pairs (attacker, target); ``meta_attacks`` are
    pairs (attacker, attack).  Construction checks referential integrity
    only; whether the framework satisfies the coherence condition on
    opposing meta-attacked attacks is a separate query (see the builder
    module) so that deliberately incoherent frameworks can be built and
    inspected in tests.
    """

    arguments: frozenset[str]
    attacks: frozenset[Attack]
    meta_attacks: frozenset[MetaAttack]

    def __post_init__(self) -> None:
        for src, tgt in self.attacks:
            if src not in self.arguments or tgt not in self.arguments:
                raise ValueError(f"attack ({src!r}, {tgt!r}) has an endpoint outside the framework")
        for z, attack in self.meta_attacks:
            if z not in self.arguments:
                raise ValueError(f"meta-attack source {z!r} is not an argument")
            if attack not in self.attacks:
                raise ValueError(f"meta-attack targets unknown attack {attack!r}")
        attackers: dict[str, list[str]] = {a: [] for a in self.arguments}
        for src, tgt in sorted(self.attacks):
            attackers[tgt].append(src)
        meta: dict[Attack, list[str]] = {a: [] for a in self.attacks}
        for z, attack in sorted(self.meta_attacks):
            meta[attack].append(z)
        object.__setattr__(
            self, "_attackers_of", {k: tuple(v) for k, v in attackers.items()}
        )
        object.__setattr__(
            self, "_meta_attackers_of", {k: tuple(v) for k, v in meta.items()}
        )

    def attackers_of(self, target: str) -> tuple[str, ...]:
        return self._attackers_of[target]  # type: ignore[attr-defined]

    def meta_attackers_of(self, attack: Attack) -> tuple[str, ...]:
        return self._meta_attackers_of.get(attack, ())  # type: ignore[attr-defined]

    def require_argument(self, arg: str) -> None:
        if arg not in self.arguments:
            raise UnknownArgumentError(f"unknown argument id {arg!r}")


@dataclass(frozen=True)
class Extension:
    """A set of argument ids satisfying one of the semantics."""

    members: frozenset[str]
    semantics: str

    def __post_init__(self) -> None:
        if self.semantics not in SEMANTICS:
            raise ValueError(f"semantics must be one of {SEMANTICS}")

    def sorted_members(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))

    def sort_key(self) -> tuple[str, ...]:
        return self.sorted_members()


def _as_known_set(framework: EAFramework, args: Iterable[str]) -> frozenset[str]:
    out = frozenset(args)
    for a in out:
        framework.require_argument(a)
    return out


def defeats(
    framework: EAFramework,
    attacker: str,
    target: str,
    relative_to: Iterable[str],
) -> bool:
    """True when ``attacker`` defeats ``target`` with respect to the given set.

    Requires an attack from ``attacker`` to ``target`` that no member of
    ``relative_to`` meta-attacks.
    """
    framework.require_argument(attacker)
    framework.require_argument(target)
    rel = _as_known_set(framework, relative_to)
    if (attacker, target) not in framework.attacks:
        return False
    return not any(z in rel for z in framework.meta_attackers_of((attacker, target)))


def is_conflict_free(framework: EAFramework, members: Iterable[str]) -> bool:
    """True when every attack inside the set is asymmetric and suppressed.

    An internal attack (y, x) is tolerated only when the reverse attack is
    absent and some member meta-attacks (y, x).
    """
    ext = _as_known_set(framework, members)
    for x in ext:
        for y in framework.attackers_of(x):
            if y not in ext:
                continue
            if (x, y) in framework.attacks:
                return False
            if not any(z in ext for z in framework.meta_attackers_of((y, x))):
                return False
    return True


def _active_attacks(framework: EAFramework, ext: frozenset[str]) -> set[Attack]:
    """Attacks that are defeats with respect to ``ext`` (any source)."""
    return {
        attack
        for attack in framework.attacks
        if not any(z in ext for z in framework.meta_attackers_of(attack))
    }


def _greatest_reinstatement(
    framework: EAFramework, ext: frozenset[str], active: set[Attack]
) -> set[Attack]:
    """Greatest closed set of ext-sourced defeats.

    Iteratively removes any defeat one of whose meta-attackers is not itself
    the target of a remaining defeat, until stable.
    """
    current = {(s, t) for (s, t) in active if s in ext}
    while True:
        hit_targets = {t for (_, t) in current}
        survivors = {
            d
            for d in current
            if all(z in hit_targets for z in framework.meta_attackers_of(d))
        }
        if survivors == current:
            return current
        current = survivors


def reinstatement_defeats(
    framework: EAFramework, members: Iterable[str]
) -> frozenset[Attack]:
    """The greatest closed set of defeats sourced in ``members``."""
    ext = _as_known_set(framework, members)
    active = _active_attacks(framework, ext)
    return frozenset(_greatest_reinstatement(framework, ext, active))


def is_acceptable(
    framework: EAFramework, argument: str, members: Iterable[str]
) -> bool:
    """True when every defeat on ``argument`` is answered from ``members``.

    Each defeater must itself be defeated by a member via a defeat belonging
    to the greatest closed reinstatement set.
    """
    framework.require_argument(argument)
    ext = _as_known_set(framework, members)
    active = _active_attacks(framework, ext)
    reinstated = {t for (_, t) in _greatest_reinstatement(framework, ext, active)}
    for y in framework.attackers_of(argument):
        if (y, argument) in active and y not in reinstated:
            return False
    return True


def is_admissible(framework: EAFramework, members: Iterable[str]) -> bool:
    """Conflict-free and every member acceptable with respect to the set."""
    ext = _as_known_set(framework, members)
    if not is_conflict_free(framework, ext):
        return False
    active = _active_attacks(framework, ext)
    reinstated = {t for (_, t) in _greatest_reinstatement(framework, ext, active)}
    for x in ext:
        for y in framework.attackers_of(x):
            if (y, x) in active and y not in reinstated:
                return False
    return True


def is_stable(framework: EAFramework, members: Iterable[str]) -> bool:
    """Conflict-free and defeating (w.r.t. itself) every outside argument."""
    ext = _as_known_set(framework, members)
    if not is_conflict_free(framework, ext):
        return False
    active = _active_attacks(framework, ext)
    for y in framework.arguments - ext:
        if not any(
            x in ext and (x, y) in active for x in framework.attackers_of(y)
        ):
            return False
    return True


def enumerate_extensions_bruteforce(
    framework: EAFramework, semantics: str, cap: int | None = None
) -> tuple[Extension, ...]:
    """Exact extension enumeration by pruned subset search.

    Candidates avoid self-attackers and symmetric attack pairs (never
    tolerable inside a conflict-free set), then each surviving subset is
    checked against the requested semantics.  Output is sorted by the
    tuple of sorted member ids.  Raises :class:`FrameworkTooLargeError`
    above the cap.
    """
    if semantics not in SEMANTICS:
        raise ValueError(f"semantics must be one of {SEMANTICS}, got {semantics!r}")
    limit = brute_force_cap() if cap is None else cap
    n = len(framework.arguments)
    if n > limit:
        raise FrameworkTooLargeError(
            f"framework with {n} arguments is too large for brute force "
            f"(cap {limit})"
        )

    ids = sorted(framework.arguments)
    index = {a: k for k, a in enumerate(ids)}
    attack_pairs = sorted(framework.attacks)
    n_attacks = len(attack_pairs)
    src_ix = [index[s] for s, _ in attack_pairs]
    tgt_ix = [index[t] for _, t in attack_pairs]
    attack_ix_set = {(index[s], index[t]) for s, t in attack_pairs}
    meta_mask = [0] * n_attacks
    meta_args: list[tuple[int, ...]] = [()] * n_attacks
    for k, attack in enumerate(attack_pairs):
        zs = tuple(index[z] for z in framework.meta_attackers_of(attack))
        meta_args[k] = zs
        for z in zs:
            meta_mask[k] |= 1 << z

    self_attackers = 0
    sym = [0] * n
    for s, t in attack_ix_set:
        if s == t:
            self_attackers |= 1 << s
        elif (t, s) in attack_ix_set:
            sym[s] |= 1 << t

    def candidates() -> Iterable[int]:
        # Depth-first include/exclude over argument indices; including an
        # argument forbids its symmetric-conflict partners.
        stack = [(0, 0, 0)]
        while stack:
            i, mask, forbidden = stack.pop()
            if i == n:
                yield mask
                continue
            bit = 1 << i
            stack.append((i + 1, mask, forbidden))
            if not (forbidden & bit) and not (self_attackers & bit):
                stack.append((i + 1, mask | bit, forbidden | sym[i]))

    def conflict_free_mask(mask: int) -> bool:
        # Symmetric pairs already excluded; remaining internal attacks must
        # be meta-attacked from inside.
        for k in range(n_attacks):
            if (mask >> src_ix[k]) & 1 and (mask >> tgt_ix[k]) & 1:
                if not (meta_mask[k] & mask):
                    return False
        return True

    def admissible_mask(mask: int) -> bool:
        # Defeats relative to mask are attacks with no meta-attacker inside.
        active = [k for k in range(n_attacks) if not (meta_mask[k] & mask)]
        rein = [k for k in active if (mask >> src_ix[k]) & 1]
        while True:
            hit = 0
            for k in rein:
                hit |= 1 << tgt_ix[k]
            kept = [
                k
                for k in rein
                if all((hit >> z) & 1 for z in meta_args[k])
            ]
            if len(kept) == len(rein):
                break
            rein = kept
        reinstated = 0
        for k in rein:
            reinstated |= 1 << tgt_ix[k]
        for k in active:
            if (mask >> tgt_ix[k]) & 1 and not ((reinstated >> src_ix[k]) & 1):
                return False
        return True

    def stable_mask(mask: int) -> bool:
        active = [k for k in range(n_attacks) if not (meta_mask[k] & mask)]
        covered = 0
        for k in active:
            if (mask >> src_ix[k]) & 1:
                covered |= 1 << tgt_ix[k]
        outside = ((1 << n) - 1) & ~mask
        return (outside & ~covered) == 0

    hits: list[int] = []
    for mask in candidates():
        if not conflict_free_mask(mask):
            continue
        if semantics == "stable":
            if stable_mask(mask):
                hits.append(mask)
        else:
            if admissible_mask(mask):
                hits.append(mask)

    if semantics == "preferred":
        hits.sort(key=lambda m: bin(m).count("1"), reverse=True)
        maximal: list[int] = []
        for m in hits:
            if not any((m & kept) == m for kept in maximal):
                maximal.append(m)
        hits = maximal

    extensions = [
        Extension(
            members=frozenset(ids[i] for i in range(n) if (m >> i) & 1),
            semantics=semantics,
        )
        for m in hits
    ]
    extensions.sort(key=Extension.sort_key)
    return tuple(extensions)
