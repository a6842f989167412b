"""Uniform winner interface over the four voting rules."""

from __future__ import annotations

from .dodgson import dodgson_is_winner, dodgson_winners
from .election import Election
from .errors import InvalidInput
from .kemeny import kemeny_is_winner, kemeny_winners
from .young import young_is_winner, young_winners

RULES = ("kemeny", "kemeny_prime", "young", "dodgson")


def check_rule(rule: str) -> str:
    if rule not in RULES:
        raise InvalidInput(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")
    return rule


def winners(e: Election, rule: str) -> tuple[int, ...]:
    check_rule(rule)
    if rule in ("kemeny", "kemeny_prime"):
        return kemeny_winners(e, rule).winners
    if rule == "young":
        return young_winners(e)[0]
    return dodgson_winners(e)[0]


def is_winner(e: Election, rule: str, c: int) -> bool:
    check_rule(rule)
    if rule in ("kemeny", "kemeny_prime"):
        return kemeny_is_winner(e, c, rule)
    if rule == "young":
        return young_is_winner(e, c)
    return dodgson_is_winner(e, c)
