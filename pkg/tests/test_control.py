import itertools
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from votecontrol.control import (KINDS, ControlInstance, count_actions, format_control,
                                 parse_control, solve_control, sub_multisets,
                                 verify_witness)
from votecontrol.election import Election, Vote, restrict_election
from votecontrol.errors import InvalidInput, ResourceLimit
from votecontrol.generate import random_control_instance, random_election
from votecontrol.rules import RULES, is_winner


def oracle_winners(e, rule):
    if rule in ("kemeny", "kemeny_prime"):
        return oracles.kemeny(e)[1]
    if rule == "young":
        s = {c: oracles.young(e, c) for c in e.candidates}
        return tuple(c for c in s if s[c] == max(s.values()))
    s = {c: oracles.dodgson(e, c) for c in e.candidates}
    finite = [v for v in s.values() if v is not None]
    if not finite:
        return tuple(e.candidates)
    return tuple(c for c in s if s[c] == min(finite))


def oracle_control(inst):
    """Expand every action element to unit copies and try all subsets."""
    e = inst.election
    if inst.kind == "ccdv":
        items = [i for i, v in enumerate(e.votes) for _ in range(v.count)]
    elif inst.kind == "ccav":
        items = [i for i, v in enumerate(inst.addable_votes) for _ in range(v.count)]
    else:
        items = inst.action_set()
    m = e.num_candidates
    for size in range(min(inst.limit, len(items)) + 1):
        for sub in itertools.combinations(items, size):
            if inst.kind in ("ccac", "ccdc", "ccdc_star"):
                if inst.kind == "ccac":
                    kept = [c for c in range(m) if c not in inst.unregistered or c in sub]
                else:
                    kept = [c for c in range(m) if c not in sub]
                idx = {c: i for i, c in enumerate(kept)}
                votes = tuple(Vote(v.count, tuple(idx[c] for c in v.order if c in idx), v.partial)
                              for v in e.votes)
                e2, p2 = Election(len(kept), votes), idx[inst.preferred]
            elif inst.kind == "ccdv":
                counts = [v.count for v in e.votes]
                for i in sub:
                    counts[i] -= 1
                e2 = Election(m, tuple(Vote(k, v.order, v.partial)
                                       for k, v in zip(counts, e.votes) if k))
                p2 = inst.preferred
            else:
                add = tuple(Vote(1, inst.addable_votes[i].order, inst.addable_votes[i].partial)
                            for i in sub)
                e2, p2 = Election(m, e.votes + add), inst.preferred
            if p2 in oracle_winners(e2, inst.rule):
                return True
    return False


def random_instance(rng):
    rule = rng.choice(RULES)
    kind = rng.choice(KINDS)
    m = rng.randint(2, 4) if rule != "dodgson" else rng.randint(2, 3)
    return random_control_instance(rng, rule, kind, m=m, voters=rng.randint(1, 4))


def test_solver_matches_exhaustive_oracle():
    rng = random.Random(7)
    yes = 0
    for _ in range(150):
        inst = random_instance(rng)
        out = solve_control(inst)
        assert out.decision == oracle_control(inst), format_control(inst)
        if out.decision:
            yes += 1
            assert verify_witness(inst, out.witness)
    assert 20 < yes < 140


def test_k0_means_already_winning():
    rng = random.Random(1)
    for _ in range(40):
        inst = random_control_instance(rng, rng.choice(RULES[:3]), rng.choice(KINDS), limit=0)
        e, p = inst.apply(())
        assert solve_control(inst).decision == is_winner(e, inst.rule, p)


def test_empty_deletable_set_equals_k0():
    e = Election(3, (Vote(2, (1, 0, 2)), Vote(1, (0, 2, 1))))
    a = ControlInstance("kemeny", "ccdc_star", e, 0, 2, deletable=frozenset())
    b = ControlInstance("kemeny", "ccdc", e, 0, 0)
    assert solve_control(a).decision == solve_control(b).decision


def test_monotone_in_limit():
    rng = random.Random(21)
    for _ in range(40):
        inst = random_instance(rng)
        seen_yes = False
        for k in range(3):
            dec = solve_control(replace(inst, limit=k)).decision
            assert not (seen_yes and not dec)
            seen_yes = seen_yes or dec


def test_witness_is_size_then_lex_first():
    e = Election(4, (Vote(3, (1, 2, 0, 3)), Vote(2, (0, 3, 1, 2))))
    inst = ControlInstance("kemeny", "ccdc", e, 0, 2)
    out = solve_control(inst)
    found = None
    for size in range(3):
        for sub in itertools.combinations([1, 2, 3], size):
            if verify_witness(inst, sub):
                found = sub
                break
        if found is not None:
            break
    assert out.witness == found


def test_ccav_kemeny_prime_keeps_candidates():
    e = Election(3, (Vote(1, (0, 1), True),))
    inst = ControlInstance("kemeny_prime", "ccav", e, 2, 1, addable_votes=(Vote(1, (2, 0), True),))
    e2, _ = inst.apply((0,))
    assert e2.num_candidates == 3
    assert solve_control(inst).decision == (2 in oracles.kemeny(e2)[1])


def test_sub_multisets_and_counts():
    got = list(sub_multisets([2, 1], 2))
    assert got == [(0, 0), (0, 1)]
    for mults in ([1, 1, 1], [2, 0, 3], [3]):
        total = sum(len(list(sub_multisets(list(mults), s))) for s in range(4))
        assert total == count_actions(mults, 3)


def test_enumeration_limit():
    e = Election(2, (Vote(1, (0, 1)),))
    inst = ControlInstance("kemeny", "ccav", e, 1, 5, addable_votes=(Vote(9, (1, 0)),) * 1)
    with pytest.raises(ResourceLimit):
        solve_control(inst, enum_limit=2)


def test_instance_validation():
    e = Election(3, (Vote(1, (0, 1, 2)),))
    with pytest.raises(InvalidInput):
        ControlInstance("kemeny", "ccac", e, 0, 1, unregistered=frozenset({0}))
    with pytest.raises(InvalidInput):
        ControlInstance("kemeny", "ccdc_star", e, 0, 1)
    with pytest.raises(InvalidInput):
        ControlInstance("borda", "ccdc", e, 0, 1)
    with pytest.raises(InvalidInput):
        ControlInstance("kemeny", "ccdv", e, 0, -1)


def test_control_text_round_trip():
    rng = random.Random(3)
    for _ in range(40):
        inst = random_instance(rng)
        assert parse_control(format_control(inst)) == inst


# --- restriction ---------------------------------------------------------------------

def test_restrict_identity_and_projection():
    e = Election(3, (Vote(1, (0, 1, 2)),))
    assert restrict_election(e, range(3)) == e
    assert restrict_election(e, {0, 2}).votes[0].order == (0, 1)
    with pytest.raises(InvalidInput):
        restrict_election(e, ())


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10 ** 6), st.data())
def test_restrict_preserves_pair_orders(m, seed, data):
    e = random_election(random.Random(seed), m, 4)
    kept = sorted(data.draw(st.sets(st.integers(0, m - 1), min_size=1)))
    r = restrict_election(e, kept)
    for v, w in zip(e.votes, r.votes):
        assert w.count == v.count
        for i, j in itertools.combinations(range(len(kept)), 2):
            assert oracles.prefers(w.order, i, j) == oracles.prefers(v.order, kept[i], kept[j])
