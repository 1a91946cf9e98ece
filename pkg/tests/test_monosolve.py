import random

import numpy as np
import pytest

from chevtori.monosolve import (
    ConstraintSystem,
    verify_certificate,
    verify_certificate_export,
)


def _blockless(group, width_signs):
    sys_ = ConstraintSystem(group)
    sys_.add_block("X")
    for exps, sign in width_signs:
        sys_.add_raw({"X": exps}, sign)
    return sys_


def test_square_root_of_minus_one_sat(g7):
    sys_ = _blockless(g7, [([2, 0, 0, 0, 0, 0, 0], -1)])
    res = sys_.solve()
    assert res.satisfiable
    assert sys_.check_witness(res.witness, res.modulus)


def test_contradictory_squares_unsat(g7):
    sys_ = _blockless(
        g7, [([2, 0, 0, 0, 0, 0, 0], 1), ([2, 0, 0, 0, 0, 0, 0], -1)]
    )
    res = sys_.solve()
    assert not res.satisfiable
    assert verify_certificate(sys_, res.certificate)
    assert verify_certificate_export(
        sys_.export(), res.certificate.coefficients
    )


def test_empty_system_sat(g7):
    sys_ = ConstraintSystem(g7)
    sys_.add_block("X")
    assert sys_.solve().satisfiable


def test_certificate_rejects_wrong_vector(g7):
    sys_ = _blockless(
        g7, [([2, 0, 0, 0, 0, 0, 0], 1), ([2, 0, 0, 0, 0, 0, 0], -1)]
    )
    from chevtori.monosolve import Certificate

    assert not verify_certificate(sys_, Certificate((1, 1)))
    assert not verify_certificate(sys_, Certificate((1,)))


def test_power_relation_trivial(g7):
    # (H * 1)^2 = 1 forces squares, which is satisfiable
    sys_ = ConstraintSystem(g7)
    sys_.add_block("H")
    sys_.add_power("H", g7.identity, 2)
    res = sys_.solve()
    assert res.satisfiable


def test_commutator_requires_commuting_images(g7):
    sys_ = ConstraintSystem(g7)
    sys_.add_block("A")
    sys_.add_block("B")
    with pytest.raises(ValueError):
        sys_.add_commutator("A", g7.n_simple(1), "B", g7.n_simple(3))


def test_nonsplit_obstruction_system_unsat_e7(g7):
    n63 = g7.n_of_root(63)
    n49 = g7.n_of_root(49)
    n2n5 = g7.from_word([], [2, 5])
    for isogeny in ("ad", "sc"):
        sys_ = ConstraintSystem(g7, isogeny=isogeny)
        for b in ("H1", "H2", "H3"):
            sys_.add_block(b)
        sys_.add_power("H3", n63, 2)
        sys_.add_commutator("H3", n63, "H1", n2n5)
        sys_.add_commutator("H3", n63, "H2", n49)
        res = sys_.solve()
        assert not res.satisfiable
        assert verify_certificate(sys_, res.certificate)


def test_nonsplit_obstruction_system_unsat_e8(g8):
    n61 = g8.n_of_root(61)
    n97 = g8.n_of_root(97)
    n2n5 = g8.from_word([], [2, 5])
    sys_ = ConstraintSystem(g8)
    for b in ("H1", "H2", "H3"):
        sys_.add_block(b)
    sys_.add_power("H2", n61, 2)
    sys_.add_commutator("H2", n61, "H1", n2n5)
    sys_.add_commutator("H3", n97, "H2", n61)
    res = sys_.solve()
    assert not res.satisfiable
    assert verify_certificate(sys_, res.certificate)


def test_dropping_a_relation_makes_system_sat(g7):
    # without the square relation the commutator system alone is satisfiable
    n63 = g7.n_of_root(63)
    n2n5 = g7.from_word([], [2, 5])
    sys_ = ConstraintSystem(g7, isogeny="ad")
    sys_.add_block("H1")
    sys_.add_block("H3")
    sys_.add_commutator("H3", n63, "H1", n2n5)
    assert sys_.solve().satisfiable


def test_w0_obstruction(g7):
    sys_ = ConstraintSystem(g7, isogeny="sc")
    sys_.add_block("H")
    sys_.add_power("H", g7.central_lift(), 2)
    res = sys_.solve()
    assert not res.satisfiable
    # but in the central quotient a complement preimage exists
    sys2 = ConstraintSystem(g7, isogeny="ad")
    sys2.add_block("H")
    sys2.add_power("H", g7.central_lift(), 2)
    assert sys2.solve().satisfiable


def test_random_instances_sound(g7):
    rng = random.Random(18)
    sat = unsat = 0
    for _ in range(200):
        sys_ = ConstraintSystem(g7)
        sys_.add_block("X")
        sys_.add_block("Y")
        rows = []
        for _ in range(rng.randint(1, 6)):
            rows.append({
                "X": [rng.randint(-2, 2) for _ in range(7)],
                "Y": [rng.randint(-2, 2) for _ in range(7)],
            })
        for row in rows:
            sys_.add_raw(row, rng.choice([1, -1]))
        if rng.random() < 0.5:
            # re-add a sum of two rows with an independent sign, which
            # conflicts half the time
            i, j = rng.randrange(len(rows)), rng.randrange(len(rows))
            combo = {
                b: [x + y for x, y in zip(rows[i][b], rows[j][b])]
                for b in ("X", "Y")
            }
            sys_.add_raw(combo, rng.choice([1, -1]))
        res = sys_.solve()
        if res.satisfiable:
            sat += 1
            assert sys_.check_witness(res.witness, res.modulus)
        else:
            unsat += 1
            assert verify_certificate(sys_, res.certificate)
    assert sat and unsat  # both verdicts exercised


def test_export_round_trip(g7):
    sys_ = _blockless(
        g7, [([2, 0, 0, 0, 0, 0, 0], 1), ([2, 0, 0, 0, 0, 0, 0], -1)]
    )
    res = sys_.solve()
    exported = sys_.export()
    assert exported["rows"][0]["exponents"][0] == 2
    assert verify_certificate_export(exported, res.certificate.coefficients)
    tampered = [c + 1 for c in res.certificate.coefficients]
    assert not verify_certificate_export(exported, tampered)
