import pytest

from multlattice.core import MultNotBounded, check_axioms
from multlattice.ingest import (LatticeSyntaxError, chain, export_dot,
                                export_dot_spectrum, export_text, generate,
                                open_set_lattice, parse, parse_document,
                                poset_space, powerset_lattice, random_lattice,
                                to_json, zn_ideals)
from multlattice.spectrum import spectrum

from conftest import corpus_hundred


MINIMAL = """\
name two
element 0
element 1
cover 0 < 1
mult preset meet
"""

DIAMOND = """\
element bot
element x
element y
element top
cover bot < x
cover bot < y
cover x < top
cover y < top
mult preset meet
"""


def test_parse_minimal_two_chain():
    L = parse(MINIMAL)
    assert L.size == 2 and L.name == "two"
    assert L.mult(1, 1) == 1


def test_parse_diamond_preset_expansion():
    L = parse(DIAMOND)
    assert L.size == 4
    assert L.mult(1, 2) == 0   # x ^ y = bot
    assert L.labels == ("bot", "x", "y", "top")


def test_duplicate_label_location():
    with pytest.raises(LatticeSyntaxError) as exc:
        parse("element a\nelement a\nmult preset meet\n")
    assert exc.value.line == 2
    assert exc.value.column == 9


def test_unknown_label_and_directive():
    with pytest.raises(LatticeSyntaxError):
        parse("element a\ncover a < b\nmult preset meet\n")
    with pytest.raises(LatticeSyntaxError):
        parse("elemant a\n")


def test_partial_mult_table_rejected():
    text = "element a\nelement b\ncover a < b\nmult a a = a\n"
    with pytest.raises(LatticeSyntaxError):
        parse(text)


def test_preset_and_triples_cannot_mix():
    text = "element a\nmult preset meet\nmult a a = a\n"
    with pytest.raises(LatticeSyntaxError):
        parse(text)


def test_corrupted_mult_table_surfaces_boundedness_witness():
    text = ("element 0\nelement 1\ncover 0 < 1\n"
            "mult 0 0 = 0\nmult 0 1 = 1\nmult 1 0 = 0\nmult 1 1 = 1\n")
    with pytest.raises(MultNotBounded) as exc:
        parse(text)
    assert exc.value.witness == (0, 1)


def test_comments_and_blank_lines_ignored():
    text = "# header\n\nname c\nelement a  # trailing\nmult preset zero\n"
    assert parse(text).name == "c"


def test_chain_generators_prime_sets():
    for k in range(2, 7):
        meet = chain(k, "meet")
        assert spectrum(meet).primes == frozenset(range(k - 1))
        zero = chain(k, "zero")
        assert spectrum(zero).primes == frozenset()


def test_truncated_add_values_and_primes():
    L = chain(5, "truncated_add")
    n = L.size
    for i in range(n):
        for j in range(n):
            assert L.mult(i, j) == max(0, i + j - (n - 1))
    # only the coatom stays prime in a truncation: the clipped bottom loses
    # the primality its untruncated counterpart has
    assert spectrum(L).primes == frozenset({n - 2})
    assert L.labels == ("-inf", "-3", "-2", "-1", "0")


def test_zn_ideals_shape():
    L = zn_ideals(12)
    assert L.size == 6
    assert L.labels[L.bottom] == "(12)" and L.labels[L.top] == "(1)"
    ax = check_axioms(L)
    assert ax.commutative and ax.associative and ax.infinitely_m_distributive


def test_powerset_zero_mult_is_hyperabelian_carrier():
    L = powerset_lattice(2, "zero")
    assert spectrum(L).primes == frozenset()


def test_open_set_lattice_is_a_frame():
    sier = open_set_lattice(poset_space("chain", 2), name="sier")
    ax = check_axioms(sier)
    assert ax.infinitely_m_distributive
    assert sier.size == 3
    with pytest.raises(Exception):
        open_set_lattice(
            __import__("multlattice.spectrum", fromlist=["FiniteTopology"])
            .FiniteTopology.from_closed_sets({0, 1}, [frozenset(), frozenset({0, 1})]))


def test_generate_dispatch():
    assert generate("chain", "4", "zero").size == 4
    assert generate("zn", "30").size == 8
    assert generate("bool", "2").size == 4
    assert generate("open_sets", "vee").size > 1
    assert generate("random", "5", "seed=3", "m_distributive").size == 5


def test_random_lattice_deterministic():
    a = random_lattice(6, {"monotone": True}, seed=11)
    b = random_lattice(6, {"monotone": True}, seed=11)
    assert a.lattice == b.lattice
    assert (a.order_attempts, a.table_attempts) == (b.order_attempts, b.table_attempts)
    assert check_axioms(a.lattice).monotone


def test_roundtrip_on_hundred_lattices():
    for L in corpus_hundred():
        assert parse(export_text(L)) == L, L.name


def test_roundtrip_explicit_triples():
    # a table that is neither meet nor zero forces triple emission
    L = chain(3, "truncated_add")
    text = export_text(L)
    assert "mult -1 -1 = -inf" in text
    assert parse(text) == L


def test_json_deterministic_and_versioned():
    a = to_json(spectrum(zn_ideals(12)))
    b = to_json(spectrum(zn_ideals(12)))
    assert a == b
    assert '"schema_version": 1' in a


def test_dot_exports():
    L = chain(2, "meet")
    dot = export_dot(L)
    assert dot.count("->") == 1
    sdot = export_dot_spectrum(zn_ideals(12))
    assert 'label="(2)"' in sdot and 'label="(3)"' in sdot
    assert "->" not in sdot   # two incomparable primes: no specialization


def test_document_fields_round_trip():
    doc = parse_document(MINIMAL)
    assert doc.name == "two"
    assert doc.mult_preset == "meet"
    assert doc.covers == (("0", "1"),)
