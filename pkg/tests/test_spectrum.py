import pytest

from multlattice.core import (MDistributivityRequired, NotMaximal, PrimeElement,
                              check_axioms, validate)
from multlattice.ingest import zn_ideals
from multlattice.spectrum import (FiniteTopology, classify, classify_all,
                                  hyperabelian_report, maximal_prime_criterion,
                                  non_prime_symmetric_witness, sober_check,
                                  spectrum, v_set)

from conftest import mk_chain


def brute_prime(L, x):
    """Definitional oracle, written without the down-mask shortcuts."""
    if x == L.top:
        return False
    return all(not L.leq(L.mult(a, b), x) or L.leq(a, x) or L.leq(b, x)
               for a in L.elements for b in L.elements)


def test_chain_meet_every_proper_element_prime():
    L = mk_chain(3, min)
    assert classify(L, 1).prime
    assert sorted(spectrum(L).primes) == [0, 1]


def test_chain_zero_has_no_primes_or_semiprimes_below_top():
    L = mk_chain(3, lambda x, y: 0)
    flags = classify(L, 1)
    assert not flags.prime and not flags.semiprime
    assert not classify(L, 0).semiprime       # a*a = 0 <= 0 but a !<= 0
    assert spectrum(L).primes == frozenset()
    assert spectrum(L).semiprime_radical == L.top


def test_zn12_primes_against_definitional_oracle():
    L = zn_ideals(12)
    expected = {x for x in L.elements if brute_prime(L, x)}
    rep = spectrum(L)
    assert rep.primes == expected
    assert sorted(L.labels[p] for p in rep.primes) == ["(2)", "(3)"]


def test_classification_matches_oracle_everywhere(small_exhaustive_corpus):
    for L in small_exhaustive_corpus:
        flags = classify_all(L)
        for x in L.elements:
            assert flags[x].prime == brute_prime(L, x), (L.name, x)


def test_specialization_order_of_sierpinski_spectrum():
    L = mk_chain(3, min)
    rep = spectrum(L)
    assert rep.zariski.point_closure(0) == frozenset({0, 1})
    assert rep.zariski.point_closure(1) == frozenset({1})


def test_closed_set_identities(named_corpus):
    for L in named_corpus:
        rep = spectrum(L)
        for x in L.elements:
            for y in L.elements:
                assert v_set(L, L.mult(x, y), rep.primes) == \
                    v_set(L, x, rep.primes) | v_set(L, y, rep.primes)
                assert v_set(L, L.join(x, y), rep.primes) == \
                    v_set(L, x, rep.primes) & v_set(L, y, rep.primes)


def test_generator_shortcut_agrees_or_is_skipped(small_exhaustive_corpus):
    for L in small_exhaustive_corpus:
        rep = spectrum(L)
        if check_axioms(L).monotone:
            assert rep.primes_via_generators == rep.primes
        else:
            assert rep.primes_via_generators is None
            assert any("skipped" in n for n in rep.notes)


def test_jacobson_radical_both_conventions():
    L = mk_chain(3, min)
    rep = spectrum(L)
    assert rep.jacobson_radical == 1   # join of maximal primes, as defined
    assert rep.jacobson_meet == 1
    Z = zn_ideals(12)
    zrep = spectrum(Z)
    assert Z.labels[zrep.jacobson_radical] == "(1)"
    assert Z.labels[zrep.jacobson_meet] == "(6)"


def test_maximal_prime_criterion_two_chains():
    unit = mk_chain(2, min)       # 1*1 = 1
    rep = maximal_prime_criterion(unit, 0)
    assert rep.prime and not rep.top_square_below and rep.witness is None

    zero = mk_chain(2, lambda x, y: 0)
    rep = maximal_prime_criterion(zero, 0)
    assert not rep.prime and rep.top_square_below
    assert rep.witness == (zero.top, zero.top)


def test_maximal_prime_criterion_z4():
    L = zn_ideals(4)              # chain (4) < (2) < (1)
    m = L.labels.index("(2)")
    rep = maximal_prime_criterion(L, m)
    assert rep.prime and not rep.top_square_below


def test_maximal_prime_criterion_guards():
    L = mk_chain(3, min)
    with pytest.raises(NotMaximal):
        maximal_prime_criterion(L, 0)
    # a*a = a but a*1 = 0 on the diamond: not monotone, hence not m-distributive
    skewed = validate(size=4, covers=[(0, 1), (0, 2), (1, 3), (2, 3)],
                      mult=[[0] * 4, [0, 1, 0, 0], [0] * 4, [0] * 4], name="skew")
    assert not check_axioms(skewed).m_distributive
    with pytest.raises(MDistributivityRequired):
        maximal_prime_criterion(skewed, 1)


def test_symmetric_witness_direct_and_constructed(assoc_noncomm):
    zero3 = mk_chain(3, lambda x, y: 0)
    x, y = non_prime_symmetric_witness(zero3, 1)
    assert (x, y) == (2, 2)       # 1*1 = 0 <= a with 1 !<= a

    L = assoc_noncomm
    flags = classify_all(L)
    p = next(x for x in L.elements if x != L.top and not flags[x].prime)
    x, y = non_prime_symmetric_witness(L, p)
    assert not L.leq(x, p) and not L.leq(y, p)
    assert L.leq(L.mult(x, y), p) and L.leq(L.mult(y, x), p)


def test_symmetric_witness_rejects_primes():
    L = mk_chain(3, min)
    with pytest.raises(PrimeElement):
        non_prime_symmetric_witness(L, 1)


def test_hyperabelian_chain_zero_mult():
    L = mk_chain(3, lambda x, y: 0)
    rep = hyperabelian_report(L)
    assert rep.hyperabelian and all(rep.conditions.values())
    assert rep.chain == (0, 2)
    # the chain certifies condition (c): each successor squares below its
    # predecessor
    for lo, hi in zip(rep.chain, rep.chain[1:]):
        assert L.lt(lo, hi) and L.leq(L.mult(hi, hi), lo)


def test_hyperabelian_false_cases():
    meets = mk_chain(3, min)
    rep = hyperabelian_report(meets)
    assert not any(rep.conditions.values())
    assert rep.blocking_semiprime == 0

    unit2 = mk_chain(2, min)
    assert not hyperabelian_report(unit2).hyperabelian


def test_hyperabelian_one_element_lattice():
    L = validate(size=1, covers=[], mult=lambda x, y: 0, name="pt")
    rep = hyperabelian_report(L)
    assert rep.hyperabelian and rep.chain == (0,)


def test_hyperabelian_saturated_only_mode():
    L = mk_chain(4, lambda x, y: 0)
    rep = hyperabelian_report(L, max_enum=2)
    assert rep.msystem_mode == "saturated_only"
    assert rep.hyperabelian


def brute_chain_exists(L):
    """Exhaustive oracle for the squaring-chain condition: depth-first search
    over all strictly ascending chains from bottom, independent of the greedy
    construction."""
    def reachable(x):
        if x == L.top:
            return True
        return any(L.lt(x, y) and L.leq(L.mult(y, y), x) and reachable(y)
                   for y in L.elements)
    return reachable(L.bottom)


def test_greedy_chain_agrees_with_exhaustive_search(small_exhaustive_corpus):
    for L in small_exhaustive_corpus:
        if not check_axioms(L).m_distributive:
            continue
        rep = hyperabelian_report(L)
        assert (rep.chain is not None) == brute_chain_exists(L), L.name


def test_condition_f_modes_agree(small_exhaustive_corpus):
    for L in small_exhaustive_corpus:
        if not check_axioms(L).m_distributive:
            continue
        full = hyperabelian_report(L, max_enum=12)
        saturated_only = hyperabelian_report(L, max_enum=0)
        assert full.conditions == saturated_only.conditions, L.name


def brute_sober(T):
    """Independent sobriety oracle using the cover formulation of
    irreducibility: C <= A u B forces C <= A or C <= B."""
    t0, _ = T.is_t0()
    if not t0:
        return False
    closed = list(T.closed_sets)
    for c in closed:
        if not c:
            continue
        irreducible = all(not c <= a | b or c <= a or c <= b
                          for a in closed for b in closed)
        if irreducible:
            generic = [p for p in c if T.point_closure(p) == c]
            if len(generic) != 1:
                return False
    return True


def test_sober_check_against_cover_oracle(small_exhaustive_corpus):
    seen = 0
    for L in small_exhaustive_corpus:
        rep = spectrum(L)
        assert sober_check(rep.zariski).sober == brute_sober(rep.zariski)
        seen += 1
    assert seen
    indiscrete = FiniteTopology.from_closed_sets({1, 2}, [frozenset(), frozenset({1, 2})])
    assert sober_check(indiscrete).sober == brute_sober(indiscrete) == False


def test_sober_check_examples():
    empty = FiniteTopology.from_closed_sets(frozenset(), [frozenset()])
    assert sober_check(empty).sober

    sierpinski = FiniteTopology.from_closed_sets(
        {0, 1}, [frozenset(), frozenset({1}), frozenset({0, 1})])
    assert sober_check(sierpinski).sober

    indiscrete = FiniteTopology.from_closed_sets({1, 2}, [frozenset(), frozenset({1, 2})])
    rep = sober_check(indiscrete)
    assert not rep.sober and rep.witness == frozenset({1, 2})


def test_every_corpus_spectrum_is_sober(named_corpus, small_exhaustive_corpus):
    for L in named_corpus + small_exhaustive_corpus:
        assert spectrum(L).sober, L.name


def test_topology_axioms_rejected_when_violated():
    with pytest.raises(ValueError):
        FiniteTopology.from_closed_sets({0, 1}, [frozenset({0, 1})])  # no empty set
    with pytest.raises(ValueError):
        FiniteTopology.from_closed_sets(
            {0, 1, 2},
            [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1, 2})])
