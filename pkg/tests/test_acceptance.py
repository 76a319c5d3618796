"""Acceptance criteria 1-11.  Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``."""
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import LINES, criterion  # noqa: E402
from minext.bimodule import annihilators, brute_force_rhoms, enumerate_rhoms, is_minimal_rrng  # noqa: E402
from minext.catalog import make  # noqa: E402
from minext.classify import (  # noqa: E402
    as_embedding,
    classify_minimal_extension,
    order4_census,
    relabel_extension,
    witnesses_agree,
)
from minext.corpus import MINIMAL_RRNGS, NON_MINIMAL_RRNGS, PRIME_BASE_EXTENSIONS  # noqa: E402
from minext.extensions import described_ideals, ideal_extension, is_central_extension  # noqa: E402
from minext.substructure import centralizer, enumerate_ideals, is_maximal_subring, is_prime  # noqa: E402
from minext.suites import partial_reduction_map, run_suite  # noqa: E402
from oracles import literal_hom_scan  # noqa: E402

LITERAL_SCAN_LIMIT = 200_000


def suite_ok(suite_id, **kw):
    rep = run_suite(suite_id, **kw)
    assert rep.ok, "\n".join(rep.lines())
    return rep


def test_criterion_01_order4_census():
    with criterion(1, "order-4 census: F4, F2xF2, F2[x]/(x^2), all minimal", limit=5):
        classes = order4_census()
        assert sorted(c.label for c in classes) == ["F2[x]/(x^2)", "F2xF2", "F4"]
        assert all(c.minimal_over_prime_field for c in classes)


def test_criterion_02_subring_lattice():
    with criterion(2, "subrings over R of E(R,I) match R-subrngs of I", limit=30):
        rep = suite_ok("produce")
        assert rep.instances >= 10
        assert "as_rrng(prime_subfield(4))" in NON_MINIMAL_RRNGS


def test_criterion_03_ideal_description():
    with criterion(3, "ideals of E(R,I) are the three described families", limit=60):
        rep = suite_ok("idealdescription")
        assert rep.instances >= 3
        X = make("ideal_extension(regular_rrng(gf(2)))")
        fams = described_ideals(X)
        assert sum(len(v) for v in fams.values()) == len(enumerate_ideals(X.E)) == 4
        big = make("ideal_extension(regular_rrng(mat(2,2)))")
        assert big.E.n == 256
        got = described_ideals(big)
        assert set().union(*map(set, got.values())) == set(enumerate_ideals(big.E))


def test_criterion_04_semiprime_and_prime_biconditionals():
    with criterion(4, "semiprime/prime biconditionals on the minimal corpus"):
        a = suite_ok("semiprimeoversemiprime")
        b = suite_ok("primeidealext")
        assert a.instances >= 15 and b.instances >= 15


def test_criterion_05_central_characterizations():
    with criterion(5, "six central conditions agree; bimodule criterion; non-central witnesses"):
        suite_ok("maincentral")
        suite_ok("centralchar")
        assert not is_central_extension(make("ideal_extension(twisted_field(4,1))").R_embed)
        assert not is_central_extension(make("regular_embed(4)"))
        for spec in MINIMAL_RRNGS:
            M = make(spec)
            if M.R.name == "F2":
                assert is_central_extension(ideal_extension(M).R_embed), spec


def test_criterion_06_tag_exclusivity():
    with criterion(6, "one tag each, side conditions, relabel stability, PI and SR empty"):
        rep = suite_ok("primeext")
        suite_ok("simplechar")
        t2 = suite_ok("no-finite-T2")
        assert "PI and SR empty: True" in [line[5:] for line in rep.lines() if line.startswith("NOTE")]
        assert any(n == "PI and SR empty: True" for n in t2.notes)
        tags = {}
        for spec in PRIME_BASE_EXTENSIONS:
            emb = as_embedding(make(spec))
            t = classify_minimal_extension(emb)
            tags.setdefault(t.tag, []).append(spec)
            copy, _ = relabel_extension(emb, seed=12345)
            assert witnesses_agree(t, classify_minimal_extension(copy)), spec
        assert tags.get("P") and tags.get("SI") and tags.get("N")
        assert "PI" not in tags and "SR" not in tags


def test_criterion_07_annihilators_prime():
    with criterion(7, "annihilators of minimal R-rngs are prime; coincide when I^2 != 0"):
        suite_ok("minimalann")
        A = annihilators(make("ideal_as_rrng(zmod(4),2)"))
        assert A.right.sorted() == A.left.sorted() == [0, 2]


def test_criterion_08_bergman_levels():
    with criterion(8, "Bergman identities at n = 1, 2 over F2", limit=10):
        rep = suite_ok("bergman-levels")
        assert rep.instances == 2
        E = np.zeros((4, 4), dtype=np.int64)
        E[0, 0] = E[2, 2] = 1
        assert np.array_equal(make("bergman_level(1,2)").E, E)


def test_criterion_09_finite_index_witness():
    with criterion(9, "F4 in M2(F2) is maximal, M2(F2) prime, noncommutative, not division"):
        suite_ok("finiteindex-witness")
        emb = make("regular_embed(4)")
        assert is_maximal_subring(emb) and is_prime(emb.big) and not emb.big.is_commutative()
        assert centralizer(emb.big, emb.image) == emb.image


def _hom_pairs():
    specs = [s for s in MINIMAL_RRNGS + NON_MINIMAL_RRNGS if make(s).n <= 16]
    return [(a, b) for a in specs for b in specs if make(a).R is make(b).R]


def test_criterion_10_hom_engine_oracle():
    with criterion(10, "Hom engine equals brute force on all pairs with |I|, |J| <= 16"):
        pairs = _hom_pairs()
        literal = 0
        for a, b in pairs:
            A, B = make(a), make(b)
            for mult in (True, False):
                engine = sorted(tuple(h.table.tolist()) for h in enumerate_rhoms(A, B, mult))
                assert engine == sorted(brute_force_rhoms(A, B, mult)), (a, b, mult)
                if B.n ** A.n <= LITERAL_SCAN_LIMIT:
                    assert engine == sorted(literal_hom_scan(A, B, mult)), (a, b, mult)
                    literal += 1
        assert len(pairs) >= 30 and literal > 0


def test_criterion_11_partial_reduction():
    with criterion(11, "S/Nil(S) = R/Nil(R) and radical contraction"):
        rep = suite_ok("partialreduction")
        assert rep.instances > 1
        emb = make("ideal_extension(zero_bimodule(gf(2),0))").R_embed
        table, Q, NS, NR = partial_reduction_map(emb)
        assert len(NS) == 2 and NR.is_zero() and Q.n == 2
        assert sorted(set(table.tolist())) == [0, 1]


def test_minimal_corpus_is_minimal():
    assert all(is_minimal_rrng(make(s)) for s in MINIMAL_RRNGS)


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print()
    for n in sorted(LINES):
        print(LINES[n])
    sys.exit(code)
