"""Cross-cutting invariants on the random corpus, beyond the acceptance gate."""

from acmschemes import resolve
from acmschemes.gb import buchberger, kernel_of_free_map
from acmschemes.modops import saturate


def test_buchberger_deterministic_on_corpus(random_corpus):
    ring, entries = random_corpus
    for entry in entries[:40]:
        again = buchberger(entry["ideal"].as_elems(), ambient=entry["gb"].ambient)
        assert again.elements == entry["gb"].elements


def test_minimalize_idempotent_on_corpus(random_corpus):
    ring, entries = random_corpus
    for entry in entries[:40]:
        m1 = resolve.minimalize(entry["res"])
        m2 = resolve.minimalize(m1)
        assert resolve.betti(m1) == resolve.betti(m2)


def test_kernel_of_free_map_exactness_random(random_corpus):
    ring, entries = random_corpus
    for entry in entries[:40]:
        cols = entry["ideal"].as_elems()
        amb = cols[0].module
        twists = tuple(f.degree for f in entry["ideal"].gens)
        for s in kernel_of_free_map(cols, amb, source_twists=twists):
            acc = amb.zero_elem()
            for poly, col in zip(s.components, cols):
                if not poly.is_zero():
                    acc = acc + col.poly_mul(poly)
            assert acc.is_zero()


def test_saturation_is_extensive(random_corpus):
    ring, entries = random_corpus
    for entry in entries[:40]:
        sat = saturate(entry["ideal"])
        assert sat.contains(entry["ideal"])


def test_betti_totals_match_module_ranks(random_corpus):
    ring, entries = random_corpus
    for entry in entries[:40]:
        minimal = resolve.minimalize(entry["res"])
        bt = resolve.betti(minimal)
        for i, module in enumerate(minimal.modules):
            assert bt.total_rank(i) == module.rank
