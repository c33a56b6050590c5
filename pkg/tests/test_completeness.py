import random

import pytest

from pgabr import gen
from pgabr.completeness.certificates import InputBlindBranching, Unwritable, incompleteness_certificate, transform_monoid
from pgabr.completeness.fixtures import (
    ITEMS,
    FixtureInvalid,
    FixtureItem,
    MissingMapping,
    TranslationMap,
    fixture_map,
    fixture_maps,
    verify_fixtures,
)
from pgabr.completeness.rewrite import TRANSLATION_COUNTEREXAMPLE, replaced_count, translate_sequence
from pgabr.completeness.search import alphabet, find_witness, search_witnesses
from pgabr.completeness.solver import Bound, CertifiedIncomplete, UnknownBeyond, strict_bound, strictness_audit
from pgabr.completeness.sweep import condition, subset_claims_check, subsets, sweep_json, sweep_subsets
from pgabr.completeness.targets import realizes, realizes_axiomatic, target_by_code, targets
from pgabr.equivalence import equivalence_classes, feqv
from pgabr.isa import CANONICAL_BASE, MethodSet, UnaryFn, parse_sequence

M = MethodSet.from_codes


@pytest.fixture(scope="module")
def sweep6():
    return sweep_subsets(CANONICAL_BASE, 6, jobs=1)


def test_targets_bijective_with_classes():
    ts = targets()
    assert len(ts) == 16 and len({t.summary for t in ts}) == 16
    assert [t.summary for t in ts] == [c.summary for c in equivalence_classes()]
    assert target_by_code("-f.cf") == target_by_code("+f.if")
    assert target_by_code("+f.tf") == target_by_code("f.ff")


@pytest.mark.parametrize(
    "seq,key,want",
    [("#2", "-f.ti", True), ("f.cc ; #2", "-f.tc", True), ("!", "f.ii", False), ("#1", "f.ii", True), ("#0", "f.ii", False)],
)
def test_realizes_examples(seq, key, want):
    x, t = parse_sequence(seq), target_by_code(key)
    assert realizes(x, t) is want
    assert realizes_axiomatic(x, t) is want


def test_realizes_never_matches_halt():
    for t in targets():
        assert not realizes(parse_sequence("!"), t)


def test_find_witness_examples():
    w = find_witness(M("cc"), target_by_code("f.ff"), 3)
    assert len(w) == 2 and realizes_axiomatic(w, target_by_code("f.ff"))
    assert realizes(parse_sequence("+f.cc ; f.cc"), target_by_code("f.ff"))
    assert find_witness(M("cc"), target_by_code("f.ff"), 1) is None
    for t in targets():
        assert len(find_witness(CANONICAL_BASE, t, 1)) == 1
    assert find_witness(M("ff"), target_by_code("f.tt"), 6) is None


def test_alphabet_shape():
    a = alphabet(M("cc"), 3)
    assert [str(u) for u in a] == ["#0", "#1", "#2", "#3", "#4", "!", "f.cc", "+f.cc", "-f.cc"]


def test_transform_monoid():
    assert transform_monoid(M("ff")) == {UnaryFn.I, UnaryFn.F}
    assert transform_monoid(M("cc")) == {UnaryFn.I, UnaryFn.C}
    # constants only compose to constants
    assert transform_monoid(M("if,ct")) == {UnaryFn.I, UnaryFn.F, UnaryFn.T}
    assert transform_monoid(M("ff,tc")) == set(UnaryFn)


def test_certificate_examples():
    assert incompleteness_certificate(M("ff"), target_by_code("f.tt")) == Unwritable(0, 1)
    assert incompleteness_certificate(M("tc"), target_by_code("+f.ii")) == InputBlindBranching()
    for t in targets():
        assert incompleteness_certificate(M("cc"), t) is None


def test_strict_bound_examples():
    assert strict_bound(M("ff,tt,ii,cc,if,it"), 6) == Bound(2, {})
    assert strict_bound(M("ff,tt,ii"), 6) == Bound(4, {})
    assert strict_bound(M("cc"), 6) == Bound(3, {})
    v = strict_bound(M("ff"), 6)
    assert isinstance(v, CertifiedIncomplete) and isinstance(v.cert, Unwritable)


def test_unknown_beyond_when_kmax_too_small():
    v = strict_bound(M("ff,tt,ii"), 3)
    assert isinstance(v, UnknownBeyond) and v.kmax == 3
    assert 0 < len(v.resolved) < 16
    assert v.to_json()["kind"] == "unknown"


def test_short_witnesses_for_four_method_set():
    # length-2 witnesses over {ff,tt,ii,cc}, checked through the axiomatic route
    for key, seq in [("-f.if", "+f.ii ; +f.ff"), ("+f.if", "+f.cc ; +f.ff"), ("+f.it", "-f.ii ; -f.tt"), ("-f.it", "-f.cc ; -f.tt")]:
        assert realizes_axiomatic(parse_sequence(seq), target_by_code(key)), key


def test_short_witness_for_if_it():
    assert realizes_axiomatic(parse_sequence("+f.if ; #3 ; +f.it"), target_by_code("-f.tc"))


def test_certificate_soundness(sweep6):
    # a certified target has no witness within kmax, for every subset and target
    for m, _ in sweep6:
        certified = [t for t in targets() if incompleteness_certificate(m, t) is not None]
        if certified:
            assert search_witnesses(m, 6, certified) == {}, m


def test_bounds_are_strict_and_witnesses_valid(sweep6):
    for m, v in sweep6:
        if isinstance(v, Bound):
            assert strictness_audit(m, v)
            for t, w in v.witnesses.items():
                assert len(w) <= v.k
                assert realizes_axiomatic(w, t), (m, t, w)


def test_no_unknown_in_sweep(sweep6):
    assert [m for m, v in sweep6 if isinstance(v, UnknownBeyond)] == []


def test_label_cap_extension_changes_nothing():
    for m in subsets(CANONICAL_BASE):
        a = strict_bound(m, 4)
        b = strict_bound(m, 4, label_slack=3)
        assert a.to_json() == b.to_json(), m


def test_engines_agree_on_small_sets():
    rng = random.Random(gen.DEFAULT_SEED + 7)
    sets = [M("cc"), M("if,it"), M("ff,tt,ii"), M("tc"), *(gen.method_set(rng) for _ in range(5))]
    for m in sets:
        assert search_witnesses(m, 3, engine="dp") == search_witnesses(m, 3, engine="naive"), m


def test_sweep_order_and_examples(sweep6):
    masks = [m.mask for m, _ in sweep6]
    assert len(masks) == 255 and masks == sorted(masks)
    by = {m: v for m, v in sweep6}
    assert by[CANONICAL_BASE].kind == "bound" and by[CANONICAL_BASE].k == 1
    assert by[M("cc")].k == 3
    assert isinstance(by[M("ff")], CertifiedIncomplete)


def test_sweep_parallel_matches_serial(sweep6):
    par = sweep_subsets(CANONICAL_BASE, 6, jobs=2)
    assert sweep_json(par) == sweep_json(sweep6)


def test_subset_conditions():
    assert condition(M("if,it")) == 1
    assert condition(M("cc,ii")) == 2
    assert condition(M("ff,tt")) is None
    assert condition(M("ff,tt,ii,cc,if,it")) is None


def test_subset_claims_count():
    r = subset_claims_check(5)
    assert r.covered == 42
    assert sum(1 for _, c, _ in r.rows if c == 2) == 31


def test_fixture_examples():
    assert realizes(ITEMS["c1"].seq, target_by_code("+f.if"))
    assert str(ITEMS["c1"].seq) == "+f.ii ; +f.ff ; +f.ff"
    assert str(ITEMS["ab4"].seq) == "+f.it ; -f.if ; #1 ; #2" and realizes(ITEMS["ab4"].seq, target_by_code("-f.tc"))
    assert str(ITEMS["o"].seq) == "f.cc ; f.cc" and realizes(ITEMS["o"].seq, target_by_code("f.ii"))


def test_all_fixtures_pass():
    checks = verify_fixtures()
    assert len(checks) == len(ITEMS) == 61
    assert [c.id for c in checks if not c.ok] == []


def test_part3_alternatives_use_outside_methods():
    bad = {c.id for c in verify_fixtures() if not c.methods_ok}
    assert bad == {"c3", "d3", "e3", "f3"}


def test_corrupt_fixture_is_reported():
    items = dict(ITEMS)
    items["b"] = FixtureItem("b", "-f.tc", "f.cc ; #1", 2)
    checks = {c.id: c for c in verify_fixtures(items)}
    assert not checks["b"].ok and checks["b"].name == "thm3-fixture-b"
    with pytest.raises(FixtureInvalid, match="thm3-fixture-b"):
        verify_fixtures(items, strict=True)


def test_fixture_maps_shape():
    maps = fixture_maps()
    assert {p: len(v) for p, v in maps.items()} == {1: 1, 2: 4, 3: 2, 4: 1, 5: 4}
    for ms in maps.values():
        for tm in ms:
            assert len(tm.entries) == 48
            for u, img in tm.entries.items():
                assert realizes(img, target_by_code(str(u)))
    assert fixture_map("part2:3").name == "part2:3"
    with pytest.raises(KeyError):
        fixture_map("part9")


def test_translate_example():
    tm = fixture_map("part1")
    x = parse_sequence("#2 ; -f.tc ; !")
    y = translate_sequence(x, tm)
    assert str(y) == "#3 ; f.cc ; #2 ; !"
    assert feqv(y, x, ["f"])


def test_translate_identity_inside_set():
    tm = fixture_map("part2")
    x = parse_sequence("+f.ii ; #2 ; f.cc ; -g.tt ; ! ; #0")
    assert translate_sequence(x, tm) == x
    assert replaced_count(x, tm) == 0


def test_translate_missing_entry():
    tm = TranslationMap("partial", M("cc"), {})
    with pytest.raises(MissingMapping):
        translate_sequence(parse_sequence("f.cc ; !"), tm)


def test_translation_map_json_roundtrip():
    tm = fixture_map("part4")
    back = TranslationMap.from_json(tm.to_json())
    assert back.entries == tm.entries and back.methods == tm.methods


def test_translate_length_bound_random():
    tm = fixture_map("part2")
    rng = random.Random(gen.DEFAULT_SEED)
    for _ in range(300):
        x = gen.sequence(rng, 12, ("f", "g"))
        assert len(translate_sequence(x, tm)) <= len(x) + 2 * replaced_count(x, tm)


def test_translation_counterexample():
    # skips landing inside an expanded image change the function
    x = parse_sequence(TRANSLATION_COUNTEREXAMPLE)
    for tm in fixture_maps()[2]:
        assert not feqv(translate_sequence(x, tm), x, ["f"]), tm.name
