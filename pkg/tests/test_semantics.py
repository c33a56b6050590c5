import random

import pytest

from pgabr import gen, laws
from pgabr.isa import Method, MethodSet, parse_sequence
from pgabr.semantics import (
    DEAD_END,
    EMPTY_FAMILY,
    EMPTY_SERVICE,
    STOP,
    Post,
    Register,
    Reply,
    ServiceFamily,
    Termination,
    apply,
    encapsulate,
    family_compose,
    run_axiomatic,
    run_positional,
    service_step,
    thread_depth,
    thread_extract,
    use,
)

FULL = MethodSet.full()
II, CC, TT, FF = (Method.from_code(c) for c in ("ii", "cc", "tt", "ff"))


def reg(b, methods=FULL):
    return Register(b, methods)


def fam(**kw):
    return ServiceFamily(kw)


def test_service_step_examples():
    assert service_step(reg(1), CC) == (Reply.FALSE, reg(0))
    assert service_step(reg(0, MethodSet([II])), TT) == (Reply.DIV, EMPTY_SERVICE)
    assert service_step(EMPTY_SERVICE, FF) == (Reply.DIV, EMPTY_SERVICE)


@pytest.mark.parametrize(
    "text,want",
    [
        ("!", STOP),
        ("#0 ; !", DEAD_END),
        ("+f.ii ; ! ; !", Post("f", II, STOP, STOP)),
        ("#1", DEAD_END),
        ("#2 ; f.ii ; !", STOP),
        ("#3 ; ! ; !", DEAD_END),
        ("f.cc", Post("f", CC, DEAD_END, DEAD_END)),
        ("-f.ii ; ! ; #0", Post("f", II, DEAD_END, STOP)),
        ("+f.ii", Post("f", II, DEAD_END, DEAD_END)),
    ],
)
def test_thread_extract(text, want):
    assert thread_extract(parse_sequence(text)) == want


def test_thread_depth_bounded_by_length():
    rng = random.Random(gen.DEFAULT_SEED)
    for _ in range(300):
        x = gen.sequence(rng, 10, ("f", "g"))
        assert thread_depth(thread_extract(x)) <= len(x)


def test_extraction_shares_subtrees():
    # 40 consecutive tests would give 2**40 leaves without sharing
    x = parse_sequence(" ; ".join(["+f.ii"] * 40 + ["!"]))
    t = thread_extract(x)
    assert thread_depth(t) == 40
    node = t
    while isinstance(node, Post):
        node = node.then
    assert node is STOP


def test_compose_examples():
    assert family_compose(fam(f=reg(1)), EMPTY_FAMILY) == fam(f=reg(1))
    assert family_compose(fam(f=reg(1)), fam(f=reg(0))) == fam(f=EMPTY_SERVICE)
    a, b = fam(f=reg(1)), fam(g=reg(0))
    assert family_compose(a, b) == family_compose(b, a) == fam(f=reg(1), g=reg(0))


def test_encapsulate_examples():
    u = fam(f=reg(1), g=reg(0))
    assert encapsulate({"f"}, u) == fam(g=reg(0))
    assert encapsulate(set(), u) == u
    assert encapsulate({"f", "g"}, u) == EMPTY_FAMILY


def test_use_examples():
    any_u = fam(f=reg(0))
    assert use(STOP, any_u) is STOP
    assert use(Post("f", II, STOP, DEAD_END), fam(f=reg(1))) is STOP
    t = Post("g", II, STOP, Post("f", CC, STOP, DEAD_END))
    # g is absent: the action stays, both branches are used on the family
    assert use(t, fam(f=reg(1))) == Post("g", II, STOP, DEAD_END)


def test_apply_examples():
    u = fam(f=reg(1))
    assert apply(STOP, u) == u
    assert apply(DEAD_END, u) == EMPTY_FAMILY
    assert apply(Post("f", CC, STOP, STOP), fam(f=reg(0))) == fam(f=reg(1))
    assert apply(Post("g", CC, STOP, STOP), u) == EMPTY_FAMILY


def test_run_positional_examples():
    u = fam(f=reg(0))
    assert run_positional(parse_sequence("!"), u) == (Termination.TERMINATED, u)
    assert run_positional(parse_sequence("#0 ; !"), u) == (Termination.DEADLOCKED, EMPTY_FAMILY)
    assert run_positional(parse_sequence("f.cc ; #1 ; !"), u) == (Termination.TERMINATED, fam(f=reg(1)))
    # running off the end is inaction
    assert run_positional(parse_sequence("f.cc"), u) == (Termination.DEADLOCKED, EMPTY_FAMILY)
    # a method the register does not offer diverges
    assert run_positional(parse_sequence("f.cc ; !"), fam(f=reg(0, MethodSet([II]))))[0] is Termination.DEADLOCKED
    assert run_positional(parse_sequence("g.cc ; !"), u)[0] is Termination.UNRESOLVED


@pytest.mark.parametrize("name", list(laws.LAWS))
def test_law(name):
    assert laws.check_law(name, gen.DEFAULT_SEED, 200) == []


def test_positional_matches_axiomatic_random():
    rng = random.Random(gen.DEFAULT_SEED)
    for _ in range(1000):
        x = gen.sequence(rng, 10, ("f", "g"))
        u = gen.family(rng, ("f", "g"))
        kind, out = run_positional(x, u)
        thr, fam_out = run_axiomatic(x, u)
        if kind is Termination.TERMINATED:
            assert thr is STOP and fam_out == out
        elif kind is Termination.DEADLOCKED:
            assert thr is DEAD_END and fam_out == EMPTY_FAMILY
        else:
            # an action on a missing focus survives abstracting use
            assert isinstance(thr, Post) and fam_out == EMPTY_FAMILY


def test_positional_matches_axiomatic_exhaustive_short():
    checked, bad = laws.cross_check(max_len=4)
    assert checked == 2 * sum(17 ** n for n in range(1, 5))
    assert bad == []


def test_equality_of_large_shared_threads():
    text = " ; ".join(["+f.ii"] * 60 + ["!"])
    a, b = thread_extract(parse_sequence(text)), thread_extract(parse_sequence(text))
    assert a is not b and a == b
    assert a != thread_extract(parse_sequence(text.replace("!", "#0")))
